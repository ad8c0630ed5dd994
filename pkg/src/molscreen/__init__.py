"""molscreen: graph attention models for small-molecule anti-cancer screening.

The package is organised as a pipeline of mostly-pure layers:

- ``chem``      SMILES/SDF parsing into validated molecular graphs
- ``features``  atom/bond/global numeric representations and fingerprints
- ``dataset``   activity labelling and leakage-safe train/val/test splitting
- ``autodiff``  a small reverse-mode autodiff engine (numpy-backed)
- ``model``     the edge-aware graph attention network, training, metrics
- ``explain``   occlusion and integrated-gradients atom attributions
- ``service``   CLI, JSON job API, and the persistent job store
"""

__version__ = "0.1.0"
