"""SMILES/SDF parsing, ring and aromaticity perception, canonicalisation."""

from .canon import canonical_ranks, canonical_smiles, symmetry_classes
from .charges import gasteiger_charges
from .errors import (
    AtomBlockShort,
    BatchLimitExceeded,
    ChemError,
    DisconnectedInput,
    EmptyInput,
    MalformedCountsLine,
    ParseError,
    SdfError,
    UnbalancedParenthesis,
    UnclosedRing,
    UnknownElement,
    ValenceViolation,
)
from .mol import Atom, Bond, BondOrder, BondStereo, Chirality, Hybridization, Molecule
from .rings import perceive_rings
from .sdf import BATCH_LIMIT, parse_sdf
from .smiles import parse_smiles
from .topology import topological_distances

__all__ = [
    "Atom",
    "AtomBlockShort",
    "BATCH_LIMIT",
    "BatchLimitExceeded",
    "Bond",
    "BondOrder",
    "BondStereo",
    "ChemError",
    "Chirality",
    "DisconnectedInput",
    "EmptyInput",
    "Hybridization",
    "MalformedCountsLine",
    "Molecule",
    "ParseError",
    "SdfError",
    "UnbalancedParenthesis",
    "UnclosedRing",
    "UnknownElement",
    "ValenceViolation",
    "canonical_ranks",
    "canonical_smiles",
    "gasteiger_charges",
    "parse_sdf",
    "parse_smiles",
    "perceive_rings",
    "symmetry_classes",
    "topological_distances",
]
