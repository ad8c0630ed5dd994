"""Fixed-layout atom and bond feature vectors.

The layout is versioned; checkpoints record the version plus the resulting
dimensions, and inference refuses to run against a different layout.
"""

from __future__ import annotations

import numpy as np

from ..chem import elements
from ..chem.mol import BondOrder, BondStereo, Chirality, Hybridization, Molecule

LAYOUT_VERSION = "molscreen-features/1"

_N_ELEMENTS = 100  # one-hot for atomic numbers 1..100, then "other"
_DEGREES = 7       # 0..6, clamped
_CHARGES = [-2, -1, 0, 1, 2]  # plus "other"
_H_COUNTS = 5      # 0..4, plus "other"
_CHIRALITY = [Chirality.NONE, Chirality.CCW, Chirality.CW]
_HYBRID = [Hybridization.SP, Hybridization.SP2, Hybridization.SP3, Hybridization.OTHER]
_ORDERS = [BondOrder.SINGLE, BondOrder.DOUBLE, BondOrder.TRIPLE, BondOrder.AROMATIC]
_STEREO = [BondStereo.NONE, BondStereo.CIS, BondStereo.TRANS]

ATOM_DIM = (_N_ELEMENTS + 1) + _DEGREES + (len(_CHARGES) + 1) + len(_CHIRALITY) \
    + (_H_COUNTS + 1) + len(_HYBRID) + 4 + 1
BOND_DIM = len(_ORDERS) + 2 + len(_STEREO)


def atom_feature_vector(mol: Molecule, atom_index: int) -> np.ndarray:
    """Feature vector of one atom; raises IndexError for a bad index."""
    if not 0 <= atom_index < mol.n_atoms:
        raise IndexError(f"atom index {atom_index} out of range")
    atom = mol.atoms[atom_index]
    v = np.zeros(ATOM_DIM, dtype=np.float64)
    pos = 0

    z = elements.ATOMIC_NUMBER.get(atom.element, 0)
    v[pos + (z - 1 if 1 <= z <= _N_ELEMENTS else _N_ELEMENTS)] = 1.0
    pos += _N_ELEMENTS + 1

    v[pos + min(atom.degree, _DEGREES - 1)] = 1.0
    pos += _DEGREES

    q = atom.formal_charge
    v[pos + (_CHARGES.index(q) if q in _CHARGES else len(_CHARGES))] = 1.0
    pos += len(_CHARGES) + 1

    v[pos + _CHIRALITY.index(atom.chirality)] = 1.0
    pos += len(_CHIRALITY)

    h = atom.total_h
    v[pos + (h if h < _H_COUNTS else _H_COUNTS)] = 1.0
    pos += _H_COUNTS + 1

    v[pos + _HYBRID.index(atom.hybridization)] = 1.0
    pos += len(_HYBRID)

    v[pos] = float(atom.is_aromatic)
    v[pos + 1] = float(atom.in_ring)
    v[pos + 2] = float(atom.hbd)
    v[pos + 3] = float(atom.hba)
    pos += 4

    v[pos] = atom.partial_charge
    return v


def bond_feature_vector(mol: Molecule, bond) -> np.ndarray:
    v = np.zeros(BOND_DIM, dtype=np.float64)
    v[_ORDERS.index(bond.order)] = 1.0
    v[len(_ORDERS)] = float(is_conjugated(mol, bond))
    v[len(_ORDERS) + 1] = float(bond.same_ring)
    v[len(_ORDERS) + 2 + _STEREO.index(bond.stereo)] = 1.0
    return v


def is_conjugated(mol: Molecule, bond) -> bool:
    """Aromatic, or flanked by a double/aromatic bond at both ends."""
    if bond.order is BondOrder.AROMATIC:
        return True

    def has_multiple(idx: int) -> bool:
        for nbr, other in mol.neighbors(idx):
            if other is bond:
                continue
            if other.order in (BondOrder.DOUBLE, BondOrder.AROMATIC):
                return True
        return False

    return has_multiple(bond.a) and has_multiple(bond.b)


def atom_feature_names() -> list[str]:
    names = [f"element_{i}" for i in range(1, _N_ELEMENTS + 1)] + ["element_other"]
    names += [f"degree_{i}" for i in range(_DEGREES)]
    names += [f"charge_{q:+d}" for q in _CHARGES] + ["charge_other"]
    names += [f"chirality_{c.value}" for c in _CHIRALITY]
    names += [f"h_count_{i}" for i in range(_H_COUNTS)] + ["h_count_other"]
    names += [f"hybrid_{h.value}" for h in _HYBRID]
    names += ["aromatic", "in_ring", "hbd", "hba", "partial_charge"]
    assert len(names) == ATOM_DIM
    return names


def bond_feature_names() -> list[str]:
    names = [f"order_{o.name.lower()}" for o in _ORDERS]
    names += ["conjugated", "same_ring"]
    names += [f"stereo_{s.value}" for s in _STEREO]
    assert len(names) == BOND_DIM
    return names
