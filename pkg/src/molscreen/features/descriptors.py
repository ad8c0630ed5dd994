"""Whole-molecule physicochemical descriptors (fixed 12-column subset)."""

from __future__ import annotations

import numpy as np

from ..chem import elements
from ..chem.mol import BondOrder, Hybridization, Molecule

DESCRIPTOR_NAMES = [
    "mol_weight",
    "heavy_atoms",
    "rings",
    "aromatic_rings",
    "hbd",
    "hba",
    "rotatable_bonds",
    "formal_charge",
    "frac_sp3_carbon",
    "halogens",
    "heteroatoms",
    "mean_abs_partial_charge",
]


def physchem_descriptors(mol: Molecule) -> np.ndarray:
    heavy = mol.heavy_indices()
    atoms = [mol.atoms[i] for i in heavy]

    weight = sum(
        elements.ATOMIC_MASS.get(a.element, 0.0) + a.total_h * elements.ATOMIC_MASS["H"]
        for a in mol.atoms
    )
    aromatic_rings = sum(
        1 for ring in mol.rings if all(mol.atoms[i].is_aromatic for i in ring)
    )
    rot = 0
    for bond in mol.bonds:
        if bond.order is not BondOrder.SINGLE or bond.same_ring:
            continue
        if mol.atoms[bond.a].element == "H" or mol.atoms[bond.b].element == "H":
            continue
        if mol.atoms[bond.a].degree >= 2 and mol.atoms[bond.b].degree >= 2:
            rot += 1
    carbons = [a for a in atoms if a.element == "C"]
    sp3 = sum(1 for a in carbons if a.hybridization is Hybridization.SP3)

    return np.array(
        [
            weight,
            float(len(heavy)),
            float(len(mol.rings)),
            float(aromatic_rings),
            float(sum(1 for a in atoms if a.hbd)),
            float(sum(1 for a in atoms if a.hba)),
            float(rot),
            float(sum(a.formal_charge for a in mol.atoms)),
            sp3 / len(carbons) if carbons else 0.0,
            float(sum(1 for a in atoms if a.element in elements.HALOGENS)),
            float(sum(1 for a in atoms if a.element != "C")),
            float(np.mean([abs(a.partial_charge) for a in atoms])) if atoms else 0.0,
        ],
        dtype=np.float64,
    )
