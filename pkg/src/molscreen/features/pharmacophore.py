"""Pharmacophore point typing and topological pair counts (210-vector)."""

from __future__ import annotations

import numpy as np

from ..chem.mol import Molecule
from ..chem.topology import topological_distances

TYPES = ("donor", "acceptor", "positive", "negative", "aromatic", "lipophilic")
N_TYPES = len(TYPES)
N_PAIRS = N_TYPES * (N_TYPES + 1) // 2  # 21 unordered type pairs
N_BINS = 10                             # bond distances 1..10+, clamped
VECTOR_LENGTH = N_PAIRS * N_BINS        # 210

_PAIR_INDEX = {}
for _u in range(N_TYPES):
    for _v in range(_u, N_TYPES):
        _PAIR_INDEX[(_u, _v)] = len(_PAIR_INDEX)


def atom_pharmacophore_types(mol: Molecule, idx: int) -> list[int]:
    """Type indices carried by one atom; an atom may carry several."""
    atom = mol.atoms[idx]
    types = []
    if atom.hbd:
        types.append(0)
    if atom.hba:
        types.append(1)
    if atom.element == "N" and atom.formal_charge > 0:
        types.append(2)
    if atom.element == "O" and atom.formal_charge < 0:
        types.append(3)
    if atom.is_aromatic:
        types.append(4)
    if _is_lipophilic(mol, idx):
        types.append(5)
    return types


def _is_lipophilic(mol: Molecule, idx: int) -> bool:
    atom = mol.atoms[idx]
    if atom.element in ("Cl", "Br", "I"):
        return True
    if atom.element != "C" or atom.formal_charge != 0:
        return False
    return not any(mol.atoms[nbr].element in ("N", "O") for nbr, _ in mol.neighbors(idx))


def pharmacophore_pairs(mol: Molecule) -> np.ndarray:
    """Counts of typed atom pairs per topological distance bin (length 210)."""
    counts = np.zeros(VECTOR_LENGTH, dtype=np.float64)
    heavy = mol.heavy_indices()
    if len(heavy) < 2:
        return counts
    dist = topological_distances(mol)
    types = [atom_pharmacophore_types(mol, a) for a in heavy]
    for i in range(len(heavy)):
        for j in range(i + 1, len(heavy)):
            d = int(dist[i, j])
            if d < 1:
                continue
            b = min(d, N_BINS) - 1
            for ti in types[i]:
                for tj in types[j]:
                    u, v = (ti, tj) if ti <= tj else (tj, ti)
                    counts[_PAIR_INDEX[(u, v)] * N_BINS + b] += 1.0
    return counts


def pharmacophore_names() -> list[str]:
    names = []
    for u in range(N_TYPES):
        for v in range(u, N_TYPES):
            for b in range(1, N_BINS + 1):
                names.append(f"pp_{TYPES[u]}_{TYPES[v]}_d{b}")
    return names
