"""Circular substructure fingerprints and Tanimoto/Jaccard arithmetic."""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass, field

import numpy as np

from ..chem import elements
from ..chem.mol import Molecule


class WidthMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Fingerprint:
    bits: frozenset[int]
    n_bits: int = 2048
    radius: int = 2

    @property
    def popcount(self) -> int:
        return len(self.bits)

    def to_array(self) -> np.ndarray:
        arr = np.zeros(self.n_bits, dtype=np.uint8)
        if self.bits:
            arr[sorted(self.bits)] = 1
        return arr


def _hash64(payload: bytes) -> int:
    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "little")


def _initial_invariant(mol: Molecule, idx: int) -> int:
    atom = mol.atoms[idx]
    payload = struct.pack(
        "<6i",
        elements.ATOMIC_NUMBER.get(atom.element, 0),
        atom.degree,
        atom.total_h,
        atom.formal_charge,
        int(atom.in_ring),
        int(atom.is_aromatic),
    )
    return _hash64(b"init" + payload)


def environment_identifiers(mol: Molecule, radius: int = 2) -> list[tuple[int, int, int]]:
    """Deduplicated circular-environment identifiers as (radius, atom, id).

    Iterative neighbourhood hashing; an environment whose bond set was
    already produced (at a smaller radius, or same radius with a smaller
    identifier) is dropped.  All radius-0 identifiers are kept.
    """
    n = mol.n_atoms
    ids = [_initial_invariant(mol, i) for i in range(n)]
    bond_sets: list[frozenset[int]] = [frozenset() for _ in range(n)]
    adjacency = mol.adjacency()

    kept: list[tuple[int, int, int]] = [(0, i, ids[i]) for i in range(n)]
    seen_sets: set[frozenset[int]] = set()

    for r in range(1, radius + 1):
        new_ids = []
        new_sets = []
        candidates = []
        for i in range(n):
            pairs = sorted(
                (mol.bonds[bi].order.value, ids[mol.bonds[bi].other(i)])
                for bi in adjacency[i]
            )
            payload = struct.pack("<Q", ids[i]) + b"".join(
                struct.pack("<iQ", o, nid) for o, nid in pairs
            )
            nid = _hash64(payload)
            nset = frozenset(
                set(adjacency[i]).union(
                    *(bond_sets[mol.bonds[bi].other(i)] for bi in adjacency[i])
                )
                if adjacency[i]
                else set()
            )
            new_ids.append(nid)
            new_sets.append(nset)
            if nset != bond_sets[i]:
                candidates.append((r, nid, nset, i))
        for r_, nid, nset, i in sorted(candidates, key=lambda c: (c[1], c[3])):
            if nset not in seen_sets:
                seen_sets.add(nset)
                kept.append((r_, i, nid))
        ids = new_ids
        bond_sets = new_sets
    return kept


def ecfp(mol: Molecule, radius: int = 2, n_bits: int = 2048) -> Fingerprint:
    """Folded circular fingerprint; deterministic across runs and platforms."""
    identifiers = environment_identifiers(mol, radius)
    bits = frozenset(ident % n_bits for _, _, ident in identifiers)
    return Fingerprint(bits=bits, n_bits=n_bits, radius=radius)


def tanimoto(a: Fingerprint, b: Fingerprint) -> float:
    """|A n B| / |A u B|; 1.0 when both sets are empty."""
    if a.n_bits != b.n_bits:
        raise WidthMismatch(f"fingerprint widths differ: {a.n_bits} vs {b.n_bits}")
    union = len(a.bits | b.bits)
    if union == 0:
        return 1.0
    return len(a.bits & b.bits) / union


def jaccard_distance_matrix(fps: list[Fingerprint]) -> np.ndarray:
    """Symmetric zero-diagonal matrix of 1 - tanimoto."""
    n = len(fps)
    mat = np.stack([fp.to_array() for fp in fps]).astype(np.int32)
    inter = mat @ mat.T
    pops = mat.sum(axis=1)
    union = pops[:, None] + pops[None, :] - inter
    with np.errstate(invalid="ignore", divide="ignore"):
        sim = np.where(union > 0, inter / np.maximum(union, 1), 1.0)
    dist = 1.0 - sim
    np.fill_diagonal(dist, 0.0)
    return dist
