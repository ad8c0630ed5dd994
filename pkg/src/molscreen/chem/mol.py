"""Molecular graph: atoms, bonds, and the parsed molecule container."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class Chirality(enum.Enum):
    NONE = "none"
    CW = "cw"       # @@
    CCW = "ccw"     # @


class BondOrder(enum.Enum):
    SINGLE = 1
    DOUBLE = 2
    TRIPLE = 3
    AROMATIC = 4

    @property
    def numeric(self) -> float:
        """Bond-order contribution to valence; aromatic counts 1.5."""
        return 1.5 if self is BondOrder.AROMATIC else float(self.value)


class BondStereo(enum.Enum):
    NONE = "none"
    CIS = "cis"
    TRANS = "trans"


class Hybridization(enum.Enum):
    SP = "sp"
    SP2 = "sp2"
    SP3 = "sp3"
    OTHER = "other"


@dataclass
class Atom:
    element: str
    formal_charge: int = 0
    is_aromatic: bool = False
    chirality: Chirality = Chirality.NONE
    explicit_h: int = 0
    implicit_h: int = 0
    degree: int = 0
    hybridization: Hybridization = Hybridization.SP3
    partial_charge: float = 0.0
    hbd: bool = False
    hba: bool = False
    in_ring: bool = False
    isotope: int = 0
    # Neighbour indices in SMILES-encounter order; -1 marks the bracket
    # hydrogen slot.  Only used to re-derive tetrahedral parity on output.
    chiral_order: list[int] = field(default_factory=list)

    @property
    def total_h(self) -> int:
        return self.explicit_h + self.implicit_h


@dataclass
class Bond:
    a: int
    b: int
    order: BondOrder
    is_conjugated: bool = False
    stereo: BondStereo = BondStereo.NONE
    same_ring: bool = False

    def other(self, idx: int) -> int:
        return self.b if idx == self.a else self.a


@dataclass
class Molecule:
    """Validated molecular graph; treat as immutable once parsed."""

    atoms: list[Atom]
    bonds: list[Bond]
    rings: list[list[int]] = field(default_factory=list)
    source: str = ""
    canonical_ranks: list[int] = field(default_factory=list)
    coords2d: list[tuple[float, float]] | None = None

    def __post_init__(self):
        self._adj: list[list[int]] | None = None

    @property
    def n_atoms(self) -> int:
        return len(self.atoms)

    @property
    def n_bonds(self) -> int:
        return len(self.bonds)

    def neighbors(self, idx: int) -> list[tuple[int, Bond]]:
        """(neighbour index, bond) pairs for the given atom."""
        out = []
        for bi in self.adjacency()[idx]:
            bond = self.bonds[bi]
            out.append((bond.other(idx), bond))
        return out

    def adjacency(self) -> list[list[int]]:
        """Per-atom list of incident bond indices (cached)."""
        if self._adj is None:
            adj: list[list[int]] = [[] for _ in self.atoms]
            for bi, bond in enumerate(self.bonds):
                adj[bond.a].append(bi)
                adj[bond.b].append(bi)
            self._adj = adj
        return self._adj

    def bond_between(self, a: int, b: int) -> Bond | None:
        for bi in self.adjacency()[a]:
            bond = self.bonds[bi]
            if bond.other(a) == b:
                return bond
        return None

    def heavy_indices(self) -> list[int]:
        return [i for i, atom in enumerate(self.atoms) if atom.element != "H"]
