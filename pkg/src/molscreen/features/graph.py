"""Model-ready graph tensors built from a parsed Molecule."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..chem.charges import gasteiger_charges
from ..chem.mol import Atom, Bond, BondOrder, Hybridization, Molecule
from .atom_bond import ATOM_DIM, BOND_DIM, LAYOUT_VERSION, atom_feature_vector, bond_feature_vector
from .descriptors import physchem_descriptors
from .pharmacophore import pharmacophore_pairs

GLOBAL_DIM = 12 + 210


@dataclass
class FeaturizedGraph:
    """Node/edge matrices plus the global descriptor vector for one molecule.

    Every bond contributes two directed edges (forward then reverse, in
    consecutive rows).  h_groups maps each heavy atom to itself plus any
    explicit-hydrogen node indices; with implicit hydrogens the groups are
    singletons.
    """

    node_features: np.ndarray          # (n, ATOM_DIM)
    edge_features: np.ndarray          # (2m, BOND_DIM)
    edge_index: np.ndarray             # (2, 2m) rows: source, target
    global_features: np.ndarray        # (GLOBAL_DIM,)
    n_heavy: int
    h_groups: dict[int, list[int]] = field(default_factory=dict)
    layout_version: str = LAYOUT_VERSION
    smiles: str = ""

    @property
    def n_nodes(self) -> int:
        return self.node_features.shape[0]

    @property
    def n_edges(self) -> int:
        return self.edge_index.shape[1]


def add_explicit_hydrogens(mol: Molecule) -> tuple[Molecule, dict[int, list[int]]]:
    """Expand implicit/explicit H counts into real hydrogen nodes.

    Returns the expanded molecule and the heavy-atom grouping used by the
    attribution layer.  Heavy atoms keep their indices; hydrogens append.
    """
    q, qh = gasteiger_charges(mol)
    atoms: list[Atom] = []
    for atom in mol.atoms:
        copy = Atom(
            element=atom.element,
            formal_charge=atom.formal_charge,
            is_aromatic=atom.is_aromatic,
            chirality=atom.chirality,
            explicit_h=0,
            implicit_h=0,
            degree=atom.degree,
            hybridization=atom.hybridization,
            partial_charge=atom.partial_charge,
            hbd=atom.hbd,
            hba=atom.hba,
            in_ring=atom.in_ring,
        )
        atoms.append(copy)
    bonds = [
        Bond(
            a=b.a,
            b=b.b,
            order=b.order,
            is_conjugated=b.is_conjugated,
            stereo=b.stereo,
            same_ring=b.same_ring,
        )
        for b in mol.bonds
    ]
    groups: dict[int, list[int]] = {}
    for i, atom in enumerate(mol.atoms):
        if atom.element == "H":
            continue
        groups[i] = [i]
        for _ in range(atom.total_h):
            h_idx = len(atoms)
            atoms.append(
                Atom(
                    element="H",
                    degree=1,
                    hybridization=Hybridization.OTHER,
                    partial_charge=qh[i],
                )
            )
            bonds.append(Bond(a=i, b=h_idx, order=BondOrder.SINGLE))
            groups[i].append(h_idx)
    expanded = Molecule(atoms=atoms, bonds=bonds, rings=list(mol.rings), source=mol.source)
    return expanded, groups


def featurize(mol: Molecule, explicit_h: bool = False) -> FeaturizedGraph:
    """Build the model input for one molecule.

    Global features always come from the implicit-hydrogen molecule so the
    descriptor semantics do not depend on the graph convention.
    """
    global_feats = np.concatenate(
        [physchem_descriptors(mol), pharmacophore_pairs(mol)]
    )
    n_heavy = len(mol.heavy_indices())

    if explicit_h:
        graph_mol, groups = add_explicit_hydrogens(mol)
    else:
        graph_mol = mol
        groups = {i: [i] for i in range(mol.n_atoms)}

    n = graph_mol.n_atoms
    node = np.zeros((n, ATOM_DIM), dtype=np.float64)
    for i in range(n):
        node[i] = atom_feature_vector(graph_mol, i)

    m = graph_mol.n_bonds
    edge = np.zeros((2 * m, BOND_DIM), dtype=np.float64)
    index = np.zeros((2, 2 * m), dtype=np.int64)
    for k, bond in enumerate(graph_mol.bonds):
        fv = bond_feature_vector(graph_mol, bond)
        edge[2 * k] = fv
        edge[2 * k + 1] = fv
        index[:, 2 * k] = (bond.a, bond.b)
        index[:, 2 * k + 1] = (bond.b, bond.a)

    from ..chem.canon import canonical_smiles

    return FeaturizedGraph(
        node_features=node,
        edge_features=edge,
        edge_index=index,
        global_features=global_feats,
        n_heavy=n_heavy,
        h_groups=groups,
        smiles=canonical_smiles(mol),
    )


def export_feature_matrix(path, matrix: np.ndarray, names: list[str]):
    """CSV with a header naming every column; layout version in a comment."""
    matrix = np.asarray(matrix)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# layout: {LAYOUT_VERSION}\n")
        fh.write(",".join(names) + "\n")
        for row in matrix:
            fh.write(",".join(f"{v:.10g}" for v in row) + "\n")
