"""MOL V2000 / SDF parsing (fixed-width columns, "$$$$"-separated blocks)."""

from __future__ import annotations

from .errors import (
    AtomBlockShort,
    BatchLimitExceeded,
    DisconnectedInput,
    MalformedCountsLine,
)
from .mol import Atom, Bond, BondOrder, Molecule
from .smiles import _finalize

BATCH_LIMIT = 2000

_BOND_ORDERS = {1: BondOrder.SINGLE, 2: BondOrder.DOUBLE, 3: BondOrder.TRIPLE, 4: BondOrder.AROMATIC}

# old-style charge column codes (counts line era); M  CHG supersedes these
_CHARGE_CODES = {0: 0, 1: 3, 2: 2, 3: 1, 5: -1, 6: -2, 7: -3}


def parse_sdf(
    data: bytes | str,
    limit: int = BATCH_LIMIT,
    keep_largest_fragment: bool = False,
) -> list[Molecule]:
    """Parse an SDF (or single MOL block) into Molecules.

    Blocks beyond `limit` raise BatchLimitExceeded before any parsing work.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8", errors="replace")
    blocks = _split_blocks(data)
    if len(blocks) > limit:
        raise BatchLimitExceeded(len(blocks), limit)
    return [_parse_block(block, k + 1, keep_largest_fragment) for k, block in enumerate(blocks)]


def _split_blocks(data: str) -> list[str]:
    blocks = []
    current: list[str] = []
    for line in data.splitlines():
        if line.strip() == "$$$$":
            blocks.append("\n".join(current))
            current = []
        else:
            current.append(line)
    if any(ln.strip() for ln in current):
        blocks.append("\n".join(current))
    return blocks


def _parse_block(block: str, index: int, keep_largest_fragment: bool) -> Molecule:
    lines = block.splitlines()
    if len(lines) < 4:
        raise MalformedCountsLine("block shorter than a MOL header", index)
    name = lines[0].strip()
    counts = lines[3]
    try:
        n_atoms = int(counts[0:3])
        n_bonds = int(counts[3:6])
    except (ValueError, IndexError):
        raise MalformedCountsLine(f"bad counts line {counts!r}", index) from None
    if n_atoms <= 0:
        raise MalformedCountsLine("atom count must be positive", index)

    atom_lines = lines[4 : 4 + n_atoms]
    if len(atom_lines) < n_atoms:
        raise AtomBlockShort(
            f"expected {n_atoms} atom lines, found {len(atom_lines)}", index
        )
    atoms: list[Atom] = []
    coords: list[tuple[float, float]] = []
    for ln in atom_lines:
        if len(ln) < 34:
            raise AtomBlockShort(f"atom line too short: {ln!r}", index)
        try:
            x = float(ln[0:10])
            y = float(ln[10:20])
        except ValueError:
            raise AtomBlockShort(f"bad coordinates in {ln!r}", index) from None
        symbol = ln[31:34].strip()
        charge_code = 0
        if len(ln) >= 39:
            try:
                charge_code = int(ln[36:39])
            except ValueError:
                charge_code = 0
        atom = Atom(element=symbol, formal_charge=_CHARGE_CODES.get(charge_code, 0))
        atom._bracket = False
        atoms.append(atom)
        coords.append((x, y))

    bond_lines = lines[4 + n_atoms : 4 + n_atoms + n_bonds]
    if len(bond_lines) < n_bonds:
        raise AtomBlockShort(
            f"expected {n_bonds} bond lines, found {len(bond_lines)}", index
        )
    bonds: list[Bond] = []
    for ln in bond_lines:
        try:
            a = int(ln[0:3]) - 1
            b = int(ln[3:6]) - 1
            code = int(ln[6:9])
        except (ValueError, IndexError):
            raise AtomBlockShort(f"bad bond line {ln!r}", index) from None
        if not (0 <= a < n_atoms and 0 <= b < n_atoms) or a == b:
            raise AtomBlockShort(f"bond endpoints out of range in {ln!r}", index)
        order = _BOND_ORDERS.get(code, BondOrder.SINGLE)
        bond = Bond(a=a, b=b, order=order)
        if order is BondOrder.AROMATIC:
            atoms[a].is_aromatic = True
            atoms[b].is_aromatic = True
        bonds.append(bond)

    for ln in lines[4 + n_atoms + n_bonds :]:
        if ln.startswith("M  CHG"):
            fields = ln.split()
            try:
                n_entries = int(fields[2])
                pairs = fields[3 : 3 + 2 * n_entries]
                for atom_no, chg in zip(pairs[0::2], pairs[1::2]):
                    atoms[int(atom_no) - 1].formal_charge = int(chg)
            except (ValueError, IndexError):
                raise MalformedCountsLine(f"bad M  CHG line {ln!r}", index) from None
        if ln.startswith("M  END"):
            break

    mol = Molecule(atoms=atoms, bonds=bonds, source=name or f"block{index}")
    mol.coords2d = coords
    if _n_components(mol) > 1:
        if not keep_largest_fragment:
            raise DisconnectedInput(
                f"multi-fragment MOL block {index} rejected "
                "(enable fragment keeping)",
                0,
            )
        mol = _largest_component(mol)
    bond_default = [False] * mol.n_bonds
    _finalize(mol, [0] * mol.n_atoms, bond_default, [], strict_valence=False)
    return mol


def _n_components(mol: Molecule) -> int:
    seen = [False] * mol.n_atoms
    count = 0
    for root in range(mol.n_atoms):
        if seen[root]:
            continue
        count += 1
        stack = [root]
        seen[root] = True
        while stack:
            node = stack.pop()
            for nbr, _ in mol.neighbors(node):
                if not seen[nbr]:
                    seen[nbr] = True
                    stack.append(nbr)
    return count


def _largest_component(mol: Molecule) -> Molecule:
    comp = [-1] * mol.n_atoms
    n_comp = 0
    for root in range(mol.n_atoms):
        if comp[root] >= 0:
            continue
        stack = [root]
        comp[root] = n_comp
        while stack:
            node = stack.pop()
            for nbr, _ in mol.neighbors(node):
                if comp[nbr] < 0:
                    comp[nbr] = n_comp
                    stack.append(nbr)
        n_comp += 1
    sizes = [0] * n_comp
    for c in comp:
        sizes[c] += 1
    keep = max(range(n_comp), key=lambda c: (sizes[c], -c))
    remap = {}
    new_atoms = []
    new_coords = []
    for i, atom in enumerate(mol.atoms):
        if comp[i] == keep:
            remap[i] = len(new_atoms)
            new_atoms.append(atom)
            if mol.coords2d:
                new_coords.append(mol.coords2d[i])
    new_bonds = [
        Bond(a=remap[b.a], b=remap[b.b], order=b.order)
        for b in mol.bonds
        if b.a in remap and b.b in remap
    ]
    out = Molecule(atoms=new_atoms, bonds=new_bonds, source=mol.source)
    out.coords2d = new_coords or None
    return out
