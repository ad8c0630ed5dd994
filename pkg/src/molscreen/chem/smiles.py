"""SMILES parsing into validated molecular graphs.

Supported grammar: organic-subset atoms (B C N O P S F Cl Br I and aromatic
b c n o s p), bracket atoms with isotope / chirality (@, @@) / H-count /
charge, bonds ``- = # : / \\``, branches, ring closures (digits and %nn).
Dot-disconnected inputs are rejected unless fragment keeping is enabled.
"""

from __future__ import annotations

import warnings

from . import elements
from .charges import gasteiger_charges
from .errors import (
    DisconnectedInput,
    EmptyInput,
    ParseError,
    UnbalancedParenthesis,
    UnclosedRing,
    UnknownElement,
    ValenceViolation,
)
from .mol import Atom, Bond, BondOrder, BondStereo, Chirality, Hybridization, Molecule
from .rings import perceive_rings

_BOND_CHARS = {
    "-": BondOrder.SINGLE,
    "=": BondOrder.DOUBLE,
    "#": BondOrder.TRIPLE,
    ":": BondOrder.AROMATIC,
}

_TWO_LETTER_ORGANIC = ("Cl", "Br")


def _tokenize(text: str):
    """Yield (kind, value, offset) tokens; kinds: atom/bond/open/close/ring/dot/dir."""
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "[":
            end = text.find("]", i)
            if end < 0:
                raise ParseError("unterminated bracket atom", i)
            yield "atom", _parse_bracket(text[i + 1 : end], i + 1), i
            i = end + 1
        elif text[i : i + 2] in _TWO_LETTER_ORGANIC:
            yield "atom", {"symbol": text[i : i + 2], "aromatic": False, "bracket": False}, i
            i += 2
        elif ch in "BCNOPSFI":
            yield "atom", {"symbol": ch, "aromatic": False, "bracket": False}, i
            i += 1
        elif ch in "bcnops":
            yield "atom", {"symbol": ch.upper(), "aromatic": True, "bracket": False}, i
            i += 1
        elif ch in _BOND_CHARS:
            yield "bond", _BOND_CHARS[ch], i
            i += 1
        elif ch in "/\\":
            yield "dir", ch, i
            i += 1
        elif ch == "(":
            yield "open", None, i
            i += 1
        elif ch == ")":
            yield "close", None, i
            i += 1
        elif ch.isdigit():
            yield "ring", int(ch), i
            i += 1
        elif ch == "%":
            if i + 2 >= n or not text[i + 1 : i + 3].isdigit():
                raise ParseError("%% ring closure needs two digits", i)
            yield "ring", int(text[i + 1 : i + 3]), i
            i += 3
        elif ch == ".":
            yield "dot", None, i
            i += 1
        elif ch.isspace():
            i += 1
        else:
            raise UnknownElement(f"unexpected character {ch!r}", i)


def _parse_bracket(body: str, offset: int) -> dict:
    """Parse the inside of a bracket atom: isotope symbol chirality H-count charge."""
    i = 0
    n = len(body)
    isotope = 0
    while i < n and body[i].isdigit():
        isotope = isotope * 10 + int(body[i])
        i += 1
    if i >= n:
        raise UnknownElement("bracket atom without element symbol", offset + i)
    aromatic = False
    if body[i].islower():
        sym = body[i : i + 2] if body[i : i + 2] in ("se", "as") else body[i]
        symbol = sym.capitalize()
        aromatic = True
        i += len(sym)
    else:
        sym = body[i]
        i += 1
        if i < n and body[i].islower() and sym + body[i] in elements.ATOMIC_NUMBER:
            sym += body[i]
            i += 1
        symbol = sym
    if symbol not in elements.ATOMIC_NUMBER:
        raise UnknownElement(f"unknown element {symbol!r}", offset)
    chirality = Chirality.NONE
    if i < n and body[i] == "@":
        if i + 1 < n and body[i + 1] == "@":
            chirality = Chirality.CW
            i += 2
        else:
            chirality = Chirality.CCW
            i += 1
    hcount = 0
    if i < n and body[i] == "H":
        i += 1
        hcount = 1
        digits = ""
        while i < n and body[i].isdigit():
            digits += body[i]
            i += 1
        if digits:
            hcount = int(digits)
    charge = 0
    if i < n and body[i] in "+-":
        sign = 1 if body[i] == "+" else -1
        i += 1
        digits = ""
        while i < n and body[i].isdigit():
            digits += body[i]
            i += 1
        if digits:
            charge = sign * int(digits)
        else:
            charge = sign
            while i < n and body[i] in "+-" and (body[i] == "+") == (sign > 0):
                charge += sign
                i += 1
    if i < n and body[i] == ":":
        i += 1
        while i < n and body[i].isdigit():
            i += 1
    if i != n:
        raise ParseError(f"unparsed bracket content {body[i:]!r}", offset + i)
    return {
        "symbol": symbol,
        "aromatic": aromatic,
        "bracket": True,
        "isotope": isotope,
        "chirality": chirality,
        "explicit_h": hcount,
        "charge": charge,
    }


def parse_smiles(text: str, keep_largest_fragment: bool = False) -> Molecule:
    """Parse a SMILES string into a validated Molecule.

    Raises: EmptyInput, UnbalancedParenthesis, UnclosedRing, UnknownElement,
    ValenceViolation, DisconnectedInput; each error carries the byte offset.
    """
    if not text or not text.strip():
        raise EmptyInput("empty SMILES input", 0)

    atoms: list[Atom] = []
    atom_offsets: list[int] = []
    bonds: list[Bond] = []
    bond_default: list[bool] = []  # bond created without an explicit symbol
    dir_marks: list[tuple[int, int, int, str]] = []  # bond idx, u, v, symbol

    prev: int | None = None
    pending: BondOrder | None = None
    pending_dir: str | None = None
    pending_offset = 0
    branch_stack: list[tuple[int, int]] = []  # (atom index, '(' offset)
    open_rings: dict[int, tuple[int, BondOrder | None, str | None, int]] = {}
    fragment_breaks = 0

    def add_bond(a: int, b: int, order: BondOrder | None, dsym: str | None, off: int):
        if a == b:
            raise ParseError("ring closure bonds an atom to itself", off)
        for bond in bonds:
            if {bond.a, bond.b} == {a, b}:
                raise ParseError("duplicate bond between atoms", off)
        default = order is None
        if order is None:
            order = BondOrder.SINGLE  # may be upgraded to aromatic later
        bonds.append(Bond(a=a, b=b, order=order))
        bond_default.append(default)
        if dsym is not None:
            dir_marks.append((len(bonds) - 1, a, b, dsym))

    for kind, value, offset in _tokenize(text):
        if kind == "atom":
            idx = len(atoms)
            atom = Atom(
                element=value["symbol"],
                is_aromatic=value["aromatic"],
                formal_charge=value.get("charge", 0),
                explicit_h=value.get("explicit_h", 0),
                chirality=value.get("chirality", Chirality.NONE),
                isotope=value.get("isotope", 0),
            )
            atom._bracket = value["bracket"]
            atoms.append(atom)
            atom_offsets.append(offset)
            if prev is not None:
                add_bond(prev, idx, pending, pending_dir, offset)
                atoms[prev].chiral_order.append(idx)
                atom.chiral_order.append(prev)
            if atom.chirality is not Chirality.NONE and atom.explicit_h == 1:
                atom.chiral_order.append(-1)
            pending = None
            pending_dir = None
            prev = idx
        elif kind == "bond":
            if prev is None:
                raise ParseError("bond symbol before any atom", offset)
            pending = value
            pending_offset = offset
        elif kind == "dir":
            if prev is None:
                raise ParseError("directional bond before any atom", offset)
            pending = BondOrder.SINGLE
            pending_dir = value
            pending_offset = offset
        elif kind == "open":
            if prev is None:
                raise UnbalancedParenthesis("branch before any atom", offset)
            branch_stack.append((prev, offset))
        elif kind == "close":
            if not branch_stack:
                raise UnbalancedParenthesis("unmatched ')'", offset)
            if pending is not None:
                raise ParseError("dangling bond before ')'", pending_offset)
            prev, _ = branch_stack.pop()
        elif kind == "ring":
            if prev is None:
                raise UnclosedRing("ring closure before any atom", offset)
            num = value
            if num in open_rings:
                a, order_a, dir_a, _ = open_rings.pop(num)
                order = pending if pending is not None else order_a
                if pending is not None and order_a is not None and pending is not order_a:
                    raise ParseError("conflicting ring-closure bond orders", offset)
                add_bond(a, prev, order, dir_a or pending_dir, offset)
                slot = atoms[a].chiral_order
                for j, entry in enumerate(slot):
                    if entry == ("ring", num):
                        slot[j] = prev
                        break
                atoms[prev].chiral_order.append(a)
                pending = None
                pending_dir = None
            else:
                open_rings[num] = (prev, pending, pending_dir, offset)
                atoms[prev].chiral_order.append(("ring", num))
                pending = None
                pending_dir = None
        elif kind == "dot":
            if not keep_largest_fragment:
                raise DisconnectedInput(
                    "dot-disconnected SMILES rejected (enable fragment keeping)", offset
                )
            if pending is not None:
                raise ParseError("bond symbol before '.'", pending_offset)
            fragment_breaks += 1
            prev = None

    if branch_stack:
        raise UnbalancedParenthesis("unclosed '('", branch_stack[0][1])
    if open_rings:
        num, (_, _, _, off) = min(open_rings.items(), key=lambda kv: kv[1][3])
        raise UnclosedRing(f"ring closure {num} never closed", off)
    if pending is not None:
        raise ParseError("dangling bond at end of input", pending_offset)

    mol = Molecule(atoms=atoms, bonds=bonds, source=text)
    mol._offsets = atom_offsets
    mol._bond_default = bond_default
    mol._dir_marks = dir_marks

    if fragment_breaks:
        mol = _keep_largest_fragment(mol, atom_offsets)

    _finalize(mol, mol._offsets, mol._bond_default, mol._dir_marks)
    mol.source = text
    return mol


def _keep_largest_fragment(mol: Molecule, offsets: list[int]) -> Molecule:
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
    new_offsets = []
    for i, atom in enumerate(mol.atoms):
        if comp[i] == keep:
            remap[i] = len(new_atoms)
            new_atoms.append(atom)
            new_offsets.append(offsets[i])
    new_bonds = []
    new_default = []
    new_dirs = []
    for bi, bond in enumerate(mol.bonds):
        if bond.a in remap and bond.b in remap:
            nb = Bond(a=remap[bond.a], b=remap[bond.b], order=bond.order)
            new_bonds.append(nb)
            new_default.append(mol._bond_default[bi])
    for bi, u, v, sym in mol._dir_marks:
        bond = mol.bonds[bi]
        if bond.a in remap and bond.b in remap:
            for nbi, nb in enumerate(new_bonds):
                if {nb.a, nb.b} == {remap[bond.a], remap[bond.b]}:
                    new_dirs.append((nbi, remap[u], remap[v], sym))
                    break
    for atom in new_atoms:
        atom.chiral_order = [
            remap[x] if isinstance(x, int) and x >= 0 and x in remap else x
            for x in atom.chiral_order
            if x == -1 or (isinstance(x, int) and x in remap)
        ]
    out = Molecule(atoms=new_atoms, bonds=new_bonds, source=mol.source)
    out._offsets = new_offsets
    out._bond_default = new_default
    out._dir_marks = new_dirs
    return out


def _sigma_count(mol: Molecule, idx: int) -> int:
    return len(mol.adjacency()[idx])


def _pi_contribution(atom: Atom, sigma: int) -> int:
    """Pi electrons an aromatic atom feeds into the ring system (0, 1 or 2)."""
    sym = atom.element
    if sym in ("C", "B"):
        return 1
    if sym in ("N", "P"):
        if atom.formal_charge > 0:
            return 1
        return 1 if sigma + atom.explicit_h + atom.implicit_h == 2 else 2
    if sym in ("O", "S", "Se"):
        return 1 if atom.formal_charge > 0 else 2
    return 0


def _finalize(
    mol: Molecule,
    offsets: list[int],
    bond_default: list[bool],
    dir_marks: list[tuple[int, int, int, str]],
    strict_valence: bool = True,
):
    perceive_rings(mol)

    # Default bonds between two aromatic atoms are aromatic only inside a
    # ring (biphenyl's default linker bond stays single).
    for bi, bond in enumerate(mol.bonds):
        both_aromatic = mol.atoms[bond.a].is_aromatic and mol.atoms[bond.b].is_aromatic
        if bond_default[bi] and both_aromatic and bond.same_ring:
            bond.order = BondOrder.AROMATIC
        if bond.order is BondOrder.AROMATIC:
            if not bond.same_ring:
                raise ValenceViolation(
                    "aromatic bond outside any ring", offsets[bond.a]
                )
            mol.atoms[bond.a].is_aromatic = True
            mol.atoms[bond.b].is_aromatic = True

    for i, atom in enumerate(mol.atoms):
        if atom.is_aromatic and not atom.in_ring:
            raise ValenceViolation("aromatic atom outside any ring", offsets[i])

    _assign_hydrogens(mol, offsets, strict=strict_valence)
    _aromatize_kekule(mol)
    _assign_stereo(mol, dir_marks)
    _assign_hybridization(mol)
    _assign_hb_flags(mol)
    for i, atom in enumerate(mol.atoms):
        atom.degree = sum(1 for nbr, _ in mol.neighbors(i) if mol.atoms[nbr].element != "H")

    gasteiger_charges(mol)

    from .canon import canonical_ranks

    mol.canonical_ranks = canonical_ranks(mol)


def valence_used(mol: Molecule, i: int) -> int:
    """Bonding capacity an atom's bonds consume.

    Aromatic atoms count each ring bond once plus 1 when the atom feeds a
    pi bond into the ring (lone-pair donors like furan O feed electrons,
    not a bond).  Kekulé atoms simply sum integer bond orders.
    """
    atom = mol.atoms[i]
    if atom.is_aromatic:
        sigma = _sigma_count(mol, i)
        pi = _pi_contribution(atom, sigma)
        return sigma + (1 if pi == 1 else 0)
    return int(sum(b.order.numeric for _, b in mol.neighbors(i)))


def reader_implicit_h(mol: Molecule, i: int) -> int:
    """Hydrogens a parser would infer for a bare (bracket-free) atom here.

    Returns -1 when no tabulated valence fits, meaning the atom cannot be
    written without brackets.
    """
    atom = mol.atoms[i]
    if atom.is_aromatic:
        sigma = _sigma_count(mol, i)
        if atom.element in ("C", "B"):
            pi = 1
        elif atom.element in ("N", "P"):
            pi = 1 if sigma == 2 else 2
        else:
            pi = 2
        used = sigma + (1 if pi == 1 else 0)
    else:
        used = int(sum(b.order.numeric for _, b in mol.neighbors(i)))
    allowed = elements.allowed_valences(atom.element, 0)
    fitting = [v for v in allowed if v >= used] if allowed else []
    return fitting[0] - used if fitting else -1


def _assign_hydrogens(mol: Molecule, offsets: list[int], strict: bool = True):
    for i, atom in enumerate(mol.atoms):
        used = valence_used(mol, i)
        allowed = elements.allowed_valences(atom.element, atom.formal_charge)
        if _was_bracket(atom):
            atom.implicit_h = 0
            if allowed is not None and strict:
                total = used + atom.explicit_h
                ok = total in allowed
                if not ok and atom.is_aromatic:
                    # tolerate the 1.5-per-aromatic-bond bookkeeping too
                    alt = int(sum(b.order.numeric for _, b in mol.neighbors(i)))
                    ok = alt + atom.explicit_h in allowed
                if not ok:
                    raise ValenceViolation(
                        f"valence {total} not allowed for {atom.element} "
                        f"(charge {atom.formal_charge:+d})",
                        offsets[i],
                    )
        else:
            if allowed is None:
                if strict:
                    raise UnknownElement(f"{atom.element} needs brackets", offsets[i])
                atom.implicit_h = 0
                continue
            fitting = [v for v in allowed if v >= used]
            if not fitting:
                if strict:
                    raise ValenceViolation(
                        f"bond order sum {used} exceeds valences {allowed} "
                        f"of {atom.element}",
                        offsets[i],
                    )
                atom.implicit_h = 0
                continue
            atom.implicit_h = fitting[0] - used


def _was_bracket(atom: Atom) -> bool:
    return getattr(atom, "_bracket", False)


def _aromatize_kekule(mol: Molecule):
    """Promote 4n+2 Kekulé rings (uppercase input) to aromatic form."""
    ring_atom_sets = [set(r) for r in mol.rings]
    in_any_ring = set().union(*ring_atom_sets) if ring_atom_sets else set()

    changed = True
    while changed:
        changed = False
        for ring in mol.rings:
            ring_set = set(ring)
            if any(mol.atoms[i].is_aromatic for i in ring):
                continue
            pi_total = 0
            capable = True
            for i in ring:
                atom = mol.atoms[i]
                double_partners = [
                    nbr for nbr, b in mol.neighbors(i) if b.order is BondOrder.DOUBLE
                ]
                if any(p in in_any_ring for p in double_partners):
                    pi_total += 1
                elif double_partners:
                    if atom.element in ("C", "B"):
                        pi_total += 0  # exocyclic double: empty contribution
                    else:
                        capable = False
                        break
                else:
                    sym = atom.element
                    if sym in ("N", "P") and atom.formal_charge == 0:
                        pi_total += 2
                    elif sym in ("O", "S", "Se") and atom.formal_charge == 0:
                        pi_total += 2
                    elif sym == "C" and atom.formal_charge == -1:
                        pi_total += 2
                    elif sym == "C" and atom.formal_charge == 1:
                        pi_total += 0
                    else:
                        capable = False
                        break
            if not capable or pi_total % 4 != 2:
                continue
            for i in ring:
                mol.atoms[i].is_aromatic = True
            k = len(ring)
            for j in range(k):
                bond = mol.bond_between(ring[j], ring[(j + 1) % k])
                if bond is not None:
                    bond.order = BondOrder.AROMATIC
            changed = True


def _assign_stereo(mol: Molecule, dir_marks: list[tuple[int, int, int, str]]):
    """Set cis/trans on double bonds flanked by two directional single bonds.

    A mark written ``u->v`` with ``/`` puts v above u.  For a double-bond
    end atom, the flanking neighbour's side is +1 (above) when the mark was
    written outward (end->x with ``/``) and -1 when written inward.
    """
    by_atom: dict[int, list[tuple[int, int, int, str]]] = {}
    for bi, u, v, sym in dir_marks:
        by_atom.setdefault(u, []).append((bi, u, v, sym))
        by_atom.setdefault(v, []).append((bi, u, v, sym))

    for bond in mol.bonds:
        if bond.order is not BondOrder.DOUBLE:
            continue
        sides = []
        for end in (bond.a, bond.b):
            for bi, u, v, sym in by_atom.get(end, []):
                db = mol.bonds[bi]
                if {db.a, db.b} == {bond.a, bond.b}:
                    continue
                outward = u == end
                side = 1 if (outward == (sym == "/")) else -1
                sides.append(side)
                break
        if len(sides) == 2:
            bond.stereo = BondStereo.CIS if sides[0] == sides[1] else BondStereo.TRANS


def _assign_hybridization(mol: Molecule):
    for i, atom in enumerate(mol.atoms):
        orders = [b.order for _, b in mol.neighbors(i)]
        n_double = sum(1 for o in orders if o is BondOrder.DOUBLE)
        n_triple = sum(1 for o in orders if o is BondOrder.TRIPLE)
        aromatic = atom.is_aromatic or any(o is BondOrder.AROMATIC for o in orders)
        if n_triple >= 1 or n_double >= 2:
            atom.hybridization = Hybridization.SP
        elif n_double == 1 or aromatic:
            atom.hybridization = Hybridization.SP2
        elif atom.element == "H":
            atom.hybridization = Hybridization.OTHER
        else:
            atom.hybridization = Hybridization.SP3


def _assign_hb_flags(mol: Molecule):
    for atom in mol.atoms:
        if atom.element in ("N", "O"):
            atom.hbd = atom.total_h >= 1
            atom.hba = atom.formal_charge <= 0
        else:
            atom.hbd = False
            atom.hba = False
