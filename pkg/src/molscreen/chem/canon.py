"""Canonical atom ranking and canonical SMILES emission.

Ranking is iterative neighbourhood-invariant refinement with lexicographic
tie-breaking; emission is a deterministic DFS that visits neighbours in
rank order.  Output is internally consistent (idempotent and invariant to
input atom order), not matched to any external toolkit's canonical form.
"""

from __future__ import annotations

from .mol import Atom, Bond, BondOrder, Chirality, Molecule

_CHIRALITY_CODE = {Chirality.NONE: 0, Chirality.CCW: 1, Chirality.CW: 2}


def _initial_invariants(mol: Molecule) -> list[tuple]:
    from . import elements

    out = []
    for i, atom in enumerate(mol.atoms):
        out.append(
            (
                elements.ATOMIC_NUMBER.get(atom.element, 0),
                len(mol.adjacency()[i]),
                atom.total_h,
                atom.formal_charge,
                int(atom.is_aromatic),
                int(atom.in_ring),
                _CHIRALITY_CODE[atom.chirality],
            )
        )
    return out


def _dense_rank(keys: list) -> list[int]:
    order = sorted(set(keys))
    index = {k: r for r, k in enumerate(order)}
    return [index[k] for k in keys]


def _refine(mol: Molecule, ranks: list[int]) -> list[int]:
    n = mol.n_atoms
    while True:
        keys = []
        for i in range(n):
            nbr_keys = sorted(
                (bond.order.value, ranks[nbr]) for nbr, bond in mol.neighbors(i)
            )
            keys.append((ranks[i], tuple(nbr_keys)))
        new_ranks = _dense_rank(keys)
        if len(set(new_ranks)) == len(set(ranks)) and new_ranks == ranks:
            return ranks
        if len(set(new_ranks)) == len(set(ranks)):
            # stable partition; normalise representative numbering
            return new_ranks
        ranks = new_ranks


def symmetry_classes(mol: Molecule) -> list[int]:
    """Refinement classes: structurally equivalent atoms share a value."""
    return _refine(mol, _dense_rank(_initial_invariants(mol)))


def canonical_ranks(mol: Molecule) -> list[int]:
    """A permutation of 0..n-1, stable across input atom reorderings."""
    ranks = symmetry_classes(mol)
    n = mol.n_atoms
    while len(set(ranks)) < n:
        counts: dict[int, list[int]] = {}
        for i, r in enumerate(ranks):
            counts.setdefault(r, []).append(i)
        tied_rank = min(r for r, members in counts.items() if len(members) > 1)
        chosen = counts[tied_rank][0]
        # give the chosen atom its own class just below its former peers
        keys = [
            (ranks[i], 0 if i == chosen else 1 if ranks[i] == tied_rank else 0)
            for i in range(n)
        ]
        ranks = _refine(mol, _dense_rank(keys))
    return ranks


def _needs_bracket(mol: Molecule, idx: int) -> bool:
    from . import elements
    from .smiles import reader_implicit_h

    atom = mol.atoms[idx]
    if atom.element not in elements.ORGANIC_SUBSET:
        return True
    if atom.formal_charge != 0 or atom.chirality is not Chirality.NONE:
        return True
    # bare symbol implies an H count; bracket when ours differs
    return reader_implicit_h(mol, idx) != atom.total_h


def _atom_token(mol: Molecule, idx: int, chirality: Chirality) -> str:
    atom = mol.atoms[idx]
    symbol = atom.element.lower() if atom.is_aromatic else atom.element
    if not _needs_bracket(mol, idx):
        return symbol
    parts = [symbol]
    if chirality is Chirality.CCW:
        parts.append("@")
    elif chirality is Chirality.CW:
        parts.append("@@")
    h = atom.total_h
    if h == 1:
        parts.append("H")
    elif h > 1:
        parts.append(f"H{h}")
    q = atom.formal_charge
    if q == 1:
        parts.append("+")
    elif q == -1:
        parts.append("-")
    elif q > 1:
        parts.append(f"+{q}")
    elif q < -1:
        parts.append(str(q))
    return "[" + "".join(parts) + "]"


def _bond_token(mol: Molecule, bond: Bond) -> str:
    if bond.order is BondOrder.SINGLE:
        if mol.atoms[bond.a].is_aromatic and mol.atoms[bond.b].is_aromatic:
            return "-"
        return ""
    if bond.order is BondOrder.DOUBLE:
        return "="
    if bond.order is BondOrder.TRIPLE:
        return "#"
    return ""  # aromatic bonds are the default between aromatic atoms


def _permutation_parity(reference: list, candidate: list) -> int:
    """0 for even, 1 for odd; -1 when the lists differ as multisets."""
    if sorted(map(repr, reference)) != sorted(map(repr, candidate)):
        return -1
    perm = []
    used = [False] * len(reference)
    for item in candidate:
        for j, ref in enumerate(reference):
            if not used[j] and ref == item:
                used[j] = True
                perm.append(j)
                break
    parity = 0
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


def canonical_smiles(mol: Molecule) -> str:
    """Deterministic SMILES, invariant to input atom order."""
    ranks = mol.canonical_ranks or canonical_ranks(mol)
    n = mol.n_atoms
    if n == 0:
        return ""
    order = {i: ranks[i] for i in range(n)}
    start = min(range(n), key=lambda i: order[i])

    visited = [False] * n
    parent: dict[int, int | None] = {start: None}
    children: dict[int, list[int]] = {i: [] for i in range(n)}
    closure_edges: list[tuple[int, int]] = []
    stack = [start]
    visited[start] = True
    # Iterative DFS in rank order to classify tree and closure edges.
    iter_state = {start: sorted((nbr for nbr, _ in mol.neighbors(start)), key=lambda x: order[x])}
    pos = {start: 0}
    seen_closures = set()
    while stack:
        node = stack[-1]
        nbrs = iter_state[node]
        if pos[node] >= len(nbrs):
            stack.pop()
            continue
        nxt = nbrs[pos[node]]
        pos[node] += 1
        if nxt == parent.get(node):
            # skip one parent occurrence only (parallel bonds impossible)
            parent[node] = -2
            continue
        if visited[nxt]:
            key = (min(node, nxt), max(node, nxt))
            if key not in seen_closures:
                seen_closures.add(key)
                closure_edges.append((node, nxt))
            continue
        visited[nxt] = True
        parent[nxt] = node
        children[node].append(nxt)
        iter_state[nxt] = sorted(
            (nbr for nbr, _ in mol.neighbors(nxt)), key=lambda x: order[x]
        )
        pos[nxt] = 0
        stack.append(nxt)

    # closure digits numbered by emission order of their opening atom
    closure_at: dict[int, list[tuple[int, int]]] = {}
    for a, b in closure_edges:
        closure_at.setdefault(a, []).append((b, -1))
        closure_at.setdefault(b, []).append((a, -1))

    emit_order: list[int] = []

    def walk_order(node: int):
        emit_order.append(node)
        for child in children[node]:
            walk_order(child)

    walk_order(start)
    emit_pos = {a: i for i, a in enumerate(emit_order)}

    digit_counter = [0]
    digit_of: dict[tuple[int, int], int] = {}

    def closure_digit(a: int, b: int) -> int:
        key = (min(a, b), max(a, b))
        if key not in digit_of:
            digit_counter[0] += 1
            digit_of[key] = digit_counter[0]
        return digit_of[key]

    out: list[str] = []

    def emit(node: int, from_parent: int | None):
        atom = mol.atoms[node]
        closures = sorted(
            (p for p, _ in closure_at.get(node, [])),
            key=lambda p: (emit_pos[p], order[p]),
        )
        chirality = atom.chirality
        if chirality is not Chirality.NONE:
            emission_nbrs: list = []
            if from_parent is not None:
                emission_nbrs.append(from_parent)
            if atom.total_h == 1:
                emission_nbrs.append(-1)
            emission_nbrs.extend(closures)
            emission_nbrs.extend(children[node])
            parity = _permutation_parity(atom.chiral_order, emission_nbrs)
            if parity == 1:
                chirality = (
                    Chirality.CW if chirality is Chirality.CCW else Chirality.CCW
                )
            elif parity == -1 or atom.total_h > 1:
                chirality = Chirality.NONE
        out.append(_atom_token(mol, node, chirality))
        for p in closures:
            bond = mol.bond_between(node, p)
            digit = closure_digit(node, p)
            token = _bond_token(mol, bond) if emit_pos[p] > emit_pos[node] else ""
            out.append(token + (str(digit) if digit < 10 else f"%{digit:02d}"))
        kids = children[node]
        for k, child in enumerate(kids):
            bond = mol.bond_between(node, child)
            btok = _bond_token(mol, bond)
            if k < len(kids) - 1:
                out.append("(")
                out.append(btok)
                emit(child, node)
                out.append(")")
            else:
                out.append(btok)
                emit(child, node)

    emit(start, None)
    return "".join(out)
