"""Ring perception: smallest set of smallest rings plus ring-membership flags."""

from __future__ import annotations

from collections import deque

from .mol import Molecule


def _bridges(mol: Molecule) -> set[int]:
    """Bond indices whose removal disconnects the graph (not in any cycle)."""
    n = mol.n_atoms
    adj = mol.adjacency()
    visited = [False] * n
    disc = [0] * n
    low = [0] * n
    bridges: set[int] = set()
    timer = 0
    for root in range(n):
        if visited[root]:
            continue
        # Iterative DFS; stack holds (node, parent bond, neighbour iterator).
        stack = [(root, -1, iter(adj[root]))]
        visited[root] = True
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            node, pbond, it = stack[-1]
            advanced = False
            for bi in it:
                if bi == pbond:
                    continue
                nxt = mol.bonds[bi].other(node)
                if not visited[nxt]:
                    visited[nxt] = True
                    disc[nxt] = low[nxt] = timer
                    timer += 1
                    stack.append((nxt, bi, iter(adj[nxt])))
                    advanced = True
                    break
                low[node] = min(low[node], disc[nxt])
            if not advanced:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[node])
                    if low[node] > disc[parent]:
                        bridges.add(pbond)
        # low values propagate via the pop step above
    return bridges


def _shortest_cycle_through(mol: Molecule, bond_index: int) -> list[int] | None:
    """Smallest atom cycle containing the bond, via BFS avoiding that bond."""
    bond = mol.bonds[bond_index]
    start, goal = bond.a, bond.b
    prev = {start: (-1, -1)}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if node == goal:
            break
        for bi in mol.adjacency()[node]:
            if bi == bond_index:
                continue
            nxt = mol.bonds[bi].other(node)
            if nxt not in prev:
                prev[nxt] = (node, bi)
                queue.append(nxt)
    if goal not in prev:
        return None
    path = [goal]
    node = goal
    while node != start:
        node = prev[node][0]
        path.append(node)
    path.reverse()
    return path  # cycle closes with the avoided bond


def _cycle_bond_mask(mol: Molecule, cycle: list[int], bond_index: dict) -> int:
    mask = 0
    k = len(cycle)
    for i in range(k):
        a, b = cycle[i], cycle[(i + 1) % k]
        mask |= 1 << bond_index[(min(a, b), max(a, b))]
    return mask


def perceive_rings(mol: Molecule) -> list[list[int]]:
    """Compute the SSSR, set in_ring/same_ring flags, and store mol.rings.

    Candidate rings are the shortest cycles through each non-bridge bond;
    a linearly independent subset (GF(2) over bond sets) of size m - n + c
    is kept, then extended so every ring bond is covered by some ring.
    """
    bridges = _bridges(mol)
    ring_bonds = [bi for bi in range(mol.n_bonds) if bi not in bridges]
    bond_index = {
        (min(b.a, b.b), max(b.a, b.b)): i for i, b in enumerate(mol.bonds)
    }

    candidates: list[tuple[list[int], int]] = []
    seen_masks: set[int] = set()
    for bi in ring_bonds:
        cycle = _shortest_cycle_through(mol, bi)
        if cycle is None:
            continue
        mask = _cycle_bond_mask(mol, cycle, bond_index)
        if mask not in seen_masks:
            seen_masks.add(mask)
            candidates.append((cycle, mask))
    candidates.sort(key=lambda c: (len(c[0]), sorted(c[0])))

    n_components = _count_components(mol)
    rank_needed = mol.n_bonds - mol.n_atoms + n_components

    basis: list[int] = []
    rings: list[list[int]] = []
    chosen_masks: list[int] = []
    for cycle, mask in candidates:
        if len(rings) >= rank_needed:
            break
        reduced = mask
        for b in basis:
            reduced = min(reduced, reduced ^ b)
        if reduced:
            basis.append(reduced)
            basis.sort(reverse=True)
            rings.append(cycle)
            chosen_masks.append(mask)

    covered = 0
    for mask in chosen_masks:
        covered |= mask
    for cycle, mask in candidates:
        if mask & ~covered:
            rings.append(cycle)
            chosen_masks.append(mask)
            covered |= mask

    for atom in mol.atoms:
        atom.in_ring = False
    for bond in mol.bonds:
        bond.same_ring = False
    for bi in ring_bonds:
        bond = mol.bonds[bi]
        bond.same_ring = True
        mol.atoms[bond.a].in_ring = True
        mol.atoms[bond.b].in_ring = True

    mol.rings = rings
    return rings


def _count_components(mol: Molecule) -> int:
    n = mol.n_atoms
    seen = [False] * n
    count = 0
    for root in range(n):
        if seen[root]:
            continue
        count += 1
        queue = deque([root])
        seen[root] = True
        while queue:
            node = queue.popleft()
            for nbr, _ in mol.neighbors(node):
                if not seen[nbr]:
                    seen[nbr] = True
                    queue.append(nbr)
    return count
