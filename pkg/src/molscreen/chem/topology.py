"""Topological (bond-count) distances between heavy atoms."""

from __future__ import annotations

from collections import deque

import numpy as np

from .mol import Molecule


def topological_distances(mol: Molecule) -> np.ndarray:
    """All-pairs shortest-path bond counts over heavy atoms.

    Rows/columns follow mol.heavy_indices() order; symmetric, zero diagonal.
    """
    heavy = mol.heavy_indices()
    pos = {a: k for k, a in enumerate(heavy)}
    n = len(heavy)
    dist = np.full((n, n), -1, dtype=np.int64)
    for k, start in enumerate(heavy):
        dist[k, k] = 0
        seen = {start: 0}
        queue = deque([start])
        while queue:
            node = queue.popleft()
            for nbr, _ in mol.neighbors(node):
                if nbr not in seen:
                    seen[nbr] = seen[node] + 1
                    queue.append(nbr)
                    if nbr in pos:
                        dist[k, pos[nbr]] = seen[nbr]
    return dist
