"""Hierarchical density clustering on a precomputed distance matrix.

The full procedure: core distances at k = min_cluster_size, mutual
reachability, single-linkage minimum spanning tree, condensed tree, and
flat cluster extraction by excess-of-mass stability.  Points outside every
selected cluster are labelled -1.
"""

from __future__ import annotations

import numpy as np


class MatrixAsymmetric(ValueError):
    pass


_EPS = 1e-12


def density_cluster(distance_matrix: np.ndarray, min_cluster_size: int = 5) -> np.ndarray:
    """Cluster labels (0..k-1) per point, -1 for noise."""
    dist = np.asarray(distance_matrix, dtype=np.float64)
    if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
        raise MatrixAsymmetric(f"need a square matrix, got {dist.shape}")
    if not np.allclose(dist, dist.T, atol=1e-9):
        raise MatrixAsymmetric("distance matrix is not symmetric")
    if np.abs(np.diag(dist)).max(initial=0.0) > 1e-9:
        raise MatrixAsymmetric("diagonal must be zero")
    if min_cluster_size < 2:
        raise ValueError("min_cluster_size must be >= 2")

    n = dist.shape[0]
    if n < min_cluster_size:
        return np.full(n, -1, dtype=np.int64)

    # core distance: k-th nearest other point, k = min_cluster_size
    k = min_cluster_size
    sorted_rows = np.sort(dist, axis=1)  # column 0 is the self-distance 0
    core = sorted_rows[:, k] if k < n else np.full(n, np.inf)

    mreach = np.maximum(dist, np.maximum(core[:, None], core[None, :]))
    np.fill_diagonal(mreach, 0.0)

    mst_edges = _prim_mst(mreach)
    mst_edges.sort(key=lambda e: e[0])

    merges = _single_linkage(n, mst_edges)
    entries, birth, children_of, cluster_sizes = _condense(n, merges, min_cluster_size)
    selected = _excess_of_mass(entries, birth, children_of)
    return _labels(n, entries, selected)


def _prim_mst(weights: np.ndarray) -> list[tuple[float, int, int]]:
    n = weights.shape[0]
    in_tree = np.zeros(n, dtype=bool)
    best = np.full(n, np.inf)
    best_from = np.zeros(n, dtype=np.int64)
    in_tree[0] = True
    best = weights[0].copy()
    best_from[:] = 0
    edges = []
    for _ in range(n - 1):
        candidates = np.where(in_tree, np.inf, best)
        nxt = int(np.argmin(candidates))
        edges.append((float(best[nxt]), int(best_from[nxt]), nxt))
        in_tree[nxt] = True
        closer = weights[nxt] < best
        best[closer] = weights[nxt][closer]
        best_from[closer] = nxt
    return edges


def _single_linkage(n: int, edges: list[tuple[float, int, int]]):
    """Union-find merge sequence: (left node, right node, weight, size)."""
    parent = list(range(2 * n - 1))
    node_of = list(range(2 * n - 1))
    size = [1] * (2 * n - 1)

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    merges = []
    next_id = n
    for w, a, b in edges:
        ra, rb = find(a), find(b)
        na, nb = node_of[ra], node_of[rb]
        merges.append((na, nb, w, size[na] + size[nb]))
        parent[ra] = next_id
        parent[rb] = next_id
        node_of[next_id] = next_id
        size[next_id] = size[na] + size[nb]
        next_id += 1
    return merges


def _dendro_leaves(merges, node: int, n: int) -> list[int]:
    out = []
    stack = [node]
    while stack:
        cur = stack.pop()
        if cur < n:
            out.append(cur)
        else:
            left, right, _, _ = merges[cur - n]
            stack.extend((left, right))
    return out


def _condense(n: int, merges, min_cluster_size: int):
    """Condensed tree entries (cluster, child, lambda, size).

    Cluster ids are negative-free ints starting at 0 for the root; point
    children are encoded by their non-negative index with size 1, child
    clusters by ("c", id).
    """
    entries: list[tuple[int, object, float, int]] = []
    birth = {0: 0.0}
    children_of: dict[int, list[int]] = {0: []}
    cluster_sizes = {0: n}
    if not merges:
        return entries, birth, children_of, cluster_sizes

    root = n + len(merges) - 1
    next_cluster = 1
    stack = [(root, 0)]
    while stack:
        node, cluster = stack.pop()
        if node < n:
            # a bare point directly under a cluster boundary
            entries.append((cluster, node, birth[cluster], 1))
            continue
        left, right, w, _ = merges[node - n]
        lam = 1.0 / max(w, _EPS)
        lsize = 1 if left < n else merges[left - n][3]
        rsize = 1 if right < n else merges[right - n][3]
        if lsize >= min_cluster_size and rsize >= min_cluster_size:
            for child, csize in ((left, lsize), (right, rsize)):
                cid = next_cluster
                next_cluster += 1
                entries.append((cluster, ("c", cid), lam, csize))
                birth[cid] = lam
                children_of.setdefault(cluster, []).append(cid)
                children_of.setdefault(cid, [])
                cluster_sizes[cid] = csize
                stack.append((child, cid))
        else:
            for child, csize in ((left, lsize), (right, rsize)):
                if csize >= min_cluster_size:
                    stack.append((child, cluster))
                else:
                    for leaf in _dendro_leaves(merges, child, n):
                        entries.append((cluster, leaf, lam, 1))
    return entries, birth, children_of, cluster_sizes


def _excess_of_mass(entries, birth, children_of) -> set[int]:
    stability: dict[int, float] = {c: 0.0 for c in birth}
    for cluster, child, lam, size in entries:
        stability[cluster] += (lam - birth[cluster]) * size

    selected: dict[int, bool] = {}
    for cluster in sorted(birth, reverse=True):
        kids = children_of.get(cluster, [])
        subtree = sum(stability[c] for c in kids)
        if cluster == 0:
            selected[0] = False  # the root is never a flat cluster
            continue
        if kids and subtree > stability[cluster]:
            stability[cluster] = subtree
            selected[cluster] = False
        else:
            selected[cluster] = True
            to_clear = list(kids)
            while to_clear:
                c = to_clear.pop()
                selected[c] = False
                to_clear.extend(children_of.get(c, []))
    return {c for c, sel in selected.items() if sel}


def _labels(n: int, entries, selected: set[int]) -> np.ndarray:
    parent_of: dict[int, int] = {}
    point_cluster: dict[int, int] = {}
    for cluster, child, _, _ in entries:
        if isinstance(child, tuple):
            parent_of[child[1]] = cluster
        else:
            point_cluster[child] = cluster

    remap = {cid: i for i, cid in enumerate(sorted(selected))}
    labels = np.full(n, -1, dtype=np.int64)
    for point, cluster in point_cluster.items():
        cur = cluster
        while cur is not None:
            if cur in selected:
                labels[point] = remap[cur]
                break
            cur = parent_of.get(cur)
    return labels
