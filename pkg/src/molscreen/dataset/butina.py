"""Butina sphere-exclusion clustering and near-duplicate removal."""

from __future__ import annotations

from ..features.fingerprint import Fingerprint, tanimoto


def butina_cluster(fps: list[Fingerprint], threshold: float) -> list[list[int]]:
    """Classic sphere exclusion on a similarity threshold.

    Candidates are ranked once by neighbour count (ties by input index);
    the largest becomes a centroid and claims its unassigned neighbours.
    The centroid is the first index of each returned cluster.
    """
    if not 0 < threshold <= 1:
        raise ValueError(f"threshold must be in (0, 1], got {threshold}")
    n = len(fps)
    neighbours: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if tanimoto(fps[i], fps[j]) >= threshold:
                neighbours[i].append(j)
                neighbours[j].append(i)

    order = sorted(range(n), key=lambda i: (-len(neighbours[i]), i))
    assigned = [False] * n
    clusters: list[list[int]] = []
    for centroid in order:
        if assigned[centroid]:
            continue
        members = [centroid] + [j for j in neighbours[centroid] if not assigned[j]]
        for j in members:
            assigned[j] = True
        clusters.append(members)
    return clusters


def exclude_near_duplicates(
    smiles: list[str], fps: list[Fingerprint], threshold: float = 0.95
) -> tuple[list[int], list[tuple[str, str]]]:
    """Keep one representative per near-duplicate cluster.

    The representative is the lexicographically smallest canonical SMILES
    in each cluster.  Clustering repeats on the survivors until no kept
    pair reaches the threshold, so the post-condition holds regardless of
    which member each cluster kept.

    Returns (kept indices into the input, dropped (smiles, kept_for) pairs).
    """
    active = list(range(len(smiles)))
    dropped: list[tuple[str, str]] = []
    while True:
        clusters = butina_cluster([fps[i] for i in active], threshold)
        if all(len(c) == 1 for c in clusters):
            break
        survivors = []
        for cluster in clusters:
            members = [active[k] for k in cluster]
            keep = min(members, key=lambda i: smiles[i])
            survivors.append(keep)
            for i in members:
                if i != keep:
                    dropped.append((smiles[i], smiles[keep]))
        active = sorted(survivors)
    return active, dropped
