"""Leakage-safe fold assignment and cross-fold similarity auditing."""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass, field

import numpy as np

from ..features.fingerprint import Fingerprint, tanimoto

FOLDS = ("train", "val", "test")


class RatiosDontSumToOne(ValueError):
    pass


@dataclass
class SimilarityAudit:
    """Per test compound: max Tanimoto to any train compound."""

    max_similarity: dict[str, float]
    quantiles: dict[str, float] = field(default_factory=dict)
    histogram_edges: list[float] = field(default_factory=list)
    histogram_counts: list[int] = field(default_factory=list)


@dataclass
class DatasetSplit:
    fold: dict[str, str]                  # canonical smiles -> train/val/test
    method: str                           # random | butina | density
    seed: int
    ratios: tuple[float, float, float]
    cluster_id: dict[str, int] = field(default_factory=dict)
    audit: SimilarityAudit | None = None

    def members(self, fold: str) -> list[str]:
        return sorted(s for s, f in self.fold.items() if f == fold)


def _check_ratios(ratios):
    if len(ratios) != 3 or abs(sum(ratios) - 1.0) > 1e-9 or min(ratios) < 0:
        raise RatiosDontSumToOne(f"ratios must be 3 non-negatives summing to 1: {ratios}")


def assign_folds(
    clusters: list[list[str]],
    ratios: tuple[float, float, float] = (0.70, 0.15, 0.15),
    seed: int = 0,
    method: str = "density",
) -> DatasetSplit:
    """Greedy cluster-level assignment; no cluster ever spans two folds.

    Clusters are shuffled with the seeded generator, then each goes to the
    fold currently furthest below its target count.
    """
    _check_ratios(ratios)
    clusters = [sorted(c) for c in clusters]
    clusters.sort(key=lambda c: c[0])  # input-order independence
    total = sum(len(c) for c in clusters)
    if total == 0:
        return DatasetSplit({}, method, seed, tuple(ratios))
    largest = max(len(c) for c in clusters)
    if largest > max(ratios) * total:
        warnings.warn(
            f"largest cluster ({largest} of {total}) exceeds every fold target; "
            "the split is degenerate",
            stacklevel=2,
        )

    rng = np.random.default_rng(seed)
    order = rng.permutation(len(clusters))
    targets = np.array(ratios) * total
    counts = np.zeros(3)
    fold_map: dict[str, str] = {}
    cluster_map: dict[str, int] = {}
    for cid, idx in enumerate(order):
        members = clusters[idx]
        deficits = targets - counts
        fold = int(np.argmax(deficits))
        counts[fold] += len(members)
        for smiles in members:
            fold_map[smiles] = FOLDS[fold]
            cluster_map[smiles] = cid
    return DatasetSplit(fold_map, method, seed, tuple(ratios), cluster_map)


def random_split(
    compounds: list[str],
    ratios: tuple[float, float, float] = (0.70, 0.15, 0.15),
    seed: int = 0,
) -> DatasetSplit:
    """Uniform per-compound assignment; the audit baseline."""
    _check_ratios(ratios)
    rng = np.random.default_rng(seed)
    fold_map: dict[str, str] = {}
    for smiles in sorted(set(compounds)):
        fold_map[smiles] = FOLDS[int(rng.choice(3, p=ratios))]
    return DatasetSplit(fold_map, "random", seed, tuple(ratios))


def audit_split(split: DatasetSplit, fps: dict[str, Fingerprint]) -> SimilarityAudit:
    """Max train-similarity per test compound, plus quantiles and histogram."""
    train = [fps[s] for s in split.members("train")]
    values: dict[str, float] = {}
    for smiles in split.members("test"):
        fp = fps[smiles]
        values[smiles] = max((tanimoto(fp, t) for t in train), default=0.0)
    arr = np.array(sorted(values.values())) if values else np.zeros(0)
    quantiles = {}
    if arr.size:
        for name, q in (("min", 0), ("q25", 25), ("median", 50), ("q75", 75), ("max", 100)):
            quantiles[name] = float(np.percentile(arr, q))
    edges = np.linspace(0.0, 1.0, 21)
    counts = np.histogram(arr, bins=edges)[0] if arr.size else np.zeros(20, dtype=int)
    audit = SimilarityAudit(
        max_similarity=values,
        quantiles=quantiles,
        histogram_edges=[float(e) for e in edges],
        histogram_counts=[int(c) for c in counts],
    )
    split.audit = audit
    return audit


def write_split_manifest(split: DatasetSplit, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["canonical_smiles", "fold", "cluster_id", "method", "seed"])
        for smiles in sorted(split.fold):
            writer.writerow(
                [
                    smiles,
                    split.fold[smiles],
                    split.cluster_id.get(smiles, ""),
                    split.method,
                    split.seed,
                ]
            )


def read_split_manifest(path) -> DatasetSplit:
    fold_map: dict[str, str] = {}
    cluster_map: dict[str, int] = {}
    method = "random"
    seed = 0
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            fold_map[row["canonical_smiles"]] = row["fold"]
            if row.get("cluster_id"):
                cluster_map[row["canonical_smiles"]] = int(row["cluster_id"])
            method = row.get("method", method)
            seed = int(row.get("seed", seed) or 0)
    return DatasetSplit(fold_map, method, seed, (0.0, 0.0, 0.0), cluster_map)


def write_audit(audit: SimilarityAudit, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["canonical_smiles", "max_cross_fold_similarity"])
        for smiles in sorted(audit.max_similarity):
            writer.writerow([smiles, f"{audit.max_similarity[smiles]:.6f}"])
