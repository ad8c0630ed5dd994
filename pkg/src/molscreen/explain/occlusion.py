"""Heavy-atom-group occlusion attribution and faithfulness evaluation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..features.graph import FeaturizedGraph
from ..model.checkpoint import Checkpoint
from .scoring import EnsembleScorer


class FractionOutOfRange(ValueError):
    pass


DISPLAY_FRACTION = 0.20
FAITHFULNESS_FRACTIONS = (0.05, 0.10, 0.20, 0.30)


@dataclass
class AttributionReport:
    smiles: str
    base_score: float
    base_probability: float | None
    drops: dict[int, float]              # heavy atom -> score drop
    importances: dict[int, float]        # max(0, drop)
    normalized: dict[int, float]         # importances / in-molecule max
    top_set: list[int]                   # top display-fraction heavy atoms
    display_fraction: float
    all_zero: bool
    ensemble_size: int

    def to_dict(self) -> dict:
        return {
            "smiles": self.smiles,
            "base_score": self.base_score,
            "base_probability": self.base_probability,
            "atoms": [
                {
                    "atom": h,
                    "drop": self.drops[h],
                    "importance": self.importances[h],
                    "normalized": self.normalized[h],
                }
                for h in sorted(self.drops)
            ],
            "top_set": self.top_set,
            "display_fraction": self.display_fraction,
            "all_zero": self.all_zero,
            "ensemble_size": self.ensemble_size,
        }


@dataclass
class FaithfulnessReport:
    smiles: str
    base_score: float
    base_probability: float | None
    fractions: list[float]
    top_drop: dict[float, float]
    random_mean: dict[float, float]
    random_std: dict[float, float]
    repeats: int
    seed: int

    def to_dict(self) -> dict:
        return {
            "smiles": self.smiles,
            "base_score": self.base_score,
            "base_probability": self.base_probability,
            "repeats": self.repeats,
            "seed": self.seed,
            "fractions": [
                {
                    "fraction": f,
                    "top_drop": self.top_drop[f],
                    "random_mean": self.random_mean[f],
                    "random_std": self.random_std[f],
                }
                for f in self.fractions
            ],
        }


def _masked_variant(graph: FeaturizedGraph, groups: list[int]) -> np.ndarray:
    """Zero the node-feature rows of the given heavy-atom groups.

    Topology, edge features and global features stay untouched.
    """
    masked = graph.node_features.copy()
    for h in groups:
        masked[graph.h_groups[h]] = 0.0
    return masked


def _as_scorer(checkpoints) -> object:
    if hasattr(checkpoints, "scores"):
        return checkpoints
    if isinstance(checkpoints, Checkpoint):
        checkpoints = [checkpoints]
    return EnsembleScorer(list(checkpoints))


def occlusion_attribution(
    checkpoints,
    graph: FeaturizedGraph,
    display_fraction: float = DISPLAY_FRACTION,
) -> AttributionReport:
    """Score drop per heavy-atom group, clamped at zero and max-normalised."""
    scorer = _as_scorer(checkpoints)
    heavy = sorted(graph.h_groups)
    base_score, base_prob = scorer.base(graph)
    variants = [_masked_variant(graph, [h]) for h in heavy]
    masked_scores = scorer.scores(graph, variants)

    drops = {h: float(base_score - masked_scores[i]) for i, h in enumerate(heavy)}
    importances = {h: max(0.0, d) for h, d in drops.items()}
    peak = max(importances.values()) if importances else 0.0
    all_zero = peak <= 0.0
    normalized = {
        h: (0.0 if all_zero else imp / peak) for h, imp in importances.items()
    }
    k = math.ceil(display_fraction * len(heavy))
    ranked = sorted(heavy, key=lambda h: (-normalized[h], h))
    top_set = [] if all_zero else ranked[:k]
    ensemble = len(getattr(scorer, "models", [None]))
    return AttributionReport(
        smiles=graph.smiles,
        base_score=base_score,
        base_probability=base_prob,
        drops=drops,
        importances=importances,
        normalized=normalized,
        top_set=top_set,
        display_fraction=display_fraction,
        all_zero=all_zero,
        ensemble_size=ensemble,
    )


def faithfulness_test(
    checkpoints,
    graph: FeaturizedGraph,
    fractions=FAITHFULNESS_FRACTIONS,
    repeats: int = 20,
    seed: int = 0,
    attribution: AttributionReport | None = None,
) -> FaithfulnessReport:
    """Top-k mask drop vs the mean/std of equally sized random masks."""
    for f in fractions:
        if not 0.0 < f <= 1.0:
            raise FractionOutOfRange(f"fraction {f} outside (0, 1]")
    if repeats < 2:
        raise ValueError("need at least 2 random repeats")
    scorer = _as_scorer(checkpoints)
    if attribution is None:
        attribution = occlusion_attribution(scorer, graph)
    heavy = sorted(graph.h_groups)
    base_score = attribution.base_score
    ranked = sorted(heavy, key=lambda h: (-attribution.importances[h], h))

    rng = np.random.default_rng(seed)
    variants: list[np.ndarray] = []
    jobs: list[tuple[float, str]] = []
    for f in fractions:
        k = math.ceil(f * len(heavy))
        variants.append(_masked_variant(graph, ranked[:k]))
        jobs.append((f, "top"))
        for _ in range(repeats):
            chosen = rng.choice(len(heavy), size=k, replace=False)
            variants.append(_masked_variant(graph, [heavy[c] for c in chosen]))
            jobs.append((f, "random"))
    scores = scorer.scores(graph, variants)

    top_drop: dict[float, float] = {}
    random_drops: dict[float, list[float]] = {f: [] for f in fractions}
    for (f, kind), s in zip(jobs, scores):
        drop = float(base_score - s)
        if kind == "top":
            top_drop[f] = drop
        else:
            random_drops[f].append(drop)
    return FaithfulnessReport(
        smiles=graph.smiles,
        base_score=base_score,
        base_probability=attribution.base_probability,
        fractions=list(fractions),
        top_drop=top_drop,
        random_mean={f: float(np.mean(v)) for f, v in random_drops.items()},
        random_std={f: float(np.std(v, ddof=1)) for f, v in random_drops.items()},
        repeats=repeats,
        seed=seed,
    )
