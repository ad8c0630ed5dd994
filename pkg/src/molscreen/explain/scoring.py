"""Scorer abstraction shared by occlusion, integrated gradients and tests.

A scorer turns (graph, node-feature matrix) into a scalar target: the
positive-class logit for classifiers, the raw output for regressors.
Masked variants of one molecule run as a single merged batch.
"""

from __future__ import annotations

import numpy as np

from ..autodiff import Tensor
from ..features.graph import FeaturizedGraph
from ..model.checkpoint import Checkpoint
from ..model.network import LayoutVersionMismatch, build_batch


class EnsembleScorer:
    """Mean target score across one or more checkpoints."""

    def __init__(self, checkpoints: list[Checkpoint]):
        if not checkpoints:
            raise ValueError("need at least one checkpoint")
        self.checkpoints = checkpoints
        self.models = [c.to_model() for c in checkpoints]
        self.task = checkpoints[0].config.task

    def _check(self, graph: FeaturizedGraph):
        for c in self.checkpoints:
            if c.layout_version != graph.layout_version:
                raise LayoutVersionMismatch(
                    f"graph layout {graph.layout_version!r} != checkpoint "
                    f"layout {c.layout_version!r}"
                )

    def scores(self, graph: FeaturizedGraph, variants: list[np.ndarray]) -> np.ndarray:
        """Score each node-feature variant of the same topology."""
        self._check(graph)
        copies = [graph] * len(variants)
        stacked = np.concatenate(variants, axis=0)
        total = np.zeros(len(variants))
        for model in self.models:
            batch = build_batch(copies, model.scaler)
            out = model.forward(batch, node_features=Tensor(stacked)).data
            total += out[:, 1] if model.config.task == "classify" else out[:, 0]
        return total / len(self.models)

    def base(self, graph: FeaturizedGraph) -> tuple[float, float | None]:
        """(score, probability); probability only for classifiers."""
        self._check(graph)
        logits = np.zeros(2 if self.task == "classify" else 1)
        for model in self.models:
            batch = build_batch([graph], model.scaler)
            logits += model.forward(batch).data[0]
        logits /= len(self.models)
        if self.task == "classify":
            shifted = logits - logits.max()
            prob = float(np.exp(shifted[1]) / np.exp(shifted).sum())
            return float(logits[1]), prob
        return float(logits[0]), None


class LinearSurrogate:
    """Score = w . sum of node features + c; exact attribution ground truth."""

    def __init__(self, weights: np.ndarray, offset: float = 0.0):
        self.weights = np.asarray(weights, dtype=np.float64)
        self.offset = float(offset)
        self.task = "regress"

    def scores(self, graph: FeaturizedGraph, variants: list[np.ndarray]) -> np.ndarray:
        return np.array(
            [float(v.sum(axis=0) @ self.weights) + self.offset for v in variants]
        )

    def base(self, graph: FeaturizedGraph) -> tuple[float, float | None]:
        return self.scores(graph, [graph.node_features])[0], None
