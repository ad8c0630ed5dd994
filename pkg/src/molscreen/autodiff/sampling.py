"""Class-balanced example sampling for imbalanced training sets."""

from __future__ import annotations

import numpy as np


class EmptyClass(ValueError):
    pass


def weighted_sampler(
    labels: np.ndarray,
    seed: int,
    n_classes: int | None = None,
    n_draws: int | None = None,
) -> np.ndarray:
    """Indices drawn with replacement, probability 1/count(class of i).

    Expected per-class share is uniform across the declared classes.
    Raises EmptyClass when a declared class has no examples.
    """
    labels = np.asarray(labels, dtype=np.int64)
    if labels.size == 0:
        raise EmptyClass("no examples to sample from")
    if n_classes is None:
        n_classes = int(labels.max()) + 1
    counts = np.bincount(labels, minlength=n_classes)
    empty = np.flatnonzero(counts[:n_classes] == 0)
    if empty.size:
        raise EmptyClass(f"classes {empty.tolist()} have no examples")
    weights = 1.0 / counts[labels]
    probabilities = weights / weights.sum()
    rng = np.random.default_rng(seed)
    size = labels.size if n_draws is None else n_draws
    return rng.choice(labels.size, size=size, replace=True, p=probabilities)
