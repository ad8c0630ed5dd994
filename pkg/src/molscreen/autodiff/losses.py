"""Training losses: label-smoothed cross-entropy and Huber regression loss."""

from __future__ import annotations

import numpy as np

from .tensor import Tensor, _emit, _accumulate


class BadEpsilon(ValueError):
    pass


class BadBeta(ValueError):
    pass


def cross_entropy_smoothed(
    logits: Tensor,
    targets: np.ndarray,
    epsilon: float = 0.0,
    class_weights: np.ndarray | None = None,
) -> Tensor:
    """Mean of -sum_c w_c q_c log softmax(z)_c with q the smoothed target.

    q = (1 - epsilon) * onehot + epsilon / C.
    """
    if not 0.0 <= epsilon < 0.5:
        raise BadEpsilon(f"label smoothing must be in [0, 0.5), got {epsilon}")
    z = logits.data
    if z.ndim != 2 or z.shape[1] < 2:
        raise ValueError(f"logits must be (batch, classes>=2), got {z.shape}")
    batch, n_classes = z.shape
    targets = np.asarray(targets, dtype=np.int64)
    w = (
        np.ones(n_classes)
        if class_weights is None
        else np.asarray(class_weights, dtype=np.float64)
    )

    shifted = z - z.max(axis=1, keepdims=True)
    log_probs = shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))
    probs = np.exp(log_probs)

    q = np.full((batch, n_classes), epsilon / n_classes)
    q[np.arange(batch), targets] += 1.0 - epsilon
    wq = w[None, :] * q
    loss = -(wq * log_probs).sum(axis=1).mean()

    def backward(g):
        total_w = wq.sum(axis=1, keepdims=True)
        grad = (probs * total_w - wq) * (g / batch)
        _accumulate(logits, grad)

    return _emit(np.asarray(loss), (logits,), backward)


def huber_loss(pred: Tensor, target: np.ndarray, beta: float = 1.0) -> Tensor:
    """Quadratic inside |e| < beta, linear outside; mean over elements."""
    if beta <= 0:
        raise BadBeta(f"beta must be positive, got {beta}")
    t = np.asarray(target, dtype=np.float64)
    if t.shape != pred.data.shape:
        raise ValueError(f"target shape {t.shape} != pred shape {pred.data.shape}")
    e = pred.data - t
    small = np.abs(e) < beta
    elementwise = np.where(small, 0.5 * e * e / beta, np.abs(e) - 0.5 * beta)
    n = max(pred.data.size, 1)
    loss = elementwise.sum() / n

    def backward(g):
        grad = np.where(small, e / beta, np.sign(e)) * (g / n)
        _accumulate(pred, grad)

    return _emit(np.asarray(loss), (pred,), backward)
