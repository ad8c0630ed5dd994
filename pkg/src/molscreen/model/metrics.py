"""Classification and regression evaluation metrics."""

from __future__ import annotations

import math

import numpy as np


class DegenerateLabels(ValueError):
    pass


class ConstantInput(ValueError):
    pass


def metrics_from_confusion(tn: int, fp: int, fn: int, tp: int) -> dict[str, float]:
    total = tn + fp + fn + tp
    accuracy = (tp + tn) / total if total else 0.0
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    denom = math.sqrt((tp + fp) * (tp + fn) * (tn + fp) * (tn + fn))
    mcc = (tp * tn - fp * fn) / denom if denom else 0.0
    return {
        "accuracy": accuracy,
        "precision": precision,
        "recall": recall,
        "mcc": mcc,
    }


def auc_score(scores: np.ndarray, labels: np.ndarray) -> float:
    """Rank-statistic AUC with ties averaged (Mann-Whitney U)."""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    n_pos = int(labels.sum())
    n_neg = labels.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise DegenerateLabels("AUC needs both classes present")
    order = np.argsort(scores, kind="mergesort")
    ranks = np.empty(scores.size, dtype=np.float64)
    sorted_scores = scores[order]
    i = 0
    while i < scores.size:
        j = i
        while j + 1 < scores.size and sorted_scores[j + 1] == sorted_scores[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    rank_sum_pos = ranks[labels == 1].sum()
    return (rank_sum_pos - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


def compute_classification_metrics(
    predictions: np.ndarray, labels: np.ndarray, threshold: float = 0.5
) -> dict[str, float]:
    """accuracy/AUC/precision/recall/MCC from scores and binary labels.

    A prediction counts positive when its score >= threshold.
    """
    scores = np.asarray(predictions, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if labels.size == 0 or len(set(labels.tolist())) < 2:
        raise DegenerateLabels("need at least one example of each class")
    predicted = (scores >= threshold).astype(np.int64)
    tp = int(((predicted == 1) & (labels == 1)).sum())
    tn = int(((predicted == 0) & (labels == 0)).sum())
    fp = int(((predicted == 1) & (labels == 0)).sum())
    fn = int(((predicted == 0) & (labels == 1)).sum())
    out = metrics_from_confusion(tn, fp, fn, tp)
    out["auc"] = auc_score(scores, labels)
    return out


def compute_regression_metrics(
    predictions: np.ndarray, targets: np.ndarray
) -> dict[str, float]:
    """Pearson correlation and root mean squared error."""
    p = np.asarray(predictions, dtype=np.float64)
    t = np.asarray(targets, dtype=np.float64)
    if p.size != t.size or p.size < 2:
        raise ConstantInput("need >= 2 aligned prediction/target pairs")
    if np.ptp(t) == 0 or np.ptp(p) == 0:
        raise ConstantInput("constant predictions or targets: correlation undefined")
    pc = p - p.mean()
    tc = t - t.mean()
    r = float((pc * tc).sum() / math.sqrt((pc * pc).sum() * (tc * tc).sum()))
    rmse = float(np.sqrt(((p - t) ** 2).mean()))
    return {"pearson_r": r, "rmse": rmse}
