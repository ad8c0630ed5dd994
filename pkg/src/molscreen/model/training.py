"""Training drivers: seeded mini-batch loop, early stopping, calibration."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..autodiff import (
    AdamW,
    NonFiniteValue,
    Tape,
    cross_entropy_smoothed,
    huber_loss,
    weighted_sampler,
)
from ..features.graph import FeaturizedGraph
from ..features.scaler import fit_scaler
from .checkpoint import Checkpoint
from .config import ModelConfig, TrainSettings, choose_k, config_for_size_class, size_class_for
from .metrics import metrics_from_confusion
from .network import Model, build_batch, clone_params


class EmptyFold(ValueError):
    pass


class DivergedLoss(FloatingPointError):
    pass


class SingleClassValidation(ValueError):
    pass


@dataclass
class CalibratedThreshold:
    threshold: float
    objective_value: float
    objective: str = "mcc"


def train(
    config: ModelConfig,
    train_graphs: list[FeaturizedGraph],
    train_targets: np.ndarray,
    val_graphs: list[FeaturizedGraph],
    val_targets: np.ndarray,
    settings: TrainSettings = TrainSettings(),
) -> Checkpoint:
    """Train to best validation loss; returns the checkpoint of that model.

    Classification uses the inverse-class-frequency sampler and smoothed
    cross-entropy; regression shuffles uniformly and uses the Huber loss.
    The pooling seed count is set from the training node-count median.
    """
    if not train_graphs:
        raise EmptyFold("empty training fold")
    if not val_graphs:
        raise EmptyFold("empty validation fold")
    train_targets = np.asarray(train_targets)
    val_targets = np.asarray(val_targets)

    global_matrix = np.stack([g.global_features for g in train_graphs])
    scaler = fit_scaler(global_matrix)
    config.atom_dim = train_graphs[0].node_features.shape[1]
    config.bond_dim = train_graphs[0].edge_features.shape[1]
    config.global_dim = len(scaler.kept_columns)
    config.pool_seeds = choose_k(float(np.median([g.n_nodes for g in train_graphs])))

    model = Model(config, scaler, layout_version=train_graphs[0].layout_version)
    optimizer = AdamW(
        model.params,
        learning_rate=settings.learning_rate,
        weight_decay=settings.weight_decay,
    )

    classify = config.task == "classify"
    if classify:
        labels = train_targets.astype(np.int64)
        counts = np.bincount(labels, minlength=2)
        if (counts == 0).any():
            raise EmptyFold("training fold lacks a class")
        class_weights = counts.sum() / (2.0 * counts)
    else:
        class_weights = None

    best_loss = np.inf
    best_params = clone_params(model.params)
    best_epoch = 0
    stale = 0
    log_rows = []

    n = len(train_graphs)
    for epoch in range(settings.max_epochs):
        if classify:
            order = weighted_sampler(labels, seed=config.seed * 100_003 + epoch)
        else:
            order = np.random.default_rng(config.seed * 100_003 + epoch).permutation(n)
        rng = np.random.default_rng(config.seed * 7_919 + epoch)
        epoch_losses = []
        for start in range(0, n, settings.batch_size):
            idx = order[start : start + settings.batch_size]
            graphs = [train_graphs[i] for i in idx]
            batch = build_batch(graphs, scaler)
            try:
                with Tape() as tape:
                    out = model.forward(batch, training=True, rng=rng)
                    if classify:
                        loss = cross_entropy_smoothed(
                            out,
                            train_targets[idx].astype(np.int64),
                            settings.label_smoothing,
                            class_weights,
                        )
                    else:
                        loss = huber_loss(
                            out, train_targets[idx].reshape(-1, 1), settings.huber_beta
                        )
                    tape.backward(loss)
            except NonFiniteValue as exc:
                raise DivergedLoss(f"epoch {epoch}: {exc}") from exc
            optimizer.step()
            optimizer.zero_grad()
            epoch_losses.append(loss.item())

        val_loss, val_metric = _evaluate(
            model, val_graphs, val_targets, settings, class_weights
        )
        log_rows.append((epoch, float(np.mean(epoch_losses)), val_loss, val_metric))
        if val_loss < best_loss - 1e-9:
            best_loss = val_loss
            best_params = clone_params(model.params)
            best_epoch = epoch
            stale = 0
        else:
            stale += 1
            if stale >= settings.patience:
                break

    if settings.log_path:
        with open(settings.log_path, "w", encoding="utf-8") as fh:
            fh.write("epoch,train_loss,val_loss,val_metric\n")
            for row in log_rows:
                fh.write(f"{row[0]},{row[1]:.8f},{row[2]:.8f},{row[3]:.8f}\n")

    best_model = Model(config, scaler, params=best_params, layout_version=model.layout_version)
    threshold = None
    if classify:
        probs = _scores_batched(best_model, val_graphs, settings.batch_size)
        calibrated = calibrate_threshold(probs, val_targets.astype(np.int64))
        threshold = calibrated.threshold
    metadata = {
        "seed": config.seed,
        "task": config.task,
        "epochs_run": len(log_rows),
        "best_epoch": best_epoch,
        "best_val_loss": best_loss,
        "n_train": len(train_graphs),
        "n_val": len(val_graphs),
    }
    return Checkpoint.from_model(best_model, threshold=threshold, metadata=metadata)


def _scores_batched(model: Model, graphs, batch_size: int) -> np.ndarray:
    chunks = [
        model.predict_scores(graphs[i : i + batch_size])
        for i in range(0, len(graphs), batch_size)
    ]
    return np.concatenate(chunks)


def _evaluate(model, graphs, targets, settings, class_weights):
    losses = []
    correct = 0
    sq_err = 0.0
    for start in range(0, len(graphs), settings.batch_size):
        chunk = graphs[start : start + settings.batch_size]
        t = targets[start : start + settings.batch_size]
        batch = build_batch(chunk, model.scaler)
        out = model.forward(batch)
        if model.config.task == "classify":
            loss = cross_entropy_smoothed(
                out, t.astype(np.int64), settings.label_smoothing, class_weights
            )
            correct += int((out.data.argmax(axis=1) == t).sum())
        else:
            loss = huber_loss(out, t.reshape(-1, 1), settings.huber_beta)
            sq_err += float(((out.data[:, 0] - t) ** 2).sum())
        losses.append(loss.item() * len(chunk))
    val_loss = sum(losses) / len(graphs)
    if model.config.task == "classify":
        metric = correct / len(graphs)
    else:
        metric = float(np.sqrt(sq_err / len(graphs)))
    return val_loss, metric


def calibrate_threshold(scores: np.ndarray, labels: np.ndarray) -> CalibratedThreshold:
    """Scan every distinct validation score; keep the MCC maximiser.

    Ties resolve to the lower threshold.  A prediction is positive when its
    score >= threshold.
    """
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if len(set(labels.tolist())) < 2:
        raise SingleClassValidation("validation fold lacks a class")
    best_t = None
    best_mcc = -np.inf
    for t in np.unique(scores):
        predicted = scores >= t
        tp = int((predicted & (labels == 1)).sum())
        tn = int((~predicted & (labels == 0)).sum())
        fp = int((predicted & (labels == 0)).sum())
        fn = int((~predicted & (labels == 1)).sum())
        mcc = metrics_from_confusion(tn, fp, fn, tp)["mcc"]
        if mcc > best_mcc + 1e-12:
            best_mcc = mcc
            best_t = float(t)
    return CalibratedThreshold(threshold=best_t, objective_value=best_mcc)


def train_per_cell_line(
    per_line: dict[str, tuple[list[FeaturizedGraph], np.ndarray, list[str]]],
    seed: int = 0,
    settings: TrainSettings = TrainSettings(),
    arch_overrides: dict | None = None,
) -> dict[str, Checkpoint]:
    """One regression model per cell line; the reduced architecture is used
    for lines under the entry-count cutoff.

    per_line maps cell line -> (graphs, targets, fold labels) where fold
    labels are train/val/test per entry (test entries are ignored here).
    """
    checkpoints: dict[str, Checkpoint] = {}
    for line in sorted(per_line):
        graphs, targets, folds = per_line[line]
        targets = np.asarray(targets, dtype=np.float64)
        size_class = size_class_for(len(graphs))
        config = config_for_size_class(
            size_class, "regress", seed=seed, **(arch_overrides or {})
        )
        tr = [i for i, f in enumerate(folds) if f == "train"]
        va = [i for i, f in enumerate(folds) if f == "val"]
        checkpoints[line] = train(
            config,
            [graphs[i] for i in tr],
            targets[tr],
            [graphs[i] for i in va],
            targets[va],
            settings,
        )
        checkpoints[line].metadata["cell_line"] = line
        checkpoints[line].metadata["n_entries"] = len(graphs)
    return checkpoints
