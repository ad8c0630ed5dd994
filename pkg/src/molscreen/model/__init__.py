"""Graph attention model, training, metrics, and checkpointing."""

from .checkpoint import (
    Checkpoint,
    CorruptFile,
    VersionMismatch,
    load_checkpoint,
    save_checkpoint,
)
from .config import (
    SIZE_CLASS_CUTOFF,
    ModelConfig,
    TrainSettings,
    choose_k,
    config_for_size_class,
    size_class_for,
)
from .metrics import (
    ConstantInput,
    DegenerateLabels,
    auc_score,
    compute_classification_metrics,
    compute_regression_metrics,
    metrics_from_confusion,
)
from .network import (
    EmptyGraph,
    GraphBatch,
    LayoutVersionMismatch,
    Model,
    build_batch,
    clone_params,
)
from .training import (
    CalibratedThreshold,
    DivergedLoss,
    EmptyFold,
    SingleClassValidation,
    calibrate_threshold,
    train,
    train_per_cell_line,
)

__all__ = [
    "CalibratedThreshold",
    "Checkpoint",
    "ConstantInput",
    "CorruptFile",
    "DegenerateLabels",
    "DivergedLoss",
    "EmptyFold",
    "EmptyGraph",
    "GraphBatch",
    "LayoutVersionMismatch",
    "Model",
    "ModelConfig",
    "SIZE_CLASS_CUTOFF",
    "SingleClassValidation",
    "TrainSettings",
    "VersionMismatch",
    "auc_score",
    "build_batch",
    "calibrate_threshold",
    "choose_k",
    "clone_params",
    "compute_classification_metrics",
    "compute_regression_metrics",
    "config_for_size_class",
    "load_checkpoint",
    "metrics_from_confusion",
    "save_checkpoint",
    "size_class_for",
    "train",
    "train_per_cell_line",
]
