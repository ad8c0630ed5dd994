"""Model architecture configuration and the adaptive pooling-seed rule."""

from __future__ import annotations

from dataclasses import dataclass, field, asdict

SIZE_CLASS_CUTOFF = 15_000  # entries below this use the reduced model


def choose_k(median_nodes: float) -> int:
    """Pooling seed count: half the median node count, clamped to [8, 64]."""
    return max(8, min(64, int(0.5 * median_nodes)))


def size_class_for(n_entries: int) -> str:
    return "small" if n_entries < SIZE_CLASS_CUTOFF else "full"


@dataclass
class ModelConfig:
    hidden_dim: int = 128
    n_blocks: int = 2
    n_heads: int = 4
    dropout_p: float = 0.1
    pool_seeds: int = 8
    size_class: str = "small"      # full | small
    task: str = "classify"          # classify | regress
    seed: int = 0
    explicit_h: bool = False
    atom_dim: int = 0               # recorded at build time
    bond_dim: int = 0
    global_dim: int = 0             # standardised global width (post scaler)

    def __post_init__(self):
        if self.hidden_dim % self.n_heads != 0:
            raise ValueError(
                f"hidden_dim {self.hidden_dim} not divisible by n_heads {self.n_heads}"
            )
        if self.task not in ("classify", "regress"):
            raise ValueError(f"unknown task {self.task!r}")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ModelConfig":
        return cls(**d)


def config_for_size_class(
    size_class: str, task: str, seed: int = 0, pool_seeds: int = 8, **overrides
) -> ModelConfig:
    """Default capacity presets: full = 4x256x8, small = 2x128x4."""
    if size_class == "full":
        base = dict(hidden_dim=256, n_blocks=4, n_heads=8)
    elif size_class == "small":
        base = dict(hidden_dim=128, n_blocks=2, n_heads=4)
    else:
        raise ValueError(f"unknown size class {size_class!r}")
    base.update(overrides)
    return ModelConfig(
        size_class=size_class, task=task, seed=seed, pool_seeds=pool_seeds, **base
    )


@dataclass
class TrainSettings:
    learning_rate: float = 1e-3
    weight_decay: float = 1e-4
    batch_size: int = 64
    max_epochs: int = 100
    patience: int = 10
    label_smoothing: float = 0.1
    huber_beta: float = 1.0
    log_path: str | None = None
