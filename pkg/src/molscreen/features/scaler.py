"""Variance filtering and standardisation of global feature matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class TooFewRows(ValueError):
    pass


class SchemaMismatch(ValueError):
    pass


@dataclass(frozen=True)
class FeatureScaler:
    """Kept-column indices with per-column mean and std (population formulas)."""

    n_input_columns: int
    kept_columns: np.ndarray  # int indices
    mean: np.ndarray
    std: np.ndarray

    def to_dict(self) -> dict:
        return {
            "n_input_columns": int(self.n_input_columns),
            "kept_columns": self.kept_columns.tolist(),
            "mean": self.mean.tolist(),
            "std": self.std.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FeatureScaler":
        return cls(
            n_input_columns=int(d["n_input_columns"]),
            kept_columns=np.asarray(d["kept_columns"], dtype=np.int64),
            mean=np.asarray(d["mean"], dtype=np.float64),
            std=np.asarray(d["std"], dtype=np.float64),
        )


def fit_scaler(train_matrix: np.ndarray) -> FeatureScaler:
    """Drop zero-variance columns, store population mean/std of the rest."""
    x = np.asarray(train_matrix, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] < 2:
        raise TooFewRows("need at least 2 rows to fit a scaler")
    mean = x.mean(axis=0)
    var = ((x - mean) ** 2).mean(axis=0)
    kept = np.flatnonzero(var > 0.0)
    return FeatureScaler(
        n_input_columns=x.shape[1],
        kept_columns=kept,
        mean=mean[kept],
        std=np.sqrt(var[kept]),
    )


def apply_scaler(scaler: FeatureScaler, matrix: np.ndarray) -> np.ndarray:
    """z = (x - mean) / std over the kept columns."""
    x = np.asarray(matrix, dtype=np.float64)
    one_row = x.ndim == 1
    if one_row:
        x = x[None, :]
    if x.shape[1] != scaler.n_input_columns:
        raise SchemaMismatch(
            f"expected {scaler.n_input_columns} columns, got {x.shape[1]}"
        )
    z = (x[:, scaler.kept_columns] - scaler.mean) / scaler.std
    return z[0] if one_row else z


def invert_scaler(scaler: FeatureScaler, z: np.ndarray) -> np.ndarray:
    """Reconstruct kept columns: x = z * std + mean."""
    return np.asarray(z, dtype=np.float64) * scaler.std + scaler.mean
