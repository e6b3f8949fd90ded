"""Shared numeric helpers for the classifier implementations."""

from __future__ import annotations

import numpy as np


class TrainingDivergedError(RuntimeError):
    """Raised when a trainer hits a non-finite loss; carries the epoch."""

    def __init__(self, epoch: int, message: str = "") -> None:
        self.epoch = epoch
        super().__init__(message or f"training diverged at epoch {epoch}")


def sigmoid(z: np.ndarray) -> np.ndarray:
    """Numerically stable logistic function."""
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def bce_from_logits(z: np.ndarray, y: np.ndarray) -> float:
    """Mean binary cross-entropy, computed from logits for stability.

    BCE = softplus(z) - y * z, averaged over the batch.
    """
    z = np.asarray(z, dtype=float)
    y = np.asarray(y, dtype=float)
    return float(np.mean(np.logaddexp(0.0, z) - y * z))


def check_finite_input(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError(f"non-finite feature vector: {x!r}")
    return x


def check_two_classes(y: np.ndarray) -> np.ndarray:
    y = np.asarray(y, dtype=int)
    if set(np.unique(y).tolist()) != {0, 1}:
        raise ValueError("training set must contain both classes (labels 0 and 1)")
    return y
