"""Binary logistic regression trained by full-batch gradient descent.

Callers are expected to standardize features before training; the default
learning rate assumes roughly unit-scale inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..telemetry import FallLabel
from .common import TrainingDivergedError, bce_from_logits, check_finite_input, check_two_classes


@dataclass(frozen=True)
class LogisticConfig:
    learning_rate: float = 0.1
    epochs: int = 500


@dataclass(frozen=True, eq=False)
class LogisticModel:
    weights: np.ndarray  # (d,)
    bias: float
    config: LogisticConfig = field(default_factory=LogisticConfig)
    loss_curve: tuple[float, ...] = ()  # mean NLL after each epoch

    def __post_init__(self) -> None:
        if not (np.all(np.isfinite(self.weights)) and math.isfinite(self.bias)):
            raise ValueError("model parameters must be finite")


def train_logreg(
    x: np.ndarray, y: np.ndarray, config: LogisticConfig | None = None
) -> LogisticModel:
    """Zero-initialized full-batch gradient descent on mean negative log likelihood."""
    config = config or LogisticConfig()
    x = np.asarray(x, dtype=float)
    y = check_two_classes(y).astype(float)
    n, d = x.shape
    w = np.zeros(d)
    b = 0.0
    losses: list[float] = []
    for epoch in range(config.epochs):
        z = x @ w + b
        p = 1.0 / (1.0 + np.exp(-np.clip(z, -500, 500)))
        grad_z = (p - y) / n
        w = w - config.learning_rate * (x.T @ grad_z)
        b = b - config.learning_rate * float(grad_z.sum())
        loss = bce_from_logits(x @ w + b, y)
        if not math.isfinite(loss):
            raise TrainingDivergedError(epoch)
        losses.append(loss)
    return LogisticModel(weights=w, bias=b, config=config, loss_curve=tuple(losses))


def predict_logreg(model: LogisticModel, x: np.ndarray) -> tuple[FallLabel, float]:
    """probability = sigmoid(w . x + b); Fall iff probability >= 0.5."""
    x = check_finite_input(x)
    z = float(x @ model.weights + model.bias)
    p = 1.0 / (1.0 + math.exp(-z)) if z >= 0 else math.exp(z) / (1.0 + math.exp(z))
    label = FallLabel.FALL if p >= 0.5 else FallLabel.NOTFALL
    return label, p
