"""Single-hidden-layer feed-forward network (ReLU hidden, sigmoid output).

Loss is mean binary cross-entropy; gradients come from backpropagation and
are exposed separately so they can be checked against finite differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..telemetry import FallLabel
from .common import TrainingDivergedError, bce_from_logits, check_finite_input, check_two_classes, sigmoid


@dataclass(frozen=True)
class MLPConfig:
    hidden: int = 16
    learning_rate: float = 0.05
    epochs: int = 200
    batch_size: int = 32
    seed: int = 0
    init_scale: float = 0.1  # uniform init in [-init_scale, init_scale]


@dataclass(eq=False)
class MLPModel:
    w1: np.ndarray  # (hidden, d)
    b1: np.ndarray  # (hidden,)
    w2: np.ndarray  # (hidden,)
    b2: float
    config: MLPConfig = field(default_factory=MLPConfig)
    loss_curve: tuple[float, ...] = ()

    @property
    def layer_sizes(self) -> tuple[int, int, int]:
        return (self.w1.shape[1], self.w1.shape[0], 1)


@dataclass(eq=False)
class MLPGrads:
    w1: np.ndarray
    b1: np.ndarray
    w2: np.ndarray
    b2: float


def _forward(model: MLPModel, x: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    z1 = x @ model.w1.T + model.b1
    a1 = np.maximum(z1, 0.0)
    z2 = a1 @ model.w2 + model.b2
    return z1, a1, z2


def mlp_loss_and_grad(model: MLPModel, x: np.ndarray, y: np.ndarray) -> tuple[float, MLPGrads]:
    """Mean BCE over the batch and its gradient w.r.t. every parameter."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) == 0:
        raise ValueError("batch must be non-empty")
    z1, a1, z2 = _forward(model, x)
    if not (np.all(np.isfinite(z1)) and np.all(np.isfinite(z2))):
        raise ValueError("non-finite activations")
    n = len(x)
    loss = bce_from_logits(z2, y)
    dz2 = (sigmoid(z2) - y) / n  # (n,)
    gw2 = a1.T @ dz2  # (hidden,)
    gb2 = float(dz2.sum())
    da1 = np.outer(dz2, model.w2)  # (n, hidden)
    dz1 = da1 * (z1 > 0.0)
    gw1 = dz1.T @ x  # (hidden, d)
    gb1 = dz1.sum(axis=0)
    return loss, MLPGrads(w1=gw1, b1=gb1, w2=gw2, b2=gb2)


def train_mlp(x: np.ndarray, y: np.ndarray, config: MLPConfig | None = None) -> MLPModel:
    """Seeded mini-batch gradient descent; deterministic under a fixed seed."""
    config = config or MLPConfig()
    x = np.asarray(x, dtype=float)
    y = check_two_classes(y).astype(float)
    n, d = x.shape
    rng = np.random.default_rng(config.seed)
    s = config.init_scale
    model = MLPModel(
        w1=rng.uniform(-s, s, size=(config.hidden, d)),
        b1=rng.uniform(-s, s, size=config.hidden),
        w2=rng.uniform(-s, s, size=config.hidden),
        b2=float(rng.uniform(-s, s)),
        config=config,
    )
    losses: list[float] = []
    lr = config.learning_rate
    for epoch in range(config.epochs):
        perm = rng.permutation(n)
        for start in range(0, n, config.batch_size):
            batch = perm[start : start + config.batch_size]
            _, grads = mlp_loss_and_grad(model, x[batch], y[batch])
            model.w1 -= lr * grads.w1
            model.b1 -= lr * grads.b1
            model.w2 -= lr * grads.w2
            model.b2 -= lr * grads.b2
        _, _, z2 = _forward(model, x)
        loss = bce_from_logits(z2, y)
        if not math.isfinite(loss):
            raise TrainingDivergedError(epoch)
        losses.append(loss)
    model.loss_curve = tuple(losses)
    return model


def predict_mlp(model: MLPModel, x: np.ndarray) -> tuple[FallLabel, float]:
    """Forward pass; Fall iff the output probability is >= 0.5."""
    x = check_finite_input(x)
    _, _, z2 = _forward(model, x.reshape(1, -1))
    p = float(sigmoid(z2)[0])
    label = FallLabel.FALL if p >= 0.5 else FallLabel.NOTFALL
    return label, p
