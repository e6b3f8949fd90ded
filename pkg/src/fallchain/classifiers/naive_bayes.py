"""Gaussian Naive Bayes with per-class feature means and variances.

Class score is log prior plus the sum of per-feature Gaussian log densities;
the posterior is the two-class normalization of those joint scores.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..telemetry import FallLabel
from .common import check_finite_input, check_two_classes

VARIANCE_FLOOR = 1e-9


@dataclass(frozen=True, eq=False)
class GaussianNBModel:
    priors: np.ndarray  # (2,), index 0 = NotFall, 1 = Fall
    means: np.ndarray  # (2, d)
    variances: np.ndarray  # (2, d), floored at VARIANCE_FLOOR

    def __post_init__(self) -> None:
        if self.priors.shape != (2,) or self.means.shape != self.variances.shape:
            raise ValueError("inconsistent parameter shapes")
        if not (np.all(self.priors > 0) and abs(float(self.priors.sum()) - 1.0) < 1e-12):
            raise ValueError("priors must be positive and sum to 1")
        if np.any(self.variances < VARIANCE_FLOOR):
            raise ValueError(f"variances must be >= {VARIANCE_FLOOR}")


def train_nb(x: np.ndarray, y: np.ndarray) -> GaussianNBModel:
    """Fit priors and per-class per-feature Gaussians.

    Priors are class frequencies; variances are population variances
    (ddof=0) floored at VARIANCE_FLOOR.
    """
    x = np.asarray(x, dtype=float)
    y = check_two_classes(y)
    n, d = x.shape
    priors = np.empty(2)
    means = np.empty((2, d))
    variances = np.empty((2, d))
    for c in (0, 1):
        xc = x[y == c]
        priors[c] = len(xc) / n
        means[c] = xc.mean(axis=0)
        variances[c] = np.maximum(xc.var(axis=0), VARIANCE_FLOOR)
    return GaussianNBModel(priors=priors, means=means, variances=variances)


def _joint_log_likelihood(model: GaussianNBModel, x: np.ndarray) -> np.ndarray:
    # log p(c) + sum_j log N(x_j; mu_cj, var_cj)
    log_density = -0.5 * (
        np.log(2.0 * math.pi * model.variances)
        + (x - model.means) ** 2 / model.variances
    ).sum(axis=1)
    return np.log(model.priors) + log_density


def predict_nb(model: GaussianNBModel, x: np.ndarray) -> tuple[FallLabel, float]:
    """argmax of the joint log likelihood; ties resolve to Fall.

    Returns the label and its two-class normalized posterior.
    """
    x = check_finite_input(x)
    scores = _joint_log_likelihood(model, x)
    # normalize: p_c = exp(s_c - logsumexp(s))
    m = scores.max()
    probs = np.exp(scores - m)
    probs /= probs.sum()
    if scores[1] >= scores[0]:
        return FallLabel.FALL, float(probs[1])
    return FallLabel.NOTFALL, float(probs[0])
