"""Lloyd's k-means with k-means++ seeding and a cluster-to-label mapping."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ..telemetry import FallLabel
from .common import check_finite_input


@dataclass(frozen=True, eq=False)
class KMeansModel:
    k: int
    centroids: np.ndarray  # (k, d)
    cluster_to_label: tuple[FallLabel, ...] | None = None
    inertia: float = float("nan")
    n_iter: int = 0


def _sq_dists(x: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    return ((x[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)


def _seed_pp(x: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = len(x)
    centroids = np.empty((k, x.shape[1]))
    centroids[0] = x[rng.integers(n)]
    d2 = ((x - centroids[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = d2.sum()
        if total <= 0.0:
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=d2 / total))
        centroids[j] = x[idx]
        d2 = np.minimum(d2, ((x - centroids[j]) ** 2).sum(axis=1))
    return centroids


def _lloyd(
    x: np.ndarray, centroids: np.ndarray, max_iter: int, tol: float
) -> tuple[np.ndarray, np.ndarray, float, int]:
    k = len(centroids)
    assign = np.zeros(len(x), dtype=int)
    it = 0
    for it in range(1, max_iter + 1):
        d2 = _sq_dists(x, centroids)
        assign = d2.argmin(axis=1)  # ties go to the lower index
        new_centroids = centroids.copy()
        for c in range(k):
            members = x[assign == c]
            if len(members) > 0:
                new_centroids[c] = members.mean(axis=0)
            else:
                # reseed an empty cluster to the point farthest from its centroid
                far = int(d2[np.arange(len(x)), assign].argmax())
                new_centroids[c] = x[far]
        shift = np.sqrt(((new_centroids - centroids) ** 2).sum(axis=1)).max()
        centroids = new_centroids
        if shift < tol:
            break
    d2 = _sq_dists(x, centroids)
    assign = d2.argmin(axis=1)
    inertia = float(d2[np.arange(len(x)), assign].sum())
    return centroids, assign, inertia, it


def train_kmeans(
    x: np.ndarray,
    k: int = 2,
    seed: int = 0,
    n_init: int = 10,
    max_iter: int = 300,
    tol: float = 1e-6,
) -> KMeansModel:
    """Best of n_init seeded runs by within-cluster sum of squares."""
    x = np.asarray(x, dtype=float)
    if len(np.unique(x, axis=0)) < k:
        raise ValueError(f"need at least {k} distinct points")
    rng = np.random.default_rng(seed)
    best: tuple[float, np.ndarray, int] | None = None
    for _ in range(n_init):
        centroids = _seed_pp(x, k, rng)
        centroids, _, inertia, it = _lloyd(x, centroids, max_iter, tol)
        if best is None or inertia < best[0]:
            best = (inertia, centroids, it)
    assert best is not None
    return KMeansModel(k=k, centroids=best[1], inertia=best[0], n_iter=best[2])


def assign_cluster(model: KMeansModel, x: np.ndarray) -> int:
    """Nearest centroid by squared Euclidean distance; ties to the lower index."""
    x = check_finite_input(x)
    d2 = ((model.centroids - x) ** 2).sum(axis=1)
    return int(d2.argmin())


def map_clusters(model: KMeansModel, x: np.ndarray, y: np.ndarray) -> KMeansModel:
    """Assign each cluster the majority training label; ties resolve to Fall.

    A cluster with no training members maps to Fall (prefer a false alarm
    over a missed fall).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=int)
    assign = _sq_dists(x, model.centroids).argmin(axis=1)
    mapping = []
    for c in range(model.k):
        members = y[assign == c]
        if len(members) == 0 or members.sum() * 2 >= len(members):
            mapping.append(FallLabel.FALL)
        else:
            mapping.append(FallLabel.NOTFALL)
    return replace(model, cluster_to_label=tuple(mapping))


def predict_kmeans(model: KMeansModel, x: np.ndarray) -> FallLabel:
    if model.cluster_to_label is None:
        raise ValueError("model has no cluster-to-label mapping; run map_clusters first")
    return model.cluster_to_label[assign_cluster(model, x)]
