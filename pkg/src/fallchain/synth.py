"""Synthetic labeled telemetry matching per-class sensor statistics.

Each sensor value is drawn from a truncated normal with location = target
mean and scale = (max - min) / 6, truncated to [min, max] by rejection.
"""

from __future__ import annotations

import numpy as np

from .dataset import Dataset
from .telemetry import ClassStats, FallLabel, GeneratorParams, SensorSample

_MAX_REJECTS = 1000


def _draw(rng: np.random.Generator, stats: ClassStats) -> float:
    scale = (stats.max - stats.min) / 6.0
    if scale <= 0.0:
        return stats.mean
    x = stats.mean
    for _ in range(_MAX_REJECTS):
        x = rng.normal(stats.mean, scale)
        if stats.min <= x <= stats.max:
            return x
    # pathologically tight bounds: clamp the last draw, stays deterministic
    return min(max(x, stats.min), stats.max)


def synth_dataset(params: GeneratorParams) -> Dataset:
    """Generate exactly n_fall Fall and n_notfall NotFall events.

    Class order along the stream is a seeded shuffle, timestamps are
    monotone at step_ms spacing, and the whole draw is deterministic under
    a fixed seed.
    """
    rng = np.random.default_rng(params.seed)
    labels = np.array(
        [1] * params.n_fall + [0] * params.n_notfall, dtype=int
    )
    labels = labels[rng.permutation(len(labels))]
    events = []
    ts = params.start_ts_ms
    for flag in labels:
        label = FallLabel.FALL if flag == 1 else FallLabel.NOTFALL
        profile = params.profile(label)
        accel = _draw(rng, profile.accel)
        gyro = _draw(rng, profile.gyro)
        mag = _draw(rng, profile.mag)
        events.append((SensorSample(params.device_id, ts, accel, gyro, mag), label))
        ts += params.step_ms
    return Dataset.from_pairs(events)


def class_summary(dataset: Dataset, label: FallLabel, sensor: str) -> ClassStats:
    """Observed (min, max, mean) of one sensor over one class of raw events."""
    values = [getattr(s, sensor) for s, lab in dataset if lab is label]
    if not values:
        raise ValueError(f"dataset has no {label.value} events")
    return ClassStats(
        min=min(values), max=max(values), mean=float(np.mean(values))
    )
