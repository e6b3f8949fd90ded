"""Core sensor-event types and the stream-level spike detector.

An event is one scalar magnitude triple (accelerometer, gyroscope,
magnetometer) reported by a wearable device. Per-class statistics capture
the (min, max, mean) of one sensor within one event class and parameterize
the synthetic generator in :mod:`fallchain.synth`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

SENSORS = ("accel", "gyro", "mag")


class FallLabel(enum.Enum):
    """Ground truth or prediction for one event."""

    NOTFALL = "notfall"
    FALL = "fall"

    @classmethod
    def parse(cls, token: str) -> "FallLabel":
        for label in cls:
            if label.value == token:
                return label
        raise ValueError(f"unknown label token {token!r} (expected 'fall' or 'notfall')")


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class SensorSample:
    """One timestamped reading triple from one device.

    Raw sensor magnitudes are non-negative; that is enforced where raw data
    enters the system (generation, CSV load, wire ingest). Samples produced
    by standardization carry signed values.
    """

    device_id: str
    ts_ms: int
    accel: float
    gyro: float
    mag: float
    location: tuple[float, float] | None = None

    def __post_init__(self) -> None:
        if not self.device_id or "|" in self.device_id or "\n" in self.device_id:
            raise ValueError(f"bad device_id {self.device_id!r}")
        if self.ts_ms < 0:
            raise ValueError(f"ts_ms must be >= 0, got {self.ts_ms}")
        for name in SENSORS:
            _require_finite(name, getattr(self, name))
        if self.location is not None:
            lat, lon = self.location
            _require_finite("lat", lat)
            _require_finite("lon", lon)
            if abs(lat) > 90.0 or abs(lon) > 180.0:
                raise ValueError(f"location out of range: ({lat}, {lon})")

    def features(self) -> tuple[float, float, float]:
        return (self.accel, self.gyro, self.mag)


@dataclass(frozen=True)
class ClassStats:
    """Observed or target (min, max, mean) of one sensor over one class."""

    min: float
    max: float
    mean: float

    def __post_init__(self) -> None:
        for name in ("min", "max", "mean"):
            _require_finite(name, getattr(self, name))
        if self.min < 0.0:
            raise ValueError(f"sensor magnitudes are non-negative, got min={self.min}")
        if not (self.min <= self.mean <= self.max):
            raise ValueError(
                f"need min <= mean <= max, got ({self.min}, {self.mean}, {self.max})"
            )

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.min, self.max, self.mean)


@dataclass(frozen=True)
class ClassProfile:
    """Per-sensor statistics for one event class."""

    accel: ClassStats
    gyro: ClassStats
    mag: ClassStats

    def for_sensor(self, sensor: str) -> ClassStats:
        if sensor not in SENSORS:
            raise ValueError(f"unknown sensor {sensor!r}")
        return getattr(self, sensor)


@dataclass(frozen=True)
class GeneratorParams:
    """Full parameterization of the synthetic dataset generator."""

    fall: ClassProfile
    notfall: ClassProfile
    n_fall: int
    n_notfall: int
    seed: int
    device_id: str = "wearable-01"
    start_ts_ms: int = 0
    step_ms: int = 20

    def __post_init__(self) -> None:
        if self.n_fall < 0 or self.n_notfall < 0:
            raise ValueError("event counts must be >= 0")
        if self.step_ms <= 0:
            raise ValueError("step_ms must be > 0")

    def profile(self, label: FallLabel) -> ClassProfile:
        return self.fall if label is FallLabel.FALL else self.notfall


def default_params(seed: int = 42) -> GeneratorParams:
    """Reference class statistics and counts for the bundled corpus profile."""
    return GeneratorParams(
        fall=ClassProfile(
            accel=ClassStats(44.19, 60.31, 48.59),
            gyro=ClassStats(27.726, 47.726, 33.926),
            mag=ClassStats(80.00, 95.00, 84.80),
        ),
        notfall=ClassProfile(
            accel=ClassStats(2.60, 47.80, 24.94),
            gyro=ClassStats(0.0, 43.196, 17.930),
            mag=ClassStats(27.19, 80.00, 44.371),
        ),
        n_fall=3528,
        n_notfall=8407,
        seed=seed,
    )


@dataclass(frozen=True)
class SpikeThresholds:
    """Per-sensor spike thresholds; defaults are midpoints of the class means."""

    accel: float = 36.765
    gyro: float = 25.928
    mag: float = 64.5855

    @classmethod
    def from_profiles(cls, fall: ClassProfile, notfall: ClassProfile) -> "SpikeThresholds":
        return cls(
            accel=(fall.accel.mean + notfall.accel.mean) / 2.0,
            gyro=(fall.gyro.mean + notfall.gyro.mean) / 2.0,
            mag=(fall.mag.mean + notfall.mag.mean) / 2.0,
        )


def spike_detect(
    window: Sequence[SensorSample], thresholds: SpikeThresholds | None = None
) -> bool:
    """True iff the window's per-sensor maxima all strictly exceed their thresholds."""
    if len(window) == 0:
        raise ValueError("spike_detect requires a non-empty window")
    t = thresholds or SpikeThresholds()
    return (
        max(s.accel for s in window) > t.accel
        and max(s.gyro for s in window) > t.gyro
        and max(s.mag for s in window) > t.mag
    )
