"""Dataset container, stratified train/test splitting, standardization, CSV I/O."""

from __future__ import annotations

import csv
import hashlib
import math
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .telemetry import FallLabel, SensorSample

CSV_HEADER = ("device_id", "ts_ms", "accel", "gyro", "mag", "label")

Event = tuple[SensorSample, FallLabel]


class CsvFormatError(ValueError):
    """Raised when an event CSV file violates the declared format."""


@dataclass(frozen=True)
class Dataset:
    """Ordered, immutable sequence of labeled sensor events."""

    events: tuple[Event, ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Event]) -> "Dataset":
        return cls(events=tuple(pairs))

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[Event]:
        return iter(self.events)

    def counts(self) -> dict[FallLabel, int]:
        out = {FallLabel.NOTFALL: 0, FallLabel.FALL: 0}
        for _, label in self.events:
            out[label] += 1
        return out

    def features(self) -> np.ndarray:
        """(n, 3) float64 matrix in (accel, gyro, mag) order."""
        return np.array([s.features() for s, _ in self.events], dtype=float).reshape(-1, 3)

    def labels01(self) -> np.ndarray:
        """(n,) int array, 1 for Fall, 0 for NotFall."""
        return np.array(
            [1 if label is FallLabel.FALL else 0 for _, label in self.events], dtype=int
        )

    def fingerprint(self) -> str:
        """SHA-256 hex digest of the canonical row serialization."""
        h = hashlib.sha256()
        for sample, label in self.events:
            h.update(_canonical_row(sample, label).encode("utf-8"))
            h.update(b"\n")
        return h.hexdigest()


@dataclass(frozen=True)
class SplitSpec:
    """Train/test split parameters."""

    train_fraction: float
    seed: int
    stratified: bool = True

    def __post_init__(self) -> None:
        if not (0.0 < self.train_fraction < 1.0):
            raise ValueError(f"train_fraction must be in (0, 1), got {self.train_fraction}")


def split(dataset: Dataset, spec: SplitSpec) -> tuple[Dataset, Dataset]:
    """Deterministic seeded shuffle and partition.

    Stratified mode splits each class independently; per class,
    floor(train_fraction * class_size) events go to train and the remainder
    to test. Event order in both parts is a seeded shuffle.
    """
    if len(dataset) == 0:
        raise ValueError("cannot split an empty dataset")
    rng = np.random.default_rng(spec.seed)
    train_idx: list[int] = []
    test_idx: list[int] = []
    if spec.stratified:
        for label in (FallLabel.NOTFALL, FallLabel.FALL):
            idx = np.array(
                [i for i, (_, lab) in enumerate(dataset.events) if lab is label], dtype=int
            )
            if len(idx) == 0:
                continue
            perm = idx[rng.permutation(len(idx))]
            k = math.floor(spec.train_fraction * len(idx))
            train_idx.extend(perm[:k].tolist())
            test_idx.extend(perm[k:].tolist())
    else:
        perm = rng.permutation(len(dataset))
        k = math.floor(spec.train_fraction * len(dataset))
        train_idx = perm[:k].tolist()
        test_idx = perm[k:].tolist()
    # interleave classes so downstream consumers never see class-sorted runs
    train_order = rng.permutation(len(train_idx))
    test_order = rng.permutation(len(test_idx))
    train = Dataset.from_pairs(dataset.events[train_idx[i]] for i in train_order)
    test = Dataset.from_pairs(dataset.events[test_idx[i]] for i in test_order)
    return train, test


@dataclass(frozen=True)
class Scaler:
    """Per-feature standardization parameters fit on a training set."""

    mean: tuple[float, float, float]
    std: tuple[float, float, float]
    degenerate: tuple[bool, bool, bool] = (False, False, False)

    def transform(self, x: np.ndarray) -> np.ndarray:
        return (np.asarray(x, dtype=float) - np.array(self.mean)) / np.array(self.std)

    def inverse(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(x, dtype=float) * np.array(self.std) + np.array(self.mean)

    @classmethod
    def identity(cls) -> "Scaler":
        return cls(mean=(0.0, 0.0, 0.0), std=(1.0, 1.0, 1.0))


def fit_scaler(train: Dataset) -> Scaler:
    """Per-feature mean and population stddev over the training set.

    Zero-variance features are flagged degenerate and their stddev is
    substituted with 1 so transforms stay finite.
    """
    if len(train) == 0:
        raise ValueError("cannot fit a scaler on an empty dataset")
    x = train.features()
    mean = x.mean(axis=0)
    std = x.std(axis=0)  # population (ddof=0)
    degenerate = std == 0.0
    std = np.where(degenerate, 1.0, std)
    return Scaler(
        mean=tuple(float(v) for v in mean),
        std=tuple(float(v) for v in std),
        degenerate=tuple(bool(v) for v in degenerate),
    )


def apply_scaler(scaler: Scaler, dataset: Dataset) -> Dataset:
    """Standardize every sample's features; labels and metadata unchanged."""
    events = []
    for sample, label in dataset:
        a, g, m = scaler.transform(np.array(sample.features()))
        events.append(
            (
                SensorSample(
                    device_id=sample.device_id,
                    ts_ms=sample.ts_ms,
                    accel=float(a),
                    gyro=float(g),
                    mag=float(m),
                    location=sample.location,
                ),
                label,
            )
        )
    return Dataset.from_pairs(events)


def _canonical_row(sample: SensorSample, label: FallLabel) -> str:
    return (
        f"{sample.device_id},{sample.ts_ms},"
        f"{sample.accel:.6f},{sample.gyro:.6f},{sample.mag:.6f},{label.value}"
    )


def write_csv(dataset: Dataset, path: str | Path) -> None:
    """Write the at-rest CSV form (UTF-8, LF, fixed header, reals at 6 dp).

    Writes to a temp file in the target directory and renames on success.
    """
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for sample, label in dataset:
                writer.writerow(
                    (
                        sample.device_id,
                        sample.ts_ms,
                        f"{sample.accel:.6f}",
                        f"{sample.gyro:.6f}",
                        f"{sample.mag:.6f}",
                        label.value,
                    )
                )
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_csv(path: str | Path) -> Dataset:
    """Load a dataset written by :func:`write_csv`; strict about the format."""
    events: list[Event] = []
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise CsvFormatError("line 1: missing header row") from None
        if tuple(header) != CSV_HEADER:
            raise CsvFormatError(f"line 1: bad header {header!r}")
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(CSV_HEADER):
                raise CsvFormatError(f"line {lineno}: expected {len(CSV_HEADER)} fields, got {len(row)}")
            device_id, ts_text, a_text, g_text, m_text, label_text = row
            try:
                ts_ms = int(ts_text)
                values = [float(a_text), float(g_text), float(m_text)]
            except ValueError as e:
                raise CsvFormatError(f"line {lineno}: {e}") from None
            for name, v in zip(("accel", "gyro", "mag"), values):
                if not math.isfinite(v) or v < 0.0:
                    raise CsvFormatError(
                        f"line {lineno}: {name} must be a finite non-negative real, got {v!r}"
                    )
            try:
                label = FallLabel.parse(label_text)
                sample = SensorSample(device_id, ts_ms, values[0], values[1], values[2])
            except ValueError as e:
                raise CsvFormatError(f"line {lineno}: {e}") from None
            events.append((sample, label))
    return Dataset.from_pairs(events)
