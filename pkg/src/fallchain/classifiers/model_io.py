"""Canonical text serialization for trained models.

One file per model: a versioned header line, an optional fitted-scaler line,
then kind-specific parameter lines with reals at 12 significant digits.
Round-trips preserve predicted labels.
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..dataset import Scaler
from ..telemetry import FallLabel
from .kmeans import KMeansModel, predict_kmeans
from .logistic import LogisticConfig, LogisticModel, predict_logreg
from .mlp import MLPConfig, MLPModel, predict_mlp
from .naive_bayes import GaussianNBModel, predict_nb

FORMAT_VERSION = "v1"
MAGIC = "fallchain-model"

Model = GaussianNBModel | LogisticModel | MLPModel | KMeansModel

_KINDS = {
    GaussianNBModel: "gaussian-nb",
    LogisticModel: "logistic",
    MLPModel: "mlp",
    KMeansModel: "kmeans",
}


class ModelFormatError(ValueError):
    """Raised for unreadable or version-mismatched model files."""


def kind_of(model: Model) -> str:
    try:
        return _KINDS[type(model)]
    except KeyError:
        raise ModelFormatError(f"unknown model type {type(model).__name__}") from None


def _fmt(values) -> str:
    return " ".join(f"{float(v):.12g}" for v in np.atleast_1d(values))


def save_model(model: Model, path: str | Path, scaler: Scaler | None = None) -> None:
    """Write the model (and optionally its fitted scaler) atomically."""
    kind = kind_of(model)
    lines = [f"{MAGIC} {FORMAT_VERSION} {kind}"]
    if scaler is not None:
        lines.append(f"scaler {_fmt(scaler.mean)} {_fmt(scaler.std)}")
    if isinstance(model, GaussianNBModel):
        lines.append(f"priors {_fmt(model.priors)}")
        for c in range(2):
            lines.append(f"mean{c} {_fmt(model.means[c])}")
            lines.append(f"var{c} {_fmt(model.variances[c])}")
    elif isinstance(model, LogisticModel):
        lines.append(f"weights {_fmt(model.weights)}")
        lines.append(f"bias {_fmt(model.bias)}")
        lines.append(f"config {_fmt(model.config.learning_rate)} {model.config.epochs}")
    elif isinstance(model, MLPModel):
        d, h, _ = model.layer_sizes
        lines.append(f"layers {d} {h} 1")
        for row in model.w1:
            lines.append(f"w1 {_fmt(row)}")
        lines.append(f"b1 {_fmt(model.b1)}")
        lines.append(f"w2 {_fmt(model.w2)}")
        lines.append(f"b2 {_fmt(model.b2)}")
    else:
        lines.append(f"k {model.k}")
        for row in model.centroids:
            lines.append(f"centroid {_fmt(row)}")
        if model.cluster_to_label is None:
            lines.append("labels -")
        else:
            lines.append("labels " + " ".join(l.value for l in model.cluster_to_label))
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write("\n".join(lines) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _floats(parts: list[str]) -> np.ndarray:
    return np.array([float(p) for p in parts], dtype=float)


def load_model(path: str | Path) -> tuple[Model, Scaler | None]:
    """Load a model file; returns the model and its bundled scaler, if any."""
    with open(path, "r", encoding="utf-8") as f:
        lines = [line.rstrip("\n") for line in f if line.strip()]
    if not lines:
        raise ModelFormatError("empty model file")
    header = lines[0].split()
    if len(header) != 3 or header[0] != MAGIC:
        raise ModelFormatError(f"bad header: {lines[0]!r}")
    if header[1] != FORMAT_VERSION:
        raise ModelFormatError(f"unsupported format version {header[1]!r}")
    kind = header[2]
    fields: dict[str, list[list[str]]] = {}
    for line in lines[1:]:
        key, *rest = line.split()
        fields.setdefault(key, []).append(rest)
    scaler = None
    if "scaler" in fields:
        vals = _floats(fields["scaler"][0])
        if len(vals) != 6:
            raise ModelFormatError("scaler line must carry 3 means and 3 stddevs")
        scaler = Scaler(mean=tuple(vals[:3]), std=tuple(vals[3:]))
    try:
        if kind == "gaussian-nb":
            model: Model = GaussianNBModel(
                priors=_floats(fields["priors"][0]),
                means=np.stack([_floats(fields["mean0"][0]), _floats(fields["mean1"][0])]),
                variances=np.stack([_floats(fields["var0"][0]), _floats(fields["var1"][0])]),
            )
        elif kind == "logistic":
            lr, epochs = fields["config"][0]
            model = LogisticModel(
                weights=_floats(fields["weights"][0]),
                bias=float(fields["bias"][0][0]),
                config=LogisticConfig(learning_rate=float(lr), epochs=int(epochs)),
            )
        elif kind == "mlp":
            d, h, _ = (int(v) for v in fields["layers"][0])
            w1 = np.stack([_floats(row) for row in fields["w1"]])
            if w1.shape != (h, d):
                raise ModelFormatError(f"w1 shape {w1.shape} does not match layers {h}x{d}")
            model = MLPModel(
                w1=w1,
                b1=_floats(fields["b1"][0]),
                w2=_floats(fields["w2"][0]),
                b2=float(fields["b2"][0][0]),
                config=MLPConfig(hidden=h),
            )
        elif kind == "kmeans":
            k = int(fields["k"][0][0])
            centroids = np.stack([_floats(row) for row in fields["centroid"]])
            if len(centroids) != k:
                raise ModelFormatError(f"expected {k} centroids, found {len(centroids)}")
            tokens = fields["labels"][0]
            mapping = (
                None
                if tokens == ["-"]
                else tuple(FallLabel.parse(t) for t in tokens)
            )
            model = KMeansModel(k=k, centroids=centroids, cluster_to_label=mapping)
        else:
            raise ModelFormatError(f"unknown model kind {kind!r}")
    except (KeyError, IndexError, ValueError) as e:
        if isinstance(e, ModelFormatError):
            raise
        raise ModelFormatError(f"malformed {kind} model file: {e}") from None
    return model, scaler


@dataclass(frozen=True)
class Predictor:
    """A loaded model plus the standardization it was trained with."""

    kind: str
    model: Model
    scaler: Scaler | None = None

    def predict(self, features: np.ndarray) -> tuple[FallLabel, float]:
        """Classify one raw feature triple; returns (label, confidence in [0,1])."""
        x = np.asarray(features, dtype=float)
        if self.scaler is not None:
            x = self.scaler.transform(x)
        if isinstance(self.model, GaussianNBModel):
            return predict_nb(self.model, x)
        if isinstance(self.model, LogisticModel):
            label, p = predict_logreg(self.model, x)
            return label, p if label is FallLabel.FALL else 1.0 - p
        if isinstance(self.model, MLPModel):
            label, p = predict_mlp(self.model, x)
            return label, p if label is FallLabel.FALL else 1.0 - p
        return predict_kmeans(self.model, x), 1.0


def load_predictor(path: str | Path) -> Predictor:
    model, scaler = load_model(path)
    return Predictor(kind=kind_of(model), model=model, scaler=scaler)
