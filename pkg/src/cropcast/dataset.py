"""Dataset loading, stratified splitting, and min-max scaling.

A "feature vector" throughout the package is a length-7 float64 array in
the canonical order [n, p, k, temperature, humidity, ph, rainfall].
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    EmptyDatasetError,
    InvalidReadingError,
    RowParseError,
    SchemaError,
    StratificationError,
)
from .rng import SplitMix64

FEATURE_NAMES = ("n", "p", "k", "temperature", "humidity", "ph", "rainfall")
LABEL_COLUMN = "label"

# Header spellings of the public CSV; matching is case-insensitive.
_HEADER_ALIASES = {
    "n": "n",
    "p": "p",
    "k": "k",
    "temperature": "temperature",
    "humidity": "humidity",
    "ph": "ph",
    "rainfall": "rainfall",
    "label": LABEL_COLUMN,
}


@dataclass(frozen=True)
class SensorReading:
    """One composite reading of the seven agronomic measurements."""

    n: float
    p: float
    k: float
    temperature: float
    humidity: float
    ph: float
    rainfall: float

    def __post_init__(self):
        for name in FEATURE_NAMES:
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise InvalidReadingError(f"{name} must be a finite number, got {v!r}")
        if not 0.0 <= self.ph <= 14.0:
            raise InvalidReadingError(f"ph out of [0, 14]: {self.ph}")
        if not 0.0 <= self.humidity <= 100.0:
            raise InvalidReadingError(f"humidity out of [0, 100]: {self.humidity}")
        if self.rainfall < 0:
            raise InvalidReadingError(f"rainfall negative: {self.rainfall}")
        for name in ("n", "p", "k"):
            if getattr(self, name) < 0:
                raise InvalidReadingError(f"{name} negative: {getattr(self, name)}")

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in FEATURE_NAMES], dtype=np.float64)


@dataclass(frozen=True)
class LabeledSample:
    reading: SensorReading
    label: str

    def __post_init__(self):
        if not self.label:
            raise InvalidReadingError("label must be non-empty")


class Dataset:
    """Ordered, immutable collection of labeled samples.

    Sample order is significant: split reproducibility and nearest-neighbor
    tie-breaking both key off the original index.
    """

    feature_names = FEATURE_NAMES

    def __init__(self, samples: Sequence[LabeledSample]):
        self.samples: tuple[LabeledSample, ...] = tuple(samples)
        self.labels: tuple[str, ...] = tuple(sorted({s.label for s in self.samples}))
        self._features: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self):
        return iter(self.samples)

    @property
    def features(self) -> np.ndarray:
        """(n_samples, 7) float64 matrix in canonical feature order."""
        if self._features is None:
            if not self.samples:
                self._features = np.empty((0, len(FEATURE_NAMES)), dtype=np.float64)
            else:
                self._features = np.stack([s.reading.as_array() for s in self.samples])
        return self._features

    @property
    def sample_labels(self) -> list[str]:
        return [s.label for s in self.samples]

    def label_indices(self) -> dict[str, list[int]]:
        """Sample indices per label, labels in sorted order, indices ascending."""
        out: dict[str, list[int]] = {label: [] for label in self.labels}
        for i, s in enumerate(self.samples):
            out[s.label].append(i)
        return out

    def subset(self, indices: Iterable[int]) -> "Dataset":
        return Dataset([self.samples[i] for i in indices])


@dataclass(frozen=True)
class SplitSpec:
    test_fraction: float = 0.25
    seed: int = 42
    stratified: bool = True

    def __post_init__(self):
        if not 0.0 < self.test_fraction < 1.0:
            raise ValueError(f"test_fraction must be in (0, 1), got {self.test_fraction}")


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def _resolve_header(header: list[str]) -> dict[str, int]:
    positions: dict[str, int] = {}
    for idx, raw in enumerate(header):
        name = raw.strip().lower()
        canonical = _HEADER_ALIASES.get(name)
        if canonical is None:
            raise SchemaError(f"unexpected column: {raw.strip()!r}")
        if canonical in positions:
            raise SchemaError(f"duplicate column: {raw.strip()!r}")
        positions[canonical] = idx
    missing = [c for c in (*FEATURE_NAMES, LABEL_COLUMN) if c not in positions]
    if missing:
        raise SchemaError(f"missing column: {missing[0]!r}")
    return positions


def load_dataset(source) -> Dataset:
    """Parse a CSV (path, bytes, or text stream) into a Dataset.

    The header row must name the seven features plus the label column, in
    any order. Row order is preserved.
    """
    text = _read_text(source)
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise EmptyDatasetError("no header row") from None
    positions = _resolve_header(header)

    samples: list[LabeledSample] = []
    for row_index, row in enumerate(reader):
        if not row or all(cell.strip() == "" for cell in row):
            continue
        if len(row) != len(positions):
            raise RowParseError(row_index, f"expected {len(positions)} cells, got {len(row)}")
        values = {}
        for name in FEATURE_NAMES:
            cell = row[positions[name]].strip()
            if cell == "":
                raise RowParseError(row_index, f"missing value for {name!r}")
            try:
                values[name] = float(cell)
            except ValueError:
                raise RowParseError(row_index, f"non-numeric value for {name!r}: {cell!r}") from None
        label = row[positions[LABEL_COLUMN]].strip()
        if not label:
            raise RowParseError(row_index, "missing label")
        try:
            reading = SensorReading(**values)
        except InvalidReadingError as exc:
            raise RowParseError(row_index, str(exc)) from None
        samples.append(LabeledSample(reading, label))

    if not samples:
        raise EmptyDatasetError("no data rows")
    return Dataset(samples)


def _read_text(source) -> str:
    if isinstance(source, (str, Path)):
        return Path(source).read_text(encoding="utf-8")
    if isinstance(source, bytes):
        return source.decode("utf-8")
    data = source.read()
    if isinstance(data, bytes):
        return data.decode("utf-8")
    return data


def content_fingerprint(source) -> str:
    """SHA-256 hex digest of the raw input bytes, used to pin reports to data."""
    if isinstance(source, (str, Path)):
        data = Path(source).read_bytes()
    elif isinstance(source, bytes):
        data = source
    else:
        data = source.read()
        if isinstance(data, str):
            data = data.encode("utf-8")
    return hashlib.sha256(data).hexdigest()


def stratified_split(d: Dataset, spec: SplitSpec) -> tuple[Dataset, Dataset]:
    """Deterministic train/test partition.

    Stratified mode shuffles each label's indices with a single splitmix64
    stream (labels visited in sorted order) and sends the first
    round(test_fraction * count) of each to the test side. Subset index
    lists are sorted ascending, so subsets preserve the original sample
    order.
    """
    rng = SplitMix64(spec.seed)
    test_idx: list[int] = []
    if spec.stratified:
        for label, indices in d.label_indices().items():
            if len(indices) < 2:
                raise StratificationError(
                    f"label {label!r} has {len(indices)} sample(s); stratification needs >= 2"
                )
            pool = list(indices)
            rng.shuffle(pool)
            n_test = _round_half_up(spec.test_fraction * len(pool))
            test_idx.extend(pool[:n_test])
    else:
        pool = list(range(len(d)))
        rng.shuffle(pool)
        n_test = _round_half_up(spec.test_fraction * len(pool))
        test_idx = pool[:n_test]

    test_set = set(test_idx)
    train_idx = [i for i in range(len(d)) if i not in test_set]
    return d.subset(train_idx), d.subset(sorted(test_idx))


@dataclass(frozen=True)
class MinMaxScaler:
    """Per-feature affine rescale fitted on training extrema.

    transform maps x to (x - min) / (max - min); a constant feature
    (max == min) maps to 0. Serving-time inputs outside the training range
    scale past [0, 1] unclamped.
    """

    mins: np.ndarray
    maxs: np.ndarray

    def __post_init__(self):
        if self.mins.shape != self.maxs.shape:
            raise ValueError("min/max shape mismatch")
        if np.any(self.maxs < self.mins):
            raise ValueError("scaler max < min")

    def transform(self, x: np.ndarray) -> np.ndarray:
        span = self.maxs - self.mins
        safe = np.where(span == 0.0, 1.0, span)
        out = (np.asarray(x, dtype=np.float64) - self.mins) / safe
        if out.ndim == 1:
            out[span == 0.0] = 0.0
        else:
            out[:, span == 0.0] = 0.0
        return out

    def transform_reading(self, r: SensorReading) -> np.ndarray:
        return self.transform(r.as_array())


def fit_scaler(train: Dataset) -> MinMaxScaler:
    if len(train) == 0:
        raise EmptyDatasetError("cannot fit scaler on an empty dataset")
    x = train.features
    return MinMaxScaler(mins=x.min(axis=0), maxs=x.max(axis=0))
