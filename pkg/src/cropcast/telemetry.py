"""Simulated sensor fleet, message validation, and windowed aggregation.

Stands in for the field hardware: devices emit composite readings of all
seven measurements as JSON objects with the exact field names
{device_id, timestamp, n, p, k, temperature, humidity, ph, rainfall}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .dataset import FEATURE_NAMES, Dataset, SensorReading
from .errors import SimulatorConfigError, WindowError
from .rng import SplitMix64, stream_seed

# Admissible interval per feature. Values outside are rejected, never
# clamped or forwarded.
DEFAULT_RULE_INTERVALS: dict[str, tuple[float, float]] = {
    "n": (0.0, 300.0),
    "p": (0.0, 300.0),
    "k": (0.0, 300.0),
    "temperature": (-20.0, 60.0),
    "humidity": (0.0, 100.0),
    "ph": (0.0, 14.0),
    "rainfall": (0.0, 1000.0),
}

NON_FINITE = "NON_FINITE"


def range_code(feature: str) -> str:
    return f"{feature.upper()}_RANGE"


@dataclass(frozen=True)
class SensorMessage:
    device_id: str
    timestamp: int
    n: float
    p: float
    k: float
    temperature: float
    humidity: float
    ph: float
    rainfall: float

    def __post_init__(self):
        if not self.device_id:
            raise SimulatorConfigError("device_id must be non-empty")
        if self.timestamp <= 0:
            raise SimulatorConfigError("timestamp must be positive")

    def feature_values(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in FEATURE_NAMES}

    def to_payload(self) -> dict:
        return {"device_id": self.device_id, "timestamp": self.timestamp, **self.feature_values()}


@dataclass(frozen=True)
class ValidationRule:
    intervals: Mapping[str, tuple[float, float]] = field(
        default_factory=lambda: dict(DEFAULT_RULE_INTERVALS)
    )

    def __post_init__(self):
        for name, (lo, hi) in self.intervals.items():
            if lo > hi:
                raise SimulatorConfigError(f"empty interval for {name}: [{lo}, {hi}]")


@dataclass(frozen=True)
class FieldRejection:
    field: str
    code: str


@dataclass(frozen=True)
class Rejection:
    reasons: tuple[FieldRejection, ...]

    def codes(self) -> list[dict]:
        return [{"field": r.field, "code": r.code} for r in self.reasons]


def validate_message(
    msg: SensorMessage, rules: ValidationRule | None = None
) -> SensorReading | Rejection:
    """Accept iff every field is finite and inside its interval.

    Rejections are values (per-field reason codes), not exceptions.
    """
    rules = rules or ValidationRule()
    reasons = []
    for name in FEATURE_NAMES:
        value = getattr(msg, name)
        if not isinstance(value, (int, float)) or not math.isfinite(value):
            reasons.append(FieldRejection(name, NON_FINITE))
            continue
        lo, hi = rules.intervals.get(name, (-math.inf, math.inf))
        if not lo <= value <= hi:
            reasons.append(FieldRejection(name, range_code(name)))
    if reasons:
        return Rejection(tuple(reasons))
    return SensorReading(**msg.feature_values())


@dataclass(frozen=True)
class SimConfig:
    mode: str = "replay"  # replay | synthetic
    rate: float = 1.0
    seed: int = 42
    device_count: int = 1
    dataset: Dataset | None = None
    start_timestamp: int = 1_710_970_112

    def __post_init__(self):
        if self.mode not in ("replay", "synthetic"):
            raise SimulatorConfigError(f"unknown mode {self.mode!r}")
        if self.rate <= 0:
            raise SimulatorConfigError("rate must be positive")
        if self.device_count < 1:
            raise SimulatorConfigError("device_count must be >= 1")
        if self.dataset is None or len(self.dataset) == 0:
            raise SimulatorConfigError("simulator needs a non-empty source dataset")


def _crop_ranges(dataset: Dataset) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    out = {}
    features = dataset.features
    by_label = dataset.label_indices()
    for label, idx in by_label.items():
        rows = features[idx]
        out[label] = (rows.min(axis=0), rows.max(axis=0))
    return out


def generate_message(cfg: SimConfig, step: int) -> SensorMessage:
    """Deterministic message for (cfg.seed, step).

    Replay mode walks dataset rows in order, cycling. Synthetic mode picks
    a crop uniformly and draws each feature uniformly within that crop's
    observed [min, max]; draw order is crop, then the seven features in
    canonical order, from a per-step splitmix64 stream.
    """
    device_id = f"device-{step % cfg.device_count}"
    timestamp = cfg.start_timestamp + int(step / cfg.rate)
    if cfg.mode == "replay":
        row = cfg.dataset.samples[step % len(cfg.dataset)].reading
        values = {name: getattr(row, name) for name in FEATURE_NAMES}
    else:
        rng = SplitMix64(stream_seed(cfg.seed, step))
        labels = cfg.dataset.labels
        label = labels[rng.randrange(len(labels))]
        lo, hi = _crop_ranges(cfg.dataset)[label]
        values = {
            name: float(lo[i] + (hi[i] - lo[i]) * rng.next_double())
            for i, name in enumerate(FEATURE_NAMES)
        }
    return SensorMessage(device_id=device_id, timestamp=timestamp, **values)


def aggregate_window(readings: Sequence[SensorReading], w: int) -> np.ndarray:
    """Arithmetic mean of the last w readings per field; w=1 is the last reading."""
    if not readings:
        raise WindowError("no readings to aggregate")
    if not 1 <= w <= len(readings):
        raise WindowError(f"window {w} outside [1, {len(readings)}]")
    rows = np.stack([r.as_array() for r in readings[-w:]])
    return rows.mean(axis=0)
