from pathlib import Path

import numpy as np
import pytest

from cropcast.dataset import (
    Dataset,
    LabeledSample,
    SensorReading,
    SplitSpec,
    load_dataset,
    stratified_split,
)
from cropcast.rng import SplitMix64

DATA_PATH = Path(__file__).resolve().parents[1] / "data" / "crop_recommendation.csv"


def reading(vec) -> SensorReading:
    n, p, k, temperature, humidity, ph, rainfall = vec
    return SensorReading(
        n=float(n),
        p=float(p),
        k=float(k),
        temperature=float(temperature),
        humidity=float(humidity),
        ph=float(ph),
        rainfall=float(rainfall),
    )


def make_dataset(rows) -> Dataset:
    """rows: iterable of (7-value feature sequence, label)."""
    return Dataset([LabeledSample(reading(vec), label) for vec, label in rows])


def random_fixture(rng: SplitMix64, n_samples: int, n_classes: int) -> Dataset:
    """Random labeled dataset with values inside the validation ranges."""
    rows = []
    for i in range(n_samples):
        label = f"crop{i % n_classes}"
        base = rng.randrange(100)
        vec = (
            base + rng.randrange(100),
            rng.randrange(200),
            rng.randrange(200),
            -5.0 + 50.0 * rng.next_double(),
            100.0 * rng.next_double(),
            14.0 * rng.next_double(),
            500.0 * rng.next_double(),
        )
        rows.append((vec, label))
    return make_dataset(rows)


@pytest.fixture(scope="session")
def crop_data() -> Dataset:
    return load_dataset(DATA_PATH)


@pytest.fixture(scope="session")
def crop_split(crop_data):
    return stratified_split(crop_data, SplitSpec(test_fraction=0.25, seed=42, stratified=True))


@pytest.fixture(scope="session")
def small_train():
    """Compact but non-trivial training set: 4 classes, 60 samples."""
    rng = SplitMix64(99)
    rows = []
    centers = {
        "alpha": (30, 40, 20, 18.0, 60.0, 6.0, 80.0),
        "beta": (80, 60, 40, 25.0, 80.0, 6.5, 200.0),
        "gamma": (10, 20, 70, 30.0, 40.0, 7.5, 50.0),
        "delta": (55, 90, 55, 22.0, 70.0, 5.5, 120.0),
    }
    for label, center in centers.items():
        for _ in range(15):
            vec = tuple(
                c + (rng.next_double() - 0.5) * (2.0 if i >= 3 else 6.0)
                for i, c in enumerate(center)
            )
            rows.append((vec, label))
    return make_dataset(rows)
