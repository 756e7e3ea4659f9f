import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import make_dataset, reading
from cropcast.dataset import SensorReading
from cropcast.errors import SimulatorConfigError, WindowError
from cropcast.telemetry import (
    DEFAULT_RULE_INTERVALS,
    Rejection,
    SensorMessage,
    SimConfig,
    ValidationRule,
    aggregate_window,
    generate_message,
    validate_message,
)


def message(**overrides) -> SensorMessage:
    values = dict(
        device_id="device-0",
        timestamp=1_710_970_112,
        n=50.0, p=50.0, k=50.0,
        temperature=25.0, humidity=60.0, ph=6.5, rainfall=120.0,
    )
    values.update(overrides)
    return SensorMessage(**values)


@pytest.fixture()
def tiny_dataset():
    return make_dataset(
        [
            ((60, 40, 40, 22, 82, 6.5, 200), "rice"),
            ((80, 45, 42, 24, 83, 6.8, 220), "rice"),
            ((70, 50, 18, 20, 60, 6.0, 80), "maize"),
            ((75, 55, 20, 23, 65, 6.2, 90), "maize"),
        ]
    )


class TestValidate:
    def test_mid_range_accepted(self):
        out = validate_message(message())
        assert isinstance(out, SensorReading)
        assert out.ph == 6.5

    def test_ph_out_of_range(self):
        out = validate_message(message(ph=15.0))
        assert isinstance(out, Rejection)
        assert {"field": "ph", "code": "PH_RANGE"} in out.codes()

    def test_non_finite_rejected(self):
        out = validate_message(message(humidity=float("nan")))
        assert isinstance(out, Rejection)
        assert {"field": "humidity", "code": "NON_FINITE"} in out.codes()

    def test_multiple_reasons_collected(self):
        out = validate_message(message(ph=15.0, temperature=99.0))
        codes = {c["code"] for c in out.codes()}
        assert codes == {"PH_RANGE", "TEMPERATURE_RANGE"}

    def test_default_intervals(self):
        assert DEFAULT_RULE_INTERVALS["ph"] == (0.0, 14.0)
        assert DEFAULT_RULE_INTERVALS["humidity"] == (0.0, 100.0)
        assert DEFAULT_RULE_INTERVALS["temperature"] == (-20.0, 60.0)
        assert DEFAULT_RULE_INTERVALS["rainfall"] == (0.0, 1000.0)
        for nutrient in ("n", "p", "k"):
            assert DEFAULT_RULE_INTERVALS[nutrient] == (0.0, 300.0)

    def test_custom_rule(self):
        rules = ValidationRule(intervals={**DEFAULT_RULE_INTERVALS, "ph": (6.0, 7.0)})
        assert isinstance(validate_message(message(ph=5.0), rules), Rejection)

    def test_empty_interval_rejected(self):
        with pytest.raises(SimulatorConfigError):
            ValidationRule(intervals={"ph": (7.0, 6.0)})


class TestGenerate:
    def test_replay_step0_is_row0(self, tiny_dataset):
        cfg = SimConfig(mode="replay", dataset=tiny_dataset)
        msg = generate_message(cfg, 0)
        row0 = tiny_dataset.samples[0].reading
        assert msg.n == row0.n and msg.rainfall == row0.rainfall

    def test_replay_cycles_each_row_equally(self, tiny_dataset):
        cfg = SimConfig(mode="replay", dataset=tiny_dataset)
        seen = Counter(
            tuple(generate_message(cfg, step).feature_values().values())
            for step in range(3 * len(tiny_dataset))
        )
        assert all(count == 3 for count in seen.values())

    def test_synthetic_within_global_bounds(self, tiny_dataset):
        cfg = SimConfig(mode="synthetic", dataset=tiny_dataset, seed=5)
        lo = tiny_dataset.features.min(axis=0)
        hi = tiny_dataset.features.max(axis=0)
        for step in range(200):
            vec = np.array(list(generate_message(cfg, step).feature_values().values()))
            assert (vec >= lo - 1e-12).all() and (vec <= hi + 1e-12).all()

    def test_deterministic_per_seed_step(self, tiny_dataset):
        cfg = SimConfig(mode="synthetic", dataset=tiny_dataset, seed=9)
        assert generate_message(cfg, 17) == generate_message(cfg, 17)

    def test_synthetic_passes_validation(self, tiny_dataset):
        cfg = SimConfig(mode="synthetic", dataset=tiny_dataset, seed=1)
        for step in range(100):
            out = validate_message(generate_message(cfg, step))
            assert isinstance(out, SensorReading)

    def test_device_round_robin(self, tiny_dataset):
        cfg = SimConfig(mode="replay", dataset=tiny_dataset, device_count=3)
        assert generate_message(cfg, 0).device_id == "device-0"
        assert generate_message(cfg, 4).device_id == "device-1"

    def test_empty_dataset_rejected(self):
        with pytest.raises(SimulatorConfigError):
            SimConfig(mode="replay", dataset=None)

    def test_unknown_mode_rejected(self, tiny_dataset):
        with pytest.raises(SimulatorConfigError):
            SimConfig(mode="stream", dataset=tiny_dataset)

    def test_payload_field_names(self, tiny_dataset):
        cfg = SimConfig(mode="replay", dataset=tiny_dataset)
        payload = generate_message(cfg, 0).to_payload()
        assert set(payload) == {
            "device_id", "timestamp", "n", "p", "k",
            "temperature", "humidity", "ph", "rainfall",
        }


class TestAggregate:
    def test_window_one_is_last_reading(self):
        readings = [reading((10, 0, 0, 20, 50, 7, 0)), reading((20, 0, 0, 22, 52, 7, 0))]
        out = aggregate_window(readings, 1)
        assert out[0] == 20.0 and out[3] == 22.0

    def test_mean_of_two(self):
        readings = [reading((10, 0, 0, 20, 50, 7, 0)), reading((20, 0, 0, 22, 52, 7, 0))]
        out = aggregate_window(readings, 2)
        assert out[0] == 15.0 and out[3] == 21.0

    def test_window_larger_than_available(self):
        with pytest.raises(WindowError):
            aggregate_window([reading((10, 0, 0, 20, 50, 7, 0))], 2)

    def test_empty_input(self):
        with pytest.raises(WindowError):
            aggregate_window([], 1)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(min_value=1, max_value=8))
    def test_mean_of_identical_readings_is_identity(self, w):
        readings = [reading((42, 10, 11, 20, 50, 7, 90))] * 8
        out = aggregate_window(readings, w)
        assert np.allclose(out, readings[-1].as_array())
