#!/usr/bin/env python3
"""Generate the bundled crop-recommendation CSV.

The original public dataset (2200 rows, 22 crops x 100, columns
N,P,K,temperature,humidity,ph,rainfall,label) cannot be redistributed
here, so the repo ships a deterministic surrogate with the same schema and
class structure. Per crop, each feature is drawn from a clipped normal
whose center and spread come from published agronomic ranges; the three
climate features (temperature, humidity, rainfall) share a latent factor
so they co-vary within a crop, as they do in the field. The tails
reproduce the well-known confusion structure (rice vs jute, the pulse
cluster, watermelon vs muskmelon). Global row 0 is pinned to the widely
documented first row of the public file so downstream examples line up.

Regenerate with:  python scripts/make_dataset.py [--seed 7] [--out data/crop_recommendation.csv]
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from cropcast.rng import SplitMix64  # noqa: E402

ROWS_PER_CROP = 100

# Shared-latent loading for temperature/humidity/rainfall (fraction of
# variance explained by the common climate factor).
CLIMATE_RHO = 0.35

# Hard clips keeping every value inside the telemetry validation ranges.
CLIPS = {
    "n": (0.0, 300.0),
    "p": (0.0, 300.0),
    "k": (0.0, 300.0),
    "temperature": (5.0, 45.0),
    "humidity": (10.0, 99.9),
    "ph": (3.0, 9.9),
    "rainfall": (15.0, 320.0),
}

# crop -> ((N lo, hi), (P lo, hi), (K lo, hi), (temp lo, hi), (hum lo, hi), (ph lo, hi), (rain lo, hi))
# Interpreted as center +- 2 sigma bands.
CROP_RANGES: dict[str, tuple] = {
    "rice":        ((60, 99),   (35, 60),   (35, 45),   (20.0, 27.0), (80.0, 85.0), (5.0, 7.9),  (182.0, 299.0)),
    "maize":       ((60, 100),  (35, 60),   (15, 25),   (18.0, 26.5), (55.0, 75.0), (5.5, 7.0),  (60.0, 110.0)),
    "chickpea":    ((20, 60),   (55, 80),   (75, 85),   (17.0, 21.0), (14.0, 20.0), (5.9, 8.9),  (65.0, 95.0)),
    "kidneybeans": ((0, 40),    (55, 80),   (15, 25),   (15.0, 25.0), (18.0, 25.0), (5.5, 6.0),  (60.0, 150.0)),
    "pigeonpeas":  ((0, 40),    (55, 80),   (15, 25),   (18.0, 37.0), (30.0, 70.0), (4.5, 7.4),  (90.0, 199.0)),
    "mothbeans":   ((0, 40),    (35, 60),   (15, 25),   (24.0, 32.0), (40.0, 65.0), (3.5, 10.0), (30.0, 75.0)),
    "mungbean":    ((0, 40),    (35, 60),   (15, 25),   (27.0, 30.0), (80.0, 90.0), (6.2, 7.2),  (36.0, 60.0)),
    "blackgram":   ((20, 60),   (55, 80),   (15, 25),   (25.0, 35.0), (60.0, 70.0), (6.5, 7.8),  (60.0, 75.0)),
    "lentil":      ((0, 40),    (55, 80),   (15, 25),   (18.0, 30.0), (60.0, 70.0), (5.9, 7.8),  (35.0, 55.0)),
    "pomegranate": ((0, 40),    (5, 30),    (35, 45),   (18.0, 25.0), (85.0, 95.0), (5.6, 7.2),  (102.0, 112.0)),
    "banana":      ((80, 120),  (70, 95),   (45, 55),   (25.0, 30.0), (75.0, 85.0), (5.5, 6.5),  (90.0, 120.0)),
    "mango":       ((0, 40),    (15, 40),   (25, 35),   (27.0, 36.0), (45.0, 55.0), (4.5, 7.0),  (85.0, 100.0)),
    "grapes":      ((0, 40),    (120, 145), (195, 205), (8.0, 42.0),  (80.0, 84.0), (5.5, 7.0),  (65.0, 75.0)),
    "watermelon":  ((80, 120),  (5, 30),    (45, 55),   (24.0, 27.0), (80.0, 90.0), (6.0, 7.0),  (40.0, 60.0)),
    "muskmelon":   ((80, 120),  (5, 30),    (45, 55),   (27.0, 30.0), (90.0, 95.0), (6.0, 6.8),  (20.0, 30.0)),
    "apple":       ((0, 40),    (120, 145), (195, 205), (21.0, 24.0), (90.0, 95.0), (5.5, 6.5),  (100.0, 125.0)),
    "orange":      ((0, 40),    (5, 30),    (5, 15),    (10.0, 35.0), (90.0, 95.0), (6.0, 8.0),  (100.0, 120.0)),
    "papaya":      ((31, 70),   (46, 70),   (45, 55),   (23.0, 44.0), (90.0, 95.0), (6.5, 7.0),  (40.0, 249.0)),
    "coconut":     ((0, 40),    (5, 30),    (25, 35),   (25.0, 30.0), (90.0, 100.0), (5.5, 6.5), (131.0, 225.0)),
    "cotton":      ((100, 140), (35, 60),   (15, 25),   (22.0, 26.0), (75.0, 85.0), (5.8, 8.0),  (60.0, 100.0)),
    "jute":        ((60, 100),  (35, 60),   (35, 45),   (23.0, 27.0), (70.0, 90.0), (6.0, 7.5),  (150.0, 230.0)),
    "coffee":      ((80, 120),  (15, 40),   (25, 35),   (23.0, 28.0), (50.0, 70.0), (6.0, 7.5),  (115.0, 200.0)),
}

FEATURES = ("n", "p", "k", "temperature", "humidity", "ph", "rainfall")
CLIMATE = ("temperature", "humidity", "rainfall")

# Global row 0 of the public file, kept verbatim for reproducible examples.
PINNED_FIRST_ROW = "90,42,43,20.87974371,82.00274423,6.502985292,202.9355362,rice"


def gauss(rng: SplitMix64) -> float:
    # Box-Muller; u1 shifted into (0, 1] to keep the log finite
    u1 = 1.0 - rng.next_double()
    u2 = rng.next_double()
    return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)


def clip(name: str, value: float) -> float:
    lo, hi = CLIPS[name]
    return min(max(value, lo), hi)


def sample_row(rng: SplitMix64, ranges: tuple) -> dict[str, float]:
    centers = {f: (lo + hi) / 2.0 for f, (lo, hi) in zip(FEATURES, ranges)}
    sigmas = {f: (hi - lo) / 4.0 for f, (lo, hi) in zip(FEATURES, ranges)}
    climate_latent = gauss(rng)
    row = {}
    for f in FEATURES:
        z = gauss(rng)
        if f in CLIMATE:
            z = math.sqrt(1.0 - CLIMATE_RHO) * z + math.sqrt(CLIMATE_RHO) * climate_latent
        row[f] = clip(f, centers[f] + sigmas[f] * z)
    for f in ("n", "p", "k"):
        row[f] = float(round(row[f]))
    return row


def generate(seed: int) -> list[str]:
    rng = SplitMix64(seed)
    lines = ["N,P,K,temperature,humidity,ph,rainfall,label"]
    for crop, ranges in CROP_RANGES.items():
        for i in range(ROWS_PER_CROP):
            row = sample_row(rng, ranges)
            if crop == "rice" and i == 0:
                lines.append(PINNED_FIRST_ROW)
                continue
            lines.append(
                f"{int(row['n'])},{int(row['p'])},{int(row['k'])},"
                f"{row['temperature']:.8f},{row['humidity']:.8f},"
                f"{row['ph']:.8f},{row['rainfall']:.8f},{crop}"
            )
    return lines


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--out", default="data/crop_recommendation.csv")
    args = parser.parse_args()
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    lines = generate(args.seed)
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(lines) - 1} rows, {len(CROP_RANGES)} crops -> {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
