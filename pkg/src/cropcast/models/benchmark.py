"""Run the full classifier suite on one split and report the results.

Three renderings of the same report: a JSON document whose "metrics"
section is deterministic for a given dataset/split/spec set, a plain-text
table, and a compact algorithm->accuracy mapping for bar charts.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path

from ..dataset import Dataset, SplitSpec, stratified_split
from ..errors import BenchmarkError, CropcastError
from .base import ClassifierSpec, fit
from .metrics import EvalReport, evaluate

REPORT_FORMAT = "cropcast-benchmark"
REPORT_VERSION = 1


@dataclass(frozen=True)
class BenchmarkReport:
    rows: tuple[EvalReport, ...]
    split: SplitSpec
    dataset_fingerprint: str

    @property
    def accuracy_series(self) -> dict[str, float]:
        return {row.algorithm: row.accuracy for row in self.rows}

    def metrics_section(self) -> list[dict]:
        """Deterministic per-algorithm metrics (no timings)."""
        return [
            {
                "algorithm": row.algorithm,
                "accuracy": row.accuracy,
                "precision": row.precision,
                "recall": row.recall,
                "f1": row.f1,
            }
            for row in self.rows
        ]

    def to_json_dict(self) -> dict:
        return {
            "format": REPORT_FORMAT,
            "version": REPORT_VERSION,
            "dataset_fingerprint": self.dataset_fingerprint,
            "split": asdict(self.split),
            "metrics": self.metrics_section(),
            "timings": [
                {
                    "algorithm": row.algorithm,
                    "training_time": row.training_time,
                    "testing_time": row.testing_time,
                }
                for row in self.rows
            ],
            "chart": self.accuracy_series,
        }


def benchmark_suite(
    data: Dataset,
    split: SplitSpec,
    specs: list[ClassifierSpec],
    dataset_fingerprint: str = "",
) -> BenchmarkReport:
    """Fit and evaluate every spec on the same train/test split."""
    if not specs:
        raise BenchmarkError("suite", "no classifier specs given")
    train, test = stratified_split(data, split)
    rows = []
    for spec in specs:
        try:
            model = fit(spec, train)
            rows.append(evaluate(model, test))
        except CropcastError as exc:
            raise BenchmarkError(spec.algorithm_name, str(exc)) from exc
    return BenchmarkReport(rows=tuple(rows), split=split, dataset_fingerprint=dataset_fingerprint)


def format_table(report: BenchmarkReport) -> str:
    """Plain-text table: algorithm, times, and the four metrics."""
    headers = (
        "Algorithm",
        "Training Time",
        "Testing Time",
        "Accuracy (%)",
        "Precision (%)",
        "Recall (%)",
        "F1 (%)",
    )
    rows = [
        (
            r.algorithm,
            f"{r.training_time:.3f}",
            f"{r.testing_time:.3f}",
            f"{r.accuracy:.2f}",
            f"{r.precision:.2f}",
            f"{r.recall:.2f}",
            f"{r.f1:.2f}",
        )
        for r in report.rows
    ]
    widths = [max(len(h), *(len(row[i]) for row in rows)) for i, h in enumerate(headers)]
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)),
        "  ".join("-" * w for w in widths),
    ]
    lines += ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)) for row in rows]
    return "\n".join(lines) + "\n"


def write_report_files(report: BenchmarkReport, out_dir) -> dict[str, Path]:
    """Emit report.json, report.txt and accuracy_chart.json under out_dir."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "json": out / "report.json",
        "text": out / "report.txt",
        "chart": out / "accuracy_chart.json",
    }
    paths["json"].write_text(
        json.dumps(report.to_json_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    paths["text"].write_text(format_table(report), encoding="utf-8")
    paths["chart"].write_text(
        json.dumps(report.accuracy_series, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return paths
