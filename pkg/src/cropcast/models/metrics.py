"""Evaluation: accuracy plus macro precision/recall/F1 as percentages.

Macro means are taken over classes that occur in the test set; a class the
model never predicts contributes precision 0. Timing is wall clock.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from ..dataset import Dataset
from ..errors import LabelError
from .base import TrainedModel, predict_batch


@dataclass(frozen=True)
class EvalReport:
    algorithm: str
    training_time: float
    testing_time: float
    accuracy: float
    precision: float
    recall: float
    f1: float


def confusion_matrix(true_idx: np.ndarray, pred_idx: np.ndarray, n_classes: int) -> np.ndarray:
    m = np.zeros((n_classes, n_classes), dtype=np.int64)
    np.add.at(m, (true_idx, pred_idx), 1)
    return m


def macro_metrics(confusion: np.ndarray) -> tuple[float, float, float, float]:
    """(accuracy, precision, recall, f1) from a confusion matrix, in percent."""
    total = confusion.sum()
    accuracy = confusion.trace() / total
    present = confusion.sum(axis=1) > 0
    diag = np.diag(confusion).astype(np.float64)
    col_sums = confusion.sum(axis=0).astype(np.float64)
    row_sums = confusion.sum(axis=1).astype(np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        precision = np.where(col_sums > 0, diag / np.where(col_sums > 0, col_sums, 1), 0.0)
        recall = np.where(row_sums > 0, diag / np.where(row_sums > 0, row_sums, 1), 0.0)
        denom = precision + recall
        f1 = np.where(denom > 0, 2 * precision * recall / np.where(denom > 0, denom, 1), 0.0)
    return (
        100.0 * float(accuracy),
        100.0 * float(precision[present].mean()),
        100.0 * float(recall[present].mean()),
        100.0 * float(f1[present].mean()),
    )


def evaluate(m: TrainedModel, test: Dataset) -> EvalReport:
    if len(test) == 0:
        raise LabelError("test set is empty")
    label_pos = {label: i for i, label in enumerate(m.labels)}
    unseen = [label for label in test.labels if label not in label_pos]
    if unseen:
        raise LabelError(f"test set contains unseen label {unseen[0]!r}")

    start = time.perf_counter()
    predictions = predict_batch(m, test.features)
    testing_time = time.perf_counter() - start

    true_idx = np.array([label_pos[s.label] for s in test.samples])
    pred_idx = np.array([label_pos[label] for label in predictions])
    accuracy, precision, recall, f1 = macro_metrics(
        confusion_matrix(true_idx, pred_idx, len(m.labels))
    )
    return EvalReport(
        algorithm=m.spec.algorithm_name,
        training_time=m.fit_seconds,
        testing_time=testing_time,
        accuracy=accuracy,
        precision=precision,
        recall=recall,
        f1=f1,
    )
