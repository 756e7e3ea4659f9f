"""Classifier specs, the fitted-model interface, and ranked prediction.

All seven kinds consume min-max-scaled features; the scaler fitted on the
training split travels with the model so raw readings can be served
directly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from ..dataset import Dataset, MinMaxScaler, SensorReading, fit_scaler
from ..errors import DegenerateDataError, InputError, RankRangeError, SpecError

KINDS = ("dt", "nb", "svm", "lr", "rf", "knn", "nn")

ALGORITHM_NAMES = {
    "dt": "Decision Tree",
    "nb": "Gaussian Naive Bayes",
    "svm": "Support Vector Machine",
    "lr": "Logistic Regression",
    "rf": "Random Forest",
    "knn": "K-Nearest Neighbors",
    "nn": "Neural Network",
}

# Default hyperparameters per kind; every value can be overridden through
# ClassifierSpec.hyperparameters.
DEFAULT_HYPERPARAMETERS: dict[str, dict] = {
    "dt": {"min_samples_split": 2, "max_depth": None},
    "rf": {"n_trees": 100, "max_features": 2, "min_samples_split": 2, "max_depth": None},
    "nb": {"var_smoothing": 1e-9},
    "svm": {"lam": 1e-4, "epochs": 200, "eta0": 1.0},
    "lr": {"learning_rate": 0.5, "epochs": 2000, "l2": 1e-4},
    "knn": {"k": 5},
    "nn": {"hidden_units": 64, "learning_rate": 0.5, "epochs": 1000},
}

_POSITIVE_INT_PARAMS = {"min_samples_split", "n_trees", "max_features", "epochs", "k", "hidden_units"}
_POSITIVE_FLOAT_PARAMS = {"var_smoothing", "lam", "learning_rate", "l2", "eta0"}


@dataclass(frozen=True)
class ClassifierSpec:
    kind: str
    seed: int = 42
    hyperparameters: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SpecError(f"unknown classifier kind {self.kind!r}; expected one of {KINDS}")
        if not isinstance(self.seed, int) or self.seed < 0 or self.seed >= 2 ** 64:
            raise SpecError("seed must be a 64-bit unsigned integer")
        defaults = DEFAULT_HYPERPARAMETERS[self.kind]
        for name, value in self.hyperparameters.items():
            if name not in defaults:
                raise SpecError(f"{self.kind}: unknown hyperparameter {name!r}")
            if name == "max_depth":
                if value is not None and (not isinstance(value, int) or value < 1):
                    raise SpecError("max_depth must be None or a positive integer")
            elif name in _POSITIVE_INT_PARAMS:
                if not isinstance(value, int) or value < 1:
                    raise SpecError(f"{name} must be a positive integer")
            elif name in _POSITIVE_FLOAT_PARAMS:
                if not isinstance(value, (int, float)) or value <= 0:
                    raise SpecError(f"{name} must be positive")

    def params(self) -> dict:
        merged = dict(DEFAULT_HYPERPARAMETERS[self.kind])
        merged.update(self.hyperparameters)
        return merged

    @property
    def algorithm_name(self) -> str:
        return ALGORITHM_NAMES[self.kind]


@dataclass(frozen=True)
class RankedPrediction:
    label: str
    score: float


class TrainedModel:
    """Base for fitted classifiers. Immutable after fit; shareable.

    Subclasses implement `_scores(X)`: scaled feature rows -> (n, C) score
    matrix aligned with `self.labels` (lexicographically sorted). Scores
    are vote fractions or posteriors in [0, 1] per kind.
    """

    kind: str = ""

    def __init__(self, spec: ClassifierSpec, labels: tuple[str, ...], scaler: MinMaxScaler):
        self.spec = spec
        self.labels = labels
        self.scaler = scaler
        self.fit_seconds: float = 0.0

    def _scores(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _tie_keys(self, x_scaled: np.ndarray, scores: np.ndarray) -> np.ndarray:
        """Secondary ascending sort keys for equal scores; default none."""
        return np.zeros(len(self.labels))

    def scores_for_reading(self, r: SensorReading) -> tuple[np.ndarray, np.ndarray]:
        vec = r.as_array()
        if not np.all(np.isfinite(vec)):
            raise InputError("reading contains non-finite values")
        x = self.scaler.transform(vec)
        scores = self._scores(x[None, :])[0]
        return x, scores


def fit(spec: ClassifierSpec, train: Dataset) -> TrainedModel:
    """Fit one classifier on the training split; deterministic given (spec, train)."""
    from . import forest, linear, naive_bayes, neighbors, neural, tree

    if len(train) == 0:
        raise DegenerateDataError("training set is empty")
    labels = train.labels
    if len(labels) < 2:
        raise DegenerateDataError(f"training set has {len(labels)} class(es); need >= 2")

    scaler = fit_scaler(train)
    x = scaler.transform(train.features)
    label_pos = {label: i for i, label in enumerate(labels)}
    y = np.array([label_pos[s.label] for s in train.samples], dtype=np.int64)

    fitters = {
        "dt": tree.fit_decision_tree,
        "rf": forest.fit_random_forest,
        "nb": naive_bayes.fit_gaussian_nb,
        "svm": linear.fit_linear_svm,
        "lr": linear.fit_logistic_regression,
        "knn": neighbors.fit_knn,
        "nn": neural.fit_neural_net,
    }
    start = time.perf_counter()
    model = fitters[spec.kind](spec, x, y, labels, scaler)
    model.fit_seconds = time.perf_counter() - start
    return model


def predict(m: TrainedModel, r: SensorReading) -> str:
    return predict_topk(m, r, 1)[0].label


def predict_topk(m: TrainedModel, r: SensorReading, k: int) -> list[RankedPrediction]:
    """The k highest-scoring labels, scores non-increasing.

    Order: score descending, then the model's tie key ascending, then label
    lexicographic.
    """
    n_classes = len(m.labels)
    if not 1 <= k <= n_classes:
        raise RankRangeError(f"k must be in [1, {n_classes}], got {k}")
    x_scaled, scores = m.scores_for_reading(r)
    ties = m._tie_keys(x_scaled, scores)
    order = sorted(range(n_classes), key=lambda c: (-scores[c], ties[c], m.labels[c]))
    return [RankedPrediction(m.labels[c], float(scores[c])) for c in order[:k]]


def predict_batch(m: TrainedModel, x_raw: np.ndarray) -> list[str]:
    """Vectorized top-1 prediction for evaluation; same tie rules as predict."""
    x = m.scaler.transform(x_raw)
    scores = m._scores(x)
    out = []
    for i in range(len(x)):
        ties = m._tie_keys(x[i], scores[i])
        best = min(range(len(m.labels)), key=lambda c: (-scores[i][c], ties[c], m.labels[c]))
        out.append(m.labels[best])
    return out


def default_specs(seed: int = 42) -> list[ClassifierSpec]:
    """One spec per kind with default hyperparameters, benchmark order."""
    order = ("dt", "nb", "svm", "lr", "rf", "knn", "nn")
    return [ClassifierSpec(kind=kind, seed=seed) for kind in order]


def check_finite_matrix(x: np.ndarray) -> None:
    if not np.all(np.isfinite(x)):
        raise InputError("feature matrix contains non-finite values")


def as_probabilities(log_weights: np.ndarray) -> np.ndarray:
    """Rows of log weights -> normalized probabilities (stable softmax)."""
    z = log_weights - log_weights.max(axis=1, keepdims=True)
    p = np.exp(z)
    p /= p.sum(axis=1, keepdims=True)
    return p
