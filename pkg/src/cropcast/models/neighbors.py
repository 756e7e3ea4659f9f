"""k-nearest neighbors on scaled features, Euclidean distance.

Tie rules: equal distances prefer the lower training index (stable sort);
equal vote counts prefer the class with the smaller summed neighbor
distance, then the lexicographically smaller label.
"""

from __future__ import annotations

import numpy as np

from ..dataset import MinMaxScaler
from .base import ClassifierSpec, TrainedModel
from ..errors import SpecError


class KNNModel(TrainedModel):
    kind = "knn"

    def __init__(self, spec, labels, scaler, x_train, y_train, k):
        super().__init__(spec, labels, scaler)
        self.x_train = x_train
        self.y_train = y_train
        self.k = k

    def _neighbors(self, x_row: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        d = np.sqrt(((self.x_train - x_row) ** 2).sum(axis=1))
        order = np.argsort(d, kind="stable")[: self.k]
        return order, d[order]

    def _scores(self, x: np.ndarray) -> np.ndarray:
        out = np.zeros((len(x), len(self.labels)))
        for i, row in enumerate(x):
            order, _ = self._neighbors(row)
            out[i] = np.bincount(self.y_train[order], minlength=len(self.labels)) / self.k
        return out

    def _tie_keys(self, x_scaled: np.ndarray, scores: np.ndarray) -> np.ndarray:
        order, dists = self._neighbors(x_scaled)
        sums = np.zeros(len(self.labels))
        np.add.at(sums, self.y_train[order], dists)
        return sums


def fit_knn(
    spec: ClassifierSpec,
    x: np.ndarray,
    y: np.ndarray,
    labels: tuple[str, ...],
    scaler: MinMaxScaler,
) -> KNNModel:
    k = spec.params()["k"]
    if k > len(y):
        raise SpecError(f"k={k} exceeds training size {len(y)}")
    return KNNModel(spec, labels, scaler, x.copy(), y.copy(), k)
