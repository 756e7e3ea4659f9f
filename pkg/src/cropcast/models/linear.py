"""Linear classifiers: one-vs-rest hinge-loss SVM and softmax regression.

Both work on scaled features with an appended bias input. The SVM does
per-sample subgradient steps over a fixed seeded visit order (the same
permutation every epoch; the raw training order is label-contiguous and
would starve early classes), step size eta0/(1 + eta0*lam*t), and predicts
with the average of the second half of the iterates. Fully deterministic
given the spec seed. Logistic regression is full-batch gradient descent
from zero weights and keeps its per-epoch loss history.
"""

from __future__ import annotations

import numpy as np

from ..dataset import MinMaxScaler
from ..rng import SplitMix64
from .base import ClassifierSpec, TrainedModel, as_probabilities


def _augment(x: np.ndarray) -> np.ndarray:
    return np.hstack([x, np.ones((len(x), 1))])


class LinearSVMModel(TrainedModel):
    kind = "svm"

    def __init__(self, spec, labels, scaler, weights):
        super().__init__(spec, labels, scaler)
        self.weights = weights  # (C, F+1)

    def _scores(self, x: np.ndarray) -> np.ndarray:
        margins = _augment(x) @ self.weights.T
        return as_probabilities(margins)


def fit_linear_svm(
    spec: ClassifierSpec,
    x: np.ndarray,
    y: np.ndarray,
    labels: tuple[str, ...],
    scaler: MinMaxScaler,
) -> LinearSVMModel:
    p = spec.params()
    lam, epochs, eta0 = p["lam"], p["epochs"], p["eta0"]
    xa = _augment(x)
    n, f = xa.shape
    n_classes = len(labels)
    order = list(range(n))
    SplitMix64(spec.seed).shuffle(order)
    w = np.zeros((n_classes, f))
    w_sum = np.zeros_like(w)
    signs = np.full((n, n_classes), -1.0)
    signs[np.arange(n), y] = 1.0
    total = epochs * n
    average_from = total // 2
    averaged = 0
    t = 0
    for _ in range(epochs):
        for i in order:
            t += 1
            eta = eta0 / (1.0 + eta0 * lam * t)
            row = xa[i]
            margins = w @ row
            active = signs[i] * margins < 1.0
            w *= 1.0 - eta * lam
            if active.any():
                w[active] += (eta * signs[i, active])[:, None] * row[None, :]
            if t > average_from:
                w_sum += w
                averaged += 1
    return LinearSVMModel(spec, labels, scaler, w_sum / averaged)


class LogisticRegressionModel(TrainedModel):
    kind = "lr"

    def __init__(self, spec, labels, scaler, weights, loss_history):
        super().__init__(spec, labels, scaler)
        self.weights = weights  # (F+1, C), last row is bias
        self.loss_history = loss_history

    def _scores(self, x: np.ndarray) -> np.ndarray:
        return as_probabilities(_augment(x) @ self.weights)


def fit_logistic_regression(
    spec: ClassifierSpec,
    x: np.ndarray,
    y: np.ndarray,
    labels: tuple[str, ...],
    scaler: MinMaxScaler,
) -> LogisticRegressionModel:
    p = spec.params()
    lr, epochs, l2 = p["learning_rate"], p["epochs"], p["l2"]
    xa = _augment(x)
    n, f = xa.shape
    n_classes = len(labels)
    w = np.zeros((f, n_classes))
    onehot = np.zeros((n, n_classes))
    onehot[np.arange(n), y] = 1.0
    losses = []
    for _ in range(epochs):
        probs = as_probabilities(xa @ w)
        data_loss = -np.log(np.clip(probs[np.arange(n), y], 1e-300, None)).mean()
        losses.append(float(data_loss + 0.5 * l2 * (w[:-1] ** 2).sum()))
        grad = xa.T @ (probs - onehot) / n
        grad[:-1] += l2 * w[:-1]  # bias row unregularized
        w -= lr * grad
    return LogisticRegressionModel(spec, labels, scaler, w, losses)
