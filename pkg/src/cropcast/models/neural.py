"""Single-hidden-layer network: ReLU, softmax cross-entropy, full-batch GD.

Weights start from a seeded uniform Glorot draw (+-sqrt(6/(fan_in+fan_out)),
splitmix64 doubles filled row-major, first layer then second), so training
is reproducible everywhere.
"""

from __future__ import annotations

import numpy as np

from ..dataset import MinMaxScaler
from ..rng import SplitMix64
from .base import ClassifierSpec, TrainedModel, as_probabilities


def glorot_uniform(rng: SplitMix64, fan_in: int, fan_out: int) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    flat = np.array([rng.next_double() for _ in range(fan_in * fan_out)])
    return ((2.0 * flat - 1.0) * limit).reshape(fan_in, fan_out)


class NeuralNetModel(TrainedModel):
    kind = "nn"

    def __init__(self, spec, labels, scaler, w1, b1, w2, b2, loss_history):
        super().__init__(spec, labels, scaler)
        self.w1 = w1
        self.b1 = b1
        self.w2 = w2
        self.b2 = b2
        self.loss_history = loss_history

    def _scores(self, x: np.ndarray) -> np.ndarray:
        hidden = np.maximum(x @ self.w1 + self.b1, 0.0)
        return as_probabilities(hidden @ self.w2 + self.b2)


def fit_neural_net(
    spec: ClassifierSpec,
    x: np.ndarray,
    y: np.ndarray,
    labels: tuple[str, ...],
    scaler: MinMaxScaler,
) -> NeuralNetModel:
    p = spec.params()
    hidden_units, lr, epochs = p["hidden_units"], p["learning_rate"], p["epochs"]
    n, n_features = x.shape
    n_classes = len(labels)
    rng = SplitMix64(spec.seed)
    w1 = glorot_uniform(rng, n_features, hidden_units)
    b1 = np.zeros(hidden_units)
    w2 = glorot_uniform(rng, hidden_units, n_classes)
    b2 = np.zeros(n_classes)
    onehot = np.zeros((n, n_classes))
    onehot[np.arange(n), y] = 1.0
    losses = []
    for _ in range(epochs):
        pre = x @ w1 + b1
        hidden = np.maximum(pre, 0.0)
        probs = as_probabilities(hidden @ w2 + b2)
        losses.append(float(-np.log(np.clip(probs[np.arange(n), y], 1e-300, None)).mean()))
        delta_out = (probs - onehot) / n
        grad_w2 = hidden.T @ delta_out
        grad_b2 = delta_out.sum(axis=0)
        delta_hidden = (delta_out @ w2.T) * (pre > 0.0)
        grad_w1 = x.T @ delta_hidden
        grad_b1 = delta_hidden.sum(axis=0)
        w1 -= lr * grad_w1
        b1 -= lr * grad_b1
        w2 -= lr * grad_w2
        b2 -= lr * grad_b2
    return NeuralNetModel(spec, labels, scaler, w1, b1, w2, b2, losses)
