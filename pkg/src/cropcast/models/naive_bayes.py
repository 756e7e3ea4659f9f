"""Gaussian naive Bayes with variance smoothing.

Per class and feature a Gaussian is fitted (population variance); every
variance gets var_smoothing * max-feature-variance added for numerical
floor. Scores are class posteriors.
"""

from __future__ import annotations

import numpy as np

from ..dataset import MinMaxScaler
from .base import ClassifierSpec, TrainedModel, as_probabilities

LOG_2PI = float(np.log(2.0 * np.pi))


class GaussianNBModel(TrainedModel):
    kind = "nb"

    def __init__(self, spec, labels, scaler, means, variances, log_priors):
        super().__init__(spec, labels, scaler)
        self.means = means          # (C, F)
        self.variances = variances  # (C, F), smoothed
        self.log_priors = log_priors

    def _log_posteriors(self, x: np.ndarray) -> np.ndarray:
        # sum over features of log N(x | mu, var), plus log prior
        diff = x[:, None, :] - self.means[None, :, :]
        ll = -0.5 * (LOG_2PI + np.log(self.variances)[None] + diff ** 2 / self.variances[None])
        return ll.sum(axis=2) + self.log_priors[None, :]

    def _scores(self, x: np.ndarray) -> np.ndarray:
        return as_probabilities(self._log_posteriors(x))


def fit_gaussian_nb(
    spec: ClassifierSpec,
    x: np.ndarray,
    y: np.ndarray,
    labels: tuple[str, ...],
    scaler: MinMaxScaler,
) -> GaussianNBModel:
    p = spec.params()
    n_classes = len(labels)
    n_features = x.shape[1]
    means = np.zeros((n_classes, n_features))
    variances = np.zeros((n_classes, n_features))
    counts = np.zeros(n_classes)
    for c in range(n_classes):
        rows = x[y == c]
        counts[c] = len(rows)
        means[c] = rows.mean(axis=0)
        variances[c] = rows.var(axis=0)
    epsilon = p["var_smoothing"] * float(x.var(axis=0).max())
    variances += epsilon
    log_priors = np.log(counts / counts.sum())
    return GaussianNBModel(spec, labels, scaler, means, variances, log_priors)
