"""Bagged forest of CART trees with per-split feature subsampling.

Tree t draws its bootstrap and feature subsets from splitmix64 seeded with
root seed + t, so the ensemble is reproducible and independent of build
order.
"""

from __future__ import annotations

import numpy as np

from ..dataset import MinMaxScaler
from ..rng import MASK64, SplitMix64
from .base import ClassifierSpec, TrainedModel
from .tree import TreeNode, build_tree, leaf_votes


def bootstrap_indices(rng: SplitMix64, n: int) -> np.ndarray:
    """n with-replacement draws: i_j = randrange(n), j = 0..n-1."""
    return np.array([rng.randrange(n) for _ in range(n)], dtype=np.int64)


def vote_fractions(tree_preds: np.ndarray, n_classes: int) -> np.ndarray:
    """(n_trees, n_samples) class votes -> (n_samples, n_classes) fractions."""
    n_trees, n_samples = tree_preds.shape
    out = np.zeros((n_samples, n_classes))
    for col in range(n_samples):
        out[col] = np.bincount(tree_preds[:, col], minlength=n_classes)
    return out / n_trees


class RandomForestModel(TrainedModel):
    kind = "rf"

    def __init__(self, spec, labels, scaler, trees: list[TreeNode]):
        super().__init__(spec, labels, scaler)
        self.trees = trees

    def _scores(self, x: np.ndarray) -> np.ndarray:
        preds = np.zeros((len(self.trees), len(x)), dtype=np.int64)
        for t, root in enumerate(self.trees):
            leaf_votes(root, x, preds[t])
        return vote_fractions(preds, len(self.labels))


def fit_random_forest(
    spec: ClassifierSpec,
    x: np.ndarray,
    y: np.ndarray,
    labels: tuple[str, ...],
    scaler: MinMaxScaler,
) -> RandomForestModel:
    p = spec.params()
    n = len(y)
    trees = []
    for t in range(p["n_trees"]):
        rng = SplitMix64((spec.seed + t) & MASK64)
        idx = bootstrap_indices(rng, n)
        root = build_tree(
            x[idx],
            y[idx],
            len(labels),
            p["min_samples_split"],
            p["max_depth"],
            rng=rng,
            max_features=p["max_features"],
        )
        trees.append(root)
    return RandomForestModel(spec, labels, scaler, trees)
