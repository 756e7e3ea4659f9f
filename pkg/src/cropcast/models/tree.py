"""CART decision tree: Gini impurity, exhaustive midpoint split search.

Split quality is a pure function of partition counts, so fitting the same
rows on raw or affinely rescaled features picks identical partitions.
Routing compares against midpoint thresholds with a tiny relative slop:
a query that lands exactly on a threshold (common with integer features,
whose midpoints are integers too) must take the same branch on raw and
rescaled features, but the two spaces compute the midpoint and the query
through different expressions that can disagree by a few ulps. The slop
(2^-48 relative, four orders below any real gap in the data) absorbs that
discrepancy without changing any non-boundary decision.
"""

from __future__ import annotations

import numpy as np

from ..dataset import MinMaxScaler
from ..rng import SplitMix64
from .base import ClassifierSpec, TrainedModel

THRESHOLD_SLOP = 2.0 ** -48


def goes_left(values: np.ndarray, threshold: float) -> np.ndarray:
    tolerance = THRESHOLD_SLOP * np.maximum(np.abs(values), max(abs(threshold), 1.0))
    return values <= threshold + tolerance


class TreeNode:
    __slots__ = ("feature", "threshold", "left", "right", "counts")

    def __init__(self, feature=None, threshold=None, left=None, right=None, counts=None):
        self.feature = feature
        self.threshold = threshold
        self.left = left
        self.right = right
        self.counts = counts  # leaf only: per-class sample counts

    @property
    def is_leaf(self) -> bool:
        return self.counts is not None


def best_split(x: np.ndarray, y: np.ndarray, n_classes: int, feature_ids) -> tuple | None:
    """Lowest weighted Gini split over the gaps between consecutive distinct
    values.

    Ties resolve to the lowest feature index, then the lowest threshold:
    features are scanned ascending with a strict improvement test, and
    argmin picks the first (lowest-threshold) candidate within a feature.
    """
    n = len(y)
    best = None  # (gini, feature, threshold)
    onehot = np.zeros((n, n_classes), dtype=np.float64)
    for f in feature_ids:
        col = x[:, f]
        order = np.argsort(col, kind="stable")
        xs = col[order]
        boundaries = np.nonzero(xs[1:] != xs[:-1])[0]
        if boundaries.size == 0:
            continue
        onehot[:] = 0.0
        onehot[np.arange(n), y[order]] = 1.0
        cum = onehot.cumsum(axis=0)
        left = cum[boundaries]
        total = cum[-1]
        right = total - left
        n_left = (boundaries + 1).astype(np.float64)
        n_right = n - n_left
        gini_left = 1.0 - (left ** 2).sum(axis=1) / n_left ** 2
        gini_right = 1.0 - (right ** 2).sum(axis=1) / n_right ** 2
        weighted = (n_left * gini_left + n_right * gini_right) / n
        i = int(np.argmin(weighted))
        score = float(weighted[i])
        if best is None or score < best[0]:
            cut = boundaries[i]
            threshold = (xs[cut] + xs[cut + 1]) / 2.0
            best = (score, f, float(threshold))
    return best


def build_tree(
    x: np.ndarray,
    y: np.ndarray,
    n_classes: int,
    min_samples_split: int,
    max_depth: int | None,
    rng: SplitMix64 | None = None,
    max_features: int | None = None,
    depth: int = 0,
) -> TreeNode:
    counts = np.bincount(y, minlength=n_classes)
    if (
        len(y) < min_samples_split
        or np.count_nonzero(counts) == 1
        or (max_depth is not None and depth >= max_depth)
    ):
        return TreeNode(counts=counts)

    n_features = x.shape[1]
    if max_features is not None and max_features < n_features:
        feature_ids = rng.sample_indices(n_features, max_features)
    else:
        feature_ids = range(n_features)

    split = best_split(x, y, n_classes, feature_ids)
    if split is None:
        return TreeNode(counts=counts)
    _, feature, threshold = split
    mask = goes_left(x[:, feature], threshold)
    if not mask.any() or mask.all():
        return TreeNode(counts=counts)
    left = build_tree(x[mask], y[mask], n_classes, min_samples_split, max_depth, rng, max_features, depth + 1)
    right = build_tree(x[~mask], y[~mask], n_classes, min_samples_split, max_depth, rng, max_features, depth + 1)
    return TreeNode(feature=feature, threshold=threshold, left=left, right=right)


def _route(node: TreeNode, x: np.ndarray, rows: np.ndarray, visit) -> None:
    # rows are integer positions into the output, so writes land in place
    if node.is_leaf:
        visit(node, rows)
        return
    mask = goes_left(x[rows, node.feature], node.threshold)
    if mask.any():
        _route(node.left, x, rows[mask], visit)
    if not mask.all():
        _route(node.right, x, rows[~mask], visit)


def leaf_frequencies(node: TreeNode, x: np.ndarray, out: np.ndarray) -> None:
    """Fill `out` rows with the class frequency of the leaf each row lands in."""

    def visit(leaf: TreeNode, rows: np.ndarray) -> None:
        out[rows] = leaf.counts / leaf.counts.sum()

    _route(node, x, np.arange(len(x)), visit)


def leaf_votes(node: TreeNode, x: np.ndarray, out: np.ndarray) -> None:
    """Fill `out` with each row's leaf majority class (argmax; first index on ties,
    i.e. the lexicographically smallest label)."""

    def visit(leaf: TreeNode, rows: np.ndarray) -> None:
        out[rows] = int(np.argmax(leaf.counts))

    _route(node, x, np.arange(len(x)), visit)


class DecisionTreeModel(TrainedModel):
    kind = "dt"

    def __init__(self, spec, labels, scaler, root: TreeNode):
        super().__init__(spec, labels, scaler)
        self.root = root

    def _scores(self, x: np.ndarray) -> np.ndarray:
        out = np.zeros((len(x), len(self.labels)))
        leaf_frequencies(self.root, x, out)
        return out


def fit_decision_tree(
    spec: ClassifierSpec,
    x: np.ndarray,
    y: np.ndarray,
    labels: tuple[str, ...],
    scaler: MinMaxScaler,
) -> DecisionTreeModel:
    p = spec.params()
    root = build_tree(x, y, len(labels), p["min_samples_split"], p["max_depth"])
    return DecisionTreeModel(spec, labels, scaler, root)
