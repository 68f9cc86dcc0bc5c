"""CART-style decision tree with Gini impurity and midpoint thresholds."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class _Node:
    feature: int = -1
    threshold: float = 0.0
    left: "_Node | None" = None
    right: "_Node | None" = None
    proba: np.ndarray | None = None    # set on leaves

    @property
    def is_leaf(self) -> bool:
        return self.proba is not None


def _gini_from_counts(counts: np.ndarray, total: np.ndarray) -> np.ndarray:
    """Gini impurity per row of class counts; zero rows give 0."""
    safe = np.where(total > 0, total, 1)
    p = counts / safe[:, None]
    g = 1.0 - np.sum(p * p, axis=1)
    return np.where(total > 0, g, 0.0)


class DecisionTree:
    """Binary splits on ``x <= threshold`` chosen by Gini gain.

    Candidate thresholds are midpoints between consecutive distinct sorted
    values.  Ties on impurity keep the first candidate in (feature, midpoint)
    order, which makes training deterministic without an RNG.
    """

    def __init__(self, max_depth=None, min_samples_split=2, max_features=None,
                 rng=None):
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.max_features = max_features
        self.rng = rng
        self.root_: _Node | None = None
        self.n_classes_ = 0
        self.classes_: np.ndarray | None = None

    # -- fitting ------------------------------------------------------------

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y)
        self.classes_, y_enc = np.unique(y, return_inverse=True)
        self.n_classes_ = len(self.classes_)
        self.root_ = self._grow(X, y_enc, depth=0)
        return self

    def _leaf(self, y_enc: np.ndarray) -> _Node:
        counts = np.bincount(y_enc, minlength=self.n_classes_).astype(np.float64)
        return _Node(proba=counts / counts.sum())

    def _candidate_features(self, d: int) -> np.ndarray:
        if self.max_features is None or self.max_features >= d:
            return np.arange(d)
        if self.rng is None:
            raise ValueError("max_features subsampling needs an rng")
        return np.sort(self.rng.choice(d, size=self.max_features, replace=False))

    def _grow(self, X, y_enc, depth) -> _Node:
        n = len(y_enc)
        if (n < self.min_samples_split
                or (self.max_depth is not None and depth >= self.max_depth)
                or len(np.unique(y_enc)) == 1):
            return self._leaf(y_enc)
        feat, thr = self._best_split(X, y_enc)
        if feat < 0:
            return self._leaf(y_enc)
        mask = X[:, feat] <= thr
        node = _Node(feature=feat, threshold=thr)
        node.left = self._grow(X[mask], y_enc[mask], depth + 1)
        node.right = self._grow(X[~mask], y_enc[~mask], depth + 1)
        return node

    def _best_split(self, X, y_enc) -> tuple[int, float]:
        n, d = X.shape
        k = self.n_classes_
        onehot = np.zeros((n, k))
        onehot[np.arange(n), y_enc] = 1.0
        best_feat, best_thr = -1, 0.0
        best_impurity = np.inf
        parent_counts = onehot.sum(axis=0)
        parent_gini = _gini_from_counts(parent_counts[None, :], np.array([float(n)]))[0]
        for feat in self._candidate_features(d):
            col = X[:, feat]
            order = np.argsort(col, kind="stable")
            sorted_col = col[order]
            # left cumulative class counts after each prefix
            cum = np.cumsum(onehot[order], axis=0)
            # split after position i is valid when value i differs from i+1
            distinct = sorted_col[:-1] < sorted_col[1:]
            if not distinct.any():
                continue
            idx = np.nonzero(distinct)[0]
            left_counts = cum[idx]
            left_n = (idx + 1).astype(np.float64)
            right_counts = parent_counts[None, :] - left_counts
            right_n = n - left_n
            impurity = (left_n * _gini_from_counts(left_counts, left_n)
                        + right_n * _gini_from_counts(right_counts, right_n)) / n
            j = int(np.argmin(impurity))
            if impurity[j] < best_impurity - 1e-15:
                best_impurity = impurity[j]
                best_feat = int(feat)
                best_thr = float((sorted_col[idx[j]] + sorted_col[idx[j] + 1]) / 2.0)
        if best_feat >= 0 and best_impurity >= parent_gini - 1e-15:
            return -1, 0.0
        return best_feat, best_thr

    # -- inference ----------------------------------------------------------

    def _leaf_proba(self, x) -> np.ndarray:
        node = self.root_
        while not node.is_leaf:
            node = node.left if x[node.feature] <= node.threshold else node.right
        return node.proba

    def predict_proba(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        return np.vstack([self._leaf_proba(x) for x in X])

    def predict(self, X) -> np.ndarray:
        proba = self.predict_proba(X)
        return self.classes_[np.argmax(proba, axis=1)]

    def depth(self) -> int:
        def walk(node):
            if node.is_leaf:
                return 0
            return 1 + max(walk(node.left), walk(node.right))
        return walk(self.root_)

    def node_count(self) -> int:
        def walk(node):
            if node.is_leaf:
                return 1
            return 1 + walk(node.left) + walk(node.right)
        return walk(self.root_)
