"""Bootstrap-aggregated decision trees with per-node feature subsampling."""

from __future__ import annotations

import math

import numpy as np

from .tree import DecisionTree


class RandomForest:
    """Averaged-probability ensemble of Gini trees.

    Each tree trains on a bootstrap resample of the data and considers a
    random sqrt(d) subset of features at every split.  Tree RNGs are spawned
    from one seed so the ensemble is reproducible and trees are independent.
    """

    def __init__(self, n_trees=100, max_depth=None, min_samples_split=2,
                 max_features="sqrt", seed=0):
        self.n_trees = n_trees
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.max_features = max_features
        self.seed = seed
        self.trees_: list[DecisionTree] = []
        self.classes_: np.ndarray | None = None

    def _resolve_max_features(self, d: int) -> int | None:
        if self.max_features is None:
            return None
        if self.max_features == "sqrt":
            return max(1, int(math.sqrt(d)))
        if isinstance(self.max_features, int):
            return min(self.max_features, d)
        raise ValueError(f"bad max_features: {self.max_features!r}")

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y)
        self.classes_ = np.unique(y)
        n, d = X.shape
        mf = self._resolve_max_features(d)
        self.trees_ = []
        seeds = np.random.SeedSequence(self.seed).spawn(self.n_trees)
        for ss in seeds:
            rng = np.random.default_rng(ss)
            idx = rng.integers(0, n, size=n)
            tree = DecisionTree(max_depth=self.max_depth,
                                min_samples_split=self.min_samples_split,
                                max_features=mf, rng=rng)
            # force a shared class set so probability rows line up
            Xb, yb = X[idx], y[idx]
            missing = np.setdiff1d(self.classes_, np.unique(yb))
            tree.fit(Xb, yb)
            if len(missing):
                tree = self._refit_aligned(tree, Xb, yb)
            self.trees_.append(tree)
        return self

    def _refit_aligned(self, tree: DecisionTree, Xb, yb) -> DecisionTree:
        """Pad a tree trained on a bootstrap that lost classes so its
        probability columns match the forest's class order."""
        full = self.classes_
        col_of = {c: i for i, c in enumerate(full)}
        mapping = np.array([col_of[c] for c in tree.classes_])

        def expand(node):
            if node.is_leaf:
                proba = np.zeros(len(full))
                proba[mapping] = node.proba
                node.proba = proba
            else:
                expand(node.left)
                expand(node.right)

        expand(tree.root_)
        tree.classes_ = full
        tree.n_classes_ = len(full)
        return tree

    def predict_proba(self, X) -> np.ndarray:
        total = np.zeros((len(X), len(self.classes_)))
        for tree in self.trees_:
            total += tree.predict_proba(X)
        return total / len(self.trees_)

    def predict(self, X) -> np.ndarray:
        return self.classes_[np.argmax(self.predict_proba(X), axis=1)]
