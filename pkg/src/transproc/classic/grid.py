"""Exhaustive hyperparameter search with inner cross-validation."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from ..splits import stratified_kfold, train_test_indices


def iter_grid(grid: dict):
    """Yield parameter dicts in deterministic (sorted-key, listed-value)
    order over the cartesian product."""
    if not grid:
        yield {}
        return
    keys = sorted(grid)
    for combo in itertools.product(*(grid[k] for k in keys)):
        yield dict(zip(keys, combo))


@dataclass
class GridResult:
    best_params: dict
    best_score: float
    scores: list[tuple[dict, float]] = field(default_factory=list)


class GridSearch:
    """Picks the parameter combination with the best mean inner-CV accuracy.

    Ties keep the earliest combination in iteration order.  ``factory`` maps
    a parameter dict to an unfitted model.
    """

    def __init__(self, factory, grid: dict, inner_k=3, seed=0):
        self.factory = factory
        self.grid = grid
        self.inner_k = inner_k
        self.seed = seed
        self.result_: GridResult | None = None
        self.model_ = None

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y)
        counts = np.unique(y, return_counts=True)[1]
        k = min(self.inner_k, int(counts.min()))
        scores = []
        if k >= 2:
            folds = stratified_kfold(y, k, seed=self.seed)
            for params in iter_grid(self.grid):
                accs = []
                for fold in range(k):
                    tr, te = train_test_indices(folds, fold)
                    model = self.factory(**params)
                    model.fit(X[tr], y[tr])
                    accs.append(float(np.mean(model.predict(X[te]) == y[te])))
                scores.append((params, float(np.mean(accs))))
        else:
            # too few instances per class to split: score on the train set
            for params in iter_grid(self.grid):
                model = self.factory(**params)
                model.fit(X, y)
                scores.append((params, float(np.mean(model.predict(X) == y))))
        best_params, best_score = scores[0]
        for params, score in scores[1:]:
            if score > best_score:
                best_params, best_score = params, score
        self.result_ = GridResult(best_params=best_params, best_score=best_score,
                                  scores=scores)
        self.model_ = self.factory(**best_params)
        self.model_.fit(X, y)
        self.classes_ = self.model_.classes_
        return self

    def predict(self, X):
        return self.model_.predict(X)

    def predict_proba(self, X):
        return self.model_.predict_proba(X)
