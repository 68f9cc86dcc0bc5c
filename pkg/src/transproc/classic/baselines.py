"""Chance baseline and model-combining ensemble."""

from __future__ import annotations

import numpy as np


class StratifiedDummy:
    """Predicts by drawing labels from the training class distribution.

    predict_proba returns the drawn label one-hot per row, so
    ``argmax(predict_proba) == predict`` holds and expected accuracy equals
    the sum of squared class priors.
    """

    def __init__(self, seed=0):
        self.seed = seed
        self.classes_: np.ndarray | None = None
        self.priors_: np.ndarray | None = None

    def fit(self, X, y):
        y = np.asarray(y)
        self.classes_, counts = np.unique(y, return_counts=True)
        self.priors_ = counts / counts.sum()
        return self

    def expected_accuracy(self) -> float:
        return float(np.sum(self.priors_ ** 2))

    def predict_proba(self, X) -> np.ndarray:
        rng = np.random.default_rng(self.seed)
        draws = rng.choice(len(self.classes_), size=len(X), p=self.priors_)
        proba = np.zeros((len(X), len(self.classes_)))
        proba[np.arange(len(X)), draws] = 1.0
        return proba

    def predict(self, X) -> np.ndarray:
        return self.classes_[np.argmax(self.predict_proba(X), axis=1)]


class VotingEnsemble:
    """Hard or soft vote over already-constructed member models.

    Members train on the same data.  Hard voting breaks ties toward the
    class listed first in the shared class order.
    """

    def __init__(self, members, mode="hard"):
        if mode not in ("hard", "soft"):
            raise ValueError(f"bad voting mode: {mode!r}")
        self.members = list(members)
        self.mode = mode
        self.classes_: np.ndarray | None = None

    def fit(self, X, y):
        for m in self.members:
            m.fit(X, y)
        self.classes_ = self.members[0].classes_
        for m in self.members[1:]:
            if not np.array_equal(m.classes_, self.classes_):
                raise RuntimeError("ensemble members disagree on class order")
        return self

    def predict_proba(self, X) -> np.ndarray:
        if self.mode == "soft":
            total = np.zeros((len(X), len(self.classes_)))
            for m in self.members:
                total += m.predict_proba(X)
            return total / len(self.members)
        votes = np.zeros((len(X), len(self.classes_)))
        col_of = {c: i for i, c in enumerate(self.classes_)}
        for m in self.members:
            pred = m.predict(X)
            for row, label in enumerate(pred):
                votes[row, col_of[label]] += 1.0
        return votes / len(self.members)

    def predict(self, X) -> np.ndarray:
        return self.classes_[np.argmax(self.predict_proba(X), axis=1)]
