"""Stratified cross-validation splits."""

from __future__ import annotations

import numpy as np


def stratified_kfold(labels, k, seed=0):
    """Index folds balanced per class.

    Instances of each class are shuffled with the seed and dealt round-robin
    across folds starting at the fold with the fewest assigned so far (ties
    to the lowest fold id), so per-class fold counts differ by at most one.
    Returns a list of k index arrays (sorted within each fold) that
    partition range(n).
    """
    labels = np.asarray(labels)
    if k < 2:
        raise ValueError("k must be at least 2")
    rng = np.random.default_rng(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    for cls in np.unique(labels):
        idx = np.nonzero(labels == cls)[0]
        rng.shuffle(idx)
        start = int(np.argmin([len(f) for f in folds]))
        for offset, i in enumerate(idx):
            folds[(start + offset) % k].append(int(i))
    return [np.array(sorted(f), dtype=np.int64) for f in folds]


def train_test_indices(folds, test_fold):
    test = folds[test_fold]
    train = np.concatenate([f for i, f in enumerate(folds) if i != test_fold])
    return np.sort(train), test
