"""Small fully-connected classifier over feature vectors."""

from __future__ import annotations

import numpy as np


def _softmax(z: np.ndarray) -> np.ndarray:
    z = z - z.max(axis=1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=1, keepdims=True)


class FeatureMLP:
    """ReLU MLP trained with minibatch SGD (momentum 0.9) on softmax
    cross-entropy.  Inputs are z-scored with statistics from the training
    split; constant columns pass through unscaled.
    """

    def __init__(self, hidden=(64,), lr=0.01, epochs=200, batch_size=32,
                 momentum=0.9, l2=0.0, seed=0):
        self.hidden = tuple(hidden)
        self.lr = lr
        self.epochs = epochs
        self.batch_size = batch_size
        self.momentum = momentum
        self.l2 = l2
        self.seed = seed
        self.classes_: np.ndarray | None = None
        self.weights_: list[np.ndarray] = []
        self.biases_: list[np.ndarray] = []
        self.mean_: np.ndarray | None = None
        self.scale_: np.ndarray | None = None
        self.loss_curve_: list[float] = []

    def _standardize(self, X: np.ndarray) -> np.ndarray:
        return (X - self.mean_) / self.scale_

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y)
        self.classes_, y_enc = np.unique(y, return_inverse=True)
        k = len(self.classes_)
        n, d = X.shape
        self.mean_ = X.mean(axis=0)
        std = X.std(axis=0)
        self.scale_ = np.where(std > 0, std, 1.0)
        Xs = self._standardize(X)

        rng = np.random.default_rng(self.seed)
        sizes = [d, *self.hidden, k]
        self.weights_, self.biases_ = [], []
        for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
            bound = np.sqrt(6.0 / (fan_in + fan_out))
            self.weights_.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
            self.biases_.append(np.zeros(fan_out))
        vel_w = [np.zeros_like(w) for w in self.weights_]
        vel_b = [np.zeros_like(b) for b in self.biases_]

        onehot = np.zeros((n, k))
        onehot[np.arange(n), y_enc] = 1.0
        self.loss_curve_ = []
        for _ in range(self.epochs):
            order = rng.permutation(n)
            epoch_loss = 0.0
            for start in range(0, n, self.batch_size):
                idx = order[start:start + self.batch_size]
                xb, yb = Xs[idx], onehot[idx]
                acts = [xb]
                for w, b in zip(self.weights_[:-1], self.biases_[:-1]):
                    acts.append(np.maximum(acts[-1] @ w + b, 0.0))
                logits = acts[-1] @ self.weights_[-1] + self.biases_[-1]
                proba = _softmax(logits)
                eps = 1e-12
                epoch_loss += -np.sum(yb * np.log(proba + eps))
                delta = (proba - yb) / len(idx)
                for layer in range(len(self.weights_) - 1, -1, -1):
                    gw = acts[layer].T @ delta + self.l2 * self.weights_[layer]
                    gb = delta.sum(axis=0)
                    if layer > 0:
                        delta = (delta @ self.weights_[layer].T) * (acts[layer] > 0)
                    vel_w[layer] = self.momentum * vel_w[layer] - self.lr * gw
                    vel_b[layer] = self.momentum * vel_b[layer] - self.lr * gb
                    self.weights_[layer] += vel_w[layer]
                    self.biases_[layer] += vel_b[layer]
            self.loss_curve_.append(epoch_loss / n)
        return self

    def predict_proba(self, X) -> np.ndarray:
        h = self._standardize(np.asarray(X, dtype=np.float64))
        for w, b in zip(self.weights_[:-1], self.biases_[:-1]):
            h = np.maximum(h @ w + b, 0.0)
        return _softmax(h @ self.weights_[-1] + self.biases_[-1])

    def predict(self, X) -> np.ndarray:
        return self.classes_[np.argmax(self.predict_proba(X), axis=1)]
