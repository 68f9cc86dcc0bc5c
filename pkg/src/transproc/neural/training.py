"""Adam training loop, batched prediction, and finite-difference checking."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import autodiff as ad


@dataclass(frozen=True)
class TrainConfig:
    lr: float = 1e-4
    epochs: int = 200
    batch_size: int = 20
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    seed: int = 0


class Adam:
    def __init__(self, params, cfg: TrainConfig):
        self.params = [p for _, p in params]
        self.cfg = cfg
        self.m = [np.zeros_like(p.data) for p in self.params]
        self.v = [np.zeros_like(p.data) for p in self.params]
        self.t = 0

    def step(self):
        c = self.cfg
        self.t += 1
        correct1 = 1.0 - c.beta1 ** self.t
        correct2 = 1.0 - c.beta2 ** self.t
        for i, p in enumerate(self.params):
            g = p.grad if p.grad is not None else np.zeros_like(p.data)
            self.m[i] = c.beta1 * self.m[i] + (1 - c.beta1) * g
            self.v[i] = c.beta2 * self.v[i] + (1 - c.beta2) * g * g
            m_hat = self.m[i] / correct1
            v_hat = self.v[i] / correct2
            p.data = p.data - c.lr * m_hat / (np.sqrt(v_hat) + c.eps)

    def zero_grad(self):
        for p in self.params:
            p.grad = None


def _batches(n, batch_size, rng):
    order = rng.permutation(n)
    for start in range(0, n, batch_size):
        yield order[start:start + batch_size]


def train_model(model, encoder, units, labels, cfg: TrainConfig,
                log_every=0, log=print):
    """Fit in place; returns the per-epoch mean loss curve.

    Batches are re-encoded per epoch slice so padding always fits the batch.
    Shuffling and dropout draw from independent streams spawned from the
    config seed.
    """
    labels = np.asarray(labels)
    classes, y_enc = np.unique(labels, return_inverse=True)
    if len(classes) != model.n_classes:
        raise ValueError(f"model has {model.n_classes} outputs "
                         f"but data has {len(classes)} classes")
    model.classes_ = classes
    ss = np.random.SeedSequence(cfg.seed).spawn(2)
    shuffle_rng = np.random.default_rng(ss[0])
    drop_rng = np.random.default_rng(ss[1])
    opt = Adam(model.parameters(), cfg)
    n = len(units)
    curve = []
    for epoch in range(cfg.epochs):
        total = 0.0
        for idx in _batches(n, cfg.batch_size, shuffle_rng):
            batch = encoder.encode([units[i] for i in idx])
            opt.zero_grad()
            logits = model.forward(batch, drop_rng=drop_rng)
            loss = ad.softmax_cross_entropy(logits, y_enc[idx])
            ad.backward(loss)
            opt.step()
            total += float(loss.data) * len(idx)
        curve.append(total / n)
        if log_every and (epoch + 1) % log_every == 0:
            log(f"epoch {epoch + 1}/{cfg.epochs} loss {curve[-1]:.4f}")
    return curve


def predict_proba(model, encoder, units, batch_size=64) -> np.ndarray:
    rows = []
    for start in range(0, len(units), batch_size):
        batch = encoder.encode(units[start:start + batch_size])
        logits = model.forward(batch, drop_rng=None).data
        z = logits - logits.max(axis=1, keepdims=True)
        e = np.exp(z)
        rows.append(e / e.sum(axis=1, keepdims=True))
    return np.vstack(rows) if rows else np.zeros((0, model.n_classes))


def predict(model, encoder, units, batch_size=64) -> np.ndarray:
    proba = predict_proba(model, encoder, units, batch_size)
    return model.classes_[np.argmax(proba, axis=1)]


def gradient_check(model, encoder, units, labels, rel_tol=1e-4,
                   probes_per_param=3, eps=1e-5, seed=0) -> float:
    """Max relative error between analytic and central-difference gradients.

    Probes a few coordinates of every parameter (dropout off so the loss is
    deterministic).  Relative error uses max(|a|, |n|, 1e-8) as scale;
    coordinates where both gradients vanish are skipped.
    """
    labels = np.asarray(labels)
    classes, y_enc = np.unique(labels, return_inverse=True)
    model.classes_ = classes
    batch = encoder.encode(units)
    rng = np.random.default_rng(seed)

    def loss_value() -> float:
        logits = model.forward(batch, drop_rng=None)
        return float(ad.softmax_cross_entropy(logits, y_enc).data)

    params = model.parameters()
    for _, p in params:
        p.grad = None
    logits = model.forward(batch, drop_rng=None)
    loss = ad.softmax_cross_entropy(logits, y_enc)
    ad.backward(loss)
    worst = 0.0
    for _, p in params:
        grad = p.grad if p.grad is not None else np.zeros_like(p.data)
        flat = p.data.reshape(-1)
        gflat = grad.reshape(-1)
        k = min(probes_per_param, flat.size)
        coords = rng.choice(flat.size, size=k, replace=False)
        for c in coords:
            orig = flat[c]
            flat[c] = orig + eps
            up = loss_value()
            flat[c] = orig - eps
            down = loss_value()
            flat[c] = orig
            numeric = (up - down) / (2 * eps)
            analytic = gflat[c]
            if abs(numeric) < 1e-12 and abs(analytic) < 1e-12:
                continue
            scale = max(abs(numeric), abs(analytic), 1e-8)
            worst = max(worst, abs(numeric - analytic) / scale)
    return worst
