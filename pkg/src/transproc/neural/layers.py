"""Parameterized layers built on the autodiff tape."""

from __future__ import annotations

import numpy as np

from . import autodiff as ad
from .autodiff import Tensor


def glorot(rng: np.random.Generator, shape) -> np.ndarray:
    fan_in, fan_out = shape[0], shape[-1]
    bound = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-bound, bound, size=shape)


class Dense:
    def __init__(self, rng, d_in, d_out, name):
        self.w = Tensor(glorot(rng, (d_in, d_out)), requires_grad=True)
        self.b = Tensor(np.zeros(d_out), requires_grad=True)
        self.name = name

    def __call__(self, x: Tensor) -> Tensor:
        return ad.add(ad.matmul(x, self.w), self.b)

    def parameters(self):
        return [(f"{self.name}.w", self.w), (f"{self.name}.b", self.b)]


class GRUCell:
    """Gated recurrent unit: h' = (1-z)*n + z*h with
    z = sigmoid(xWz + hUz + bz), r = sigmoid(xWr + hUr + br),
    n = tanh(xWn + r*(hUn) + bn).
    """

    def __init__(self, rng, d_in, d_hidden, name):
        self.name = name
        self.d_hidden = d_hidden
        self.params = {}
        for gate in ("z", "r", "n"):
            self.params[f"W{gate}"] = Tensor(glorot(rng, (d_in, d_hidden)),
                                             requires_grad=True)
            self.params[f"U{gate}"] = Tensor(glorot(rng, (d_hidden, d_hidden)),
                                             requires_grad=True)
            self.params[f"b{gate}"] = Tensor(np.zeros(d_hidden), requires_grad=True)

    def step(self, x: Tensor, h: Tensor) -> Tensor:
        p = self.params
        z = ad.sigmoid(ad.add(ad.add(ad.matmul(x, p["Wz"]), ad.matmul(h, p["Uz"])), p["bz"]))
        r = ad.sigmoid(ad.add(ad.add(ad.matmul(x, p["Wr"]), ad.matmul(h, p["Ur"])), p["br"]))
        n = ad.tanh(ad.add(ad.add(ad.matmul(x, p["Wn"]),
                                  ad.mul(r, ad.matmul(h, p["Un"]))), p["bn"]))
        one_minus_z = ad.sub(Tensor(np.ones_like(z.data)), z)
        return ad.add(ad.mul(one_minus_z, n), ad.mul(z, h))

    def parameters(self):
        return [(f"{self.name}.{k}", v) for k, v in sorted(self.params.items())]


class BiGRUEncoder:
    """Bidirectional GRU shared between both segments of a pair.

    run() consumes embedded steps (B, T, D) with a 0/1 mask (B, T); padded
    steps carry the hidden state through unchanged and are zeroed in the
    stacked output, so a pair's encoding does not depend on how its batch
    was padded.
    """

    def __init__(self, rng, d_in, d_hidden, name="encoder"):
        self.fwd = GRUCell(rng, d_in, d_hidden, f"{name}.fwd")
        self.bwd = GRUCell(rng, d_in, d_hidden, f"{name}.bwd")
        self.d_hidden = d_hidden
        self.name = name

    def _run_direction(self, cell, steps, masks, reverse: bool):
        B = steps[0].data.shape[0]
        h = Tensor(np.zeros((B, cell.d_hidden)))
        order = range(len(steps) - 1, -1, -1) if reverse else range(len(steps))
        outs = [None] * len(steps)
        for t in order:
            h_new = cell.step(steps[t], h)
            m = masks[t]
            h = ad.add(ad.mul(m, h_new), ad.mul(Tensor(1.0 - m.data), h))
            outs[t] = ad.mul(m, h)
        return outs

    def run(self, x: Tensor, mask: np.ndarray) -> Tensor:
        """(B, T, D), (B, T) -> per-step concat output (B, T, 2H)."""
        T = x.data.shape[1]
        step_tensors = [_slice_step(x, t) for t in range(T)]
        mask_tensors = [Tensor(mask[:, t:t + 1]) for t in range(T)]
        fwd_outs = self._run_direction(self.fwd, step_tensors, mask_tensors, reverse=False)
        bwd_outs = self._run_direction(self.bwd, step_tensors, mask_tensors, reverse=True)
        per_step = [ad.concat([f, b], axis=-1) for f, b in zip(fwd_outs, bwd_outs)]
        return ad.stack_steps(per_step)

    def parameters(self):
        return self.fwd.parameters() + self.bwd.parameters()


def _slice_step(x: Tensor, t: int) -> Tensor:
    out_data = x.data[:, t]

    def back(g):
        gx = np.zeros_like(x.data)
        gx[:, t] = g
        ad._accumulate(x, gx)

    return ad._node(out_data, (x,), back)


def masked_mean_over_time(out: Tensor, mask: np.ndarray) -> Tensor:
    """(B, T, H) with (B, T) mask -> (B, H); rows with empty masks give 0."""
    counts = mask.sum(axis=1, keepdims=True)
    inv = np.where(counts > 0, 1.0 / np.maximum(counts, 1.0), 0.0)
    summed = ad.sum_axis(ad.mul(out, Tensor(mask[:, :, None])), axis=1)
    return ad.mul(summed, Tensor(inv))
