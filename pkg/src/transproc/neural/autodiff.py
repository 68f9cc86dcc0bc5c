"""Reverse-mode automatic differentiation on numpy arrays.

A Tensor wraps a float64 array plus the closure that routes its output
gradient to its parents.  backward() walks the tape in reverse topological
order from a scalar loss.  Gradients accumulate across reuse, so one
parameter may appear in many subexpressions.
"""

from __future__ import annotations

import numpy as np


class Tensor:
    __slots__ = ("data", "grad", "requires_grad", "_parents", "_backward")

    def __init__(self, data, requires_grad=False, parents=(), backward_fn=None):
        self.data = np.asarray(data, dtype=np.float64)
        self.grad = None
        self.requires_grad = bool(requires_grad)
        self._parents = parents
        self._backward = backward_fn

    @property
    def shape(self):
        return self.data.shape

    def __repr__(self):
        return f"Tensor(shape={self.data.shape}, grad={self.requires_grad})"

    def zero_grad(self):
        self.grad = None

    # operator sugar
    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __mul__(self, other):
        return mul(self, other)

    def __matmul__(self, other):
        return matmul(self, other)


def _as_tensor(x) -> Tensor:
    return x if isinstance(x, Tensor) else Tensor(x)


def _accumulate(t: Tensor, g: np.ndarray) -> None:
    if not t.requires_grad:
        return
    t.grad = g if t.grad is None else t.grad + g


def _unbroadcast(g: np.ndarray, shape: tuple) -> np.ndarray:
    while g.ndim > len(shape):
        g = g.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and g.shape[axis] != 1:
            g = g.sum(axis=axis, keepdims=True)
    return g


def _node(data, parents, backward_fn) -> Tensor:
    req = any(p.requires_grad for p in parents)
    return Tensor(data, requires_grad=req, parents=tuple(parents),
                  backward_fn=backward_fn if req else None)


def backward(loss: Tensor) -> None:
    """Populate .grad over the graph below a scalar loss."""
    if loss.data.ndim != 0 and loss.data.size != 1:
        raise ValueError("backward starts from a scalar")
    topo: list[Tensor] = []
    seen: set[int] = set()
    stack: list[tuple[Tensor, bool]] = [(loss, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            topo.append(node)
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        for p in node._parents:
            if id(p) not in seen and p.requires_grad:
                stack.append((p, False))
    loss.grad = np.ones_like(loss.data)
    for node in reversed(topo):
        if node._backward is not None and node.grad is not None:
            node._backward(node.grad)


# ---------------------------------------------------------------------------
# elementwise and linear ops


def add(a, b) -> Tensor:
    a, b = _as_tensor(a), _as_tensor(b)
    out_data = a.data + b.data

    def back(g):
        _accumulate(a, _unbroadcast(g, a.data.shape))
        _accumulate(b, _unbroadcast(g, b.data.shape))

    return _node(out_data, (a, b), back)


def sub(a, b) -> Tensor:
    a, b = _as_tensor(a), _as_tensor(b)
    out_data = a.data - b.data

    def back(g):
        _accumulate(a, _unbroadcast(g, a.data.shape))
        _accumulate(b, _unbroadcast(-g, b.data.shape))

    return _node(out_data, (a, b), back)


def mul(a, b) -> Tensor:
    a, b = _as_tensor(a), _as_tensor(b)
    out_data = a.data * b.data

    def back(g):
        _accumulate(a, _unbroadcast(g * b.data, a.data.shape))
        _accumulate(b, _unbroadcast(g * a.data, b.data.shape))

    return _node(out_data, (a, b), back)


def matmul(a, b) -> Tensor:
    """(..., m, k) @ (k, n): the right operand is a plain matrix."""
    a, b = _as_tensor(a), _as_tensor(b)
    out_data = a.data @ b.data

    def back(g):
        _accumulate(a, g @ b.data.T)
        ga = np.swapaxes(a.data, -1, -2) @ g
        _accumulate(b, ga.reshape(-1, *b.data.shape).sum(axis=0)
                    if ga.ndim > b.data.ndim else ga)

    return _node(out_data, (a, b), back)


def bmm(a, b) -> Tensor:
    """Batched matmul: (B, m, k) @ (B, k, n)."""
    a, b = _as_tensor(a), _as_tensor(b)
    out_data = np.einsum("bmk,bkn->bmn", a.data, b.data)

    def back(g):
        _accumulate(a, np.einsum("bmn,bkn->bmk", g, b.data))
        _accumulate(b, np.einsum("bmk,bmn->bkn", a.data, g))

    return _node(out_data, (a, b), back)


def tanh(a: Tensor) -> Tensor:
    out_data = np.tanh(a.data)

    def back(g):
        _accumulate(a, g * (1.0 - out_data * out_data))

    return _node(out_data, (a,), back)


def sigmoid(a: Tensor) -> Tensor:
    out_data = 1.0 / (1.0 + np.exp(-a.data))

    def back(g):
        _accumulate(a, g * out_data * (1.0 - out_data))

    return _node(out_data, (a,), back)


def relu(a: Tensor) -> Tensor:
    out_data = np.maximum(a.data, 0.0)

    def back(g):
        _accumulate(a, g * (a.data > 0.0))

    return _node(out_data, (a,), back)


def reshape(a: Tensor, shape) -> Tensor:
    old = a.data.shape
    out_data = a.data.reshape(shape)

    def back(g):
        _accumulate(a, g.reshape(old))

    return _node(out_data, (a,), back)


def transpose_last2(a: Tensor) -> Tensor:
    out_data = np.swapaxes(a.data, -1, -2)

    def back(g):
        _accumulate(a, np.swapaxes(g, -1, -2))

    return _node(out_data, (a,), back)


def concat(tensors, axis=-1) -> Tensor:
    tensors = [_as_tensor(t) for t in tensors]
    out_data = np.concatenate([t.data for t in tensors], axis=axis)
    sizes = [t.data.shape[axis] for t in tensors]
    offsets = np.cumsum([0] + sizes)

    def back(g):
        for t, lo, hi in zip(tensors, offsets[:-1], offsets[1:]):
            idx = [slice(None)] * g.ndim
            idx[axis if axis >= 0 else g.ndim + axis] = slice(lo, hi)
            _accumulate(t, g[tuple(idx)])

    return _node(out_data, tuple(tensors), back)


def stack_steps(tensors) -> Tensor:
    """Stack per-step (B, H) tensors into (B, T, H)."""
    tensors = [_as_tensor(t) for t in tensors]
    out_data = np.stack([t.data for t in tensors], axis=1)

    def back(g):
        for t_idx, t in enumerate(tensors):
            _accumulate(t, g[:, t_idx])

    return _node(out_data, tuple(tensors), back)


def sum_axis(a: Tensor, axis: int) -> Tensor:
    out_data = a.data.sum(axis=axis)

    def back(g):
        _accumulate(a, np.expand_dims(g, axis) * np.ones_like(a.data))

    return _node(out_data, (a,), back)


def mean_all(a: Tensor) -> Tensor:
    out_data = np.asarray(a.data.mean())
    n = a.data.size

    def back(g):
        _accumulate(a, np.full(a.data.shape, float(g) / n))

    return _node(out_data, (a,), back)


def gather_rows(table: Tensor, idx: np.ndarray) -> Tensor:
    """Embedding lookup: (V, D)[idx] with scatter-add gradient."""
    idx = np.asarray(idx)
    out_data = table.data[idx]

    def back(g):
        if table.requires_grad:
            gt = np.zeros_like(table.data)
            np.add.at(gt, idx, g)
            _accumulate(table, gt)

    return _node(out_data, (table,), back)


# ---------------------------------------------------------------------------
# structured ops


def conv2d_same(x: Tensor, kernels: Tensor, bias: Tensor) -> Tensor:
    """Stride-1 zero-padded convolution keeping spatial size.

    x: (B, C, H, W); kernels: (F, C, kh, kw) with odd kh, kw; bias: (F,).
    """
    B, C, H, W = x.data.shape
    F, C2, kh, kw = kernels.data.shape
    assert C == C2 and kh % 2 == 1 and kw % 2 == 1
    ph, pw = kh // 2, kw // 2
    xp = np.pad(x.data, ((0, 0), (0, 0), (ph, ph), (pw, pw)))
    cols = np.lib.stride_tricks.sliding_window_view(xp, (kh, kw), axis=(2, 3))
    out_data = (np.einsum("bchwuv,fcuv->bfhw", cols, kernels.data)
                + bias.data[None, :, None, None])

    def back(g):
        if kernels.requires_grad:
            _accumulate(kernels, np.einsum("bchwuv,bfhw->fcuv", cols, g))
        if bias.requires_grad:
            _accumulate(bias, g.sum(axis=(0, 2, 3)))
        if x.requires_grad:
            gp = np.pad(g, ((0, 0), (0, 0), (ph, ph), (pw, pw)))
            gcols = np.lib.stride_tricks.sliding_window_view(gp, (kh, kw), axis=(2, 3))
            flipped = kernels.data[:, :, ::-1, ::-1]
            _accumulate(x, np.einsum("bfhwuv,fcuv->bchw", gcols, flipped))

    return _node(out_data, (x, kernels, bias), back)


def _pool_window(size: int, grid: int, cell: int) -> tuple[int, int]:
    lo = (cell * size) // grid
    hi = -(-((cell + 1) * size) // grid)
    return lo, hi


def adaptive_max_pool2d(x: Tensor, sizes: np.ndarray, grid: int) -> Tensor:
    """Per-sample adaptive max pooling to a fixed (grid, grid) shape.

    ``sizes`` is a (B, 2) int array giving each sample's true (h, w); cells
    pool over [floor(k*h/g), ceil((k+1)*h/g)) so windows stay non-empty and
    may overlap when h < grid.  Cells never read padding beyond (h, w).
    """
    B, C, H, W = x.data.shape
    out_data = np.empty((B, C, grid, grid))
    argmax = np.empty((B, C, grid, grid, 2), dtype=np.int64)
    for b in range(B):
        h, w = int(sizes[b, 0]), int(sizes[b, 1])
        if not (1 <= h <= H and 1 <= w <= W):
            raise ValueError(f"pool size out of range: ({h}, {w}) in ({H}, {W})")
        for i in range(grid):
            r0, r1 = _pool_window(h, grid, i)
            for j in range(grid):
                c0, c1 = _pool_window(w, grid, j)
                window = x.data[b, :, r0:r1, c0:c1].reshape(C, -1)
                flat = np.argmax(window, axis=1)
                out_data[b, :, i, j] = window[np.arange(C), flat]
                argmax[b, :, i, j, 0] = r0 + flat // (c1 - c0)
                argmax[b, :, i, j, 1] = c0 + flat % (c1 - c0)

    def back(g):
        gx = np.zeros_like(x.data)
        for b in range(B):
            for c in range(C):
                for i in range(grid):
                    for j in range(grid):
                        r, s = argmax[b, c, i, j]
                        gx[b, c, r, s] += g[b, c, i, j]
        _accumulate(x, gx)

    return _node(out_data, (x,), back)


def dropout(x: Tensor, p: float, rng: np.random.Generator | None) -> Tensor:
    """Inverted dropout; pass rng=None for evaluation mode (identity)."""
    if rng is None or p <= 0.0:
        return x
    mask = (rng.random(x.data.shape) >= p) / (1.0 - p)
    return mul(x, Tensor(mask))


def softmax_cross_entropy(logits: Tensor, y_enc: np.ndarray) -> Tensor:
    """Mean negative log-likelihood over the batch; y_enc holds class ids."""
    z = logits.data - logits.data.max(axis=1, keepdims=True)
    e = np.exp(z)
    proba = e / e.sum(axis=1, keepdims=True)
    n = len(y_enc)
    nll = -np.log(proba[np.arange(n), y_enc] + 1e-300)
    out_data = np.asarray(nll.mean())

    def back(g):
        d = proba.copy()
        d[np.arange(n), y_enc] -= 1.0
        _accumulate(logits, float(g) * d / n)

    return _node(out_data, (logits,), back)
