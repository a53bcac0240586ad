"""Reverse-mode autodiff over float64 numpy arrays.

A recorded tape scoped to one loss evaluation: operations on :class:`Node`
build the graph, :func:`backward` walks it once and accumulates ``.grad`` on
every node, then the graph is dropped.  Nothing is retained across batches.

Every op in :mod:`ops` accepts either plain ndarrays or Nodes.  With plain
arrays it performs the identical numpy calls without recording, so a traced
forward pass and the untraced fast path produce bitwise-identical values.
"""

from __future__ import annotations

import numpy as np

from ..errors import NumericError


class Node:
    """One value in the tape: an ndarray plus how to push gradients back."""

    __slots__ = ("value", "grad", "parents", "vjp", "op")

    def __init__(self, value, parents=(), vjp=None, op="leaf"):
        self.value = np.asarray(value, dtype=np.float64)
        self.grad = None
        self.parents = parents
        self.vjp = vjp
        self.op = op

    @property
    def shape(self):
        return self.value.shape

    def __repr__(self):
        return f"Node(op={self.op}, shape={self.value.shape})"


def _is_node(x) -> bool:
    return isinstance(x, Node)


def _val(x):
    return x.value if isinstance(x, Node) else np.asarray(x, dtype=np.float64)


def _unbroadcast(grad: np.ndarray, shape: tuple) -> np.ndarray:
    """Sum `grad` down to `shape` (reverse of numpy broadcasting)."""
    if grad.shape == shape:
        return grad
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, dim in enumerate(shape):
        if dim == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


def backward(loss: Node, check_finite: bool = False) -> None:
    """Accumulate d(loss)/d(node) into ``node.grad`` for every node in the tape.

    `loss` must be scalar-valued.  Grad buffers are reset for the reachable
    subgraph before accumulation, so repeated calls do not double-count.
    """
    if loss.value.size != 1:
        raise ValueError(f"backward needs a scalar loss, got shape {loss.value.shape}")

    topo: list[Node] = []
    seen: set[int] = set()
    stack: list[tuple[Node, bool]] = [(loss, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            topo.append(node)
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        for p in node.parents:
            if id(p) not in seen:
                stack.append((p, False))

    for node in topo:
        node.grad = None
    loss.grad = np.ones_like(loss.value)

    for node in reversed(topo):
        if node.grad is None or node.vjp is None:
            continue
        if check_finite and not np.all(np.isfinite(node.grad)):
            raise NumericError(f"non-finite gradient flowing into op '{node.op}'")
        for parent, g in zip(node.parents, node.vjp(node.grad)):
            if g is None:
                continue
            # Accumulation always allocates (`+`, never `+=`), so aliasing a
            # view of another grad buffer on first assignment is safe.
            parent.grad = g if parent.grad is None else parent.grad + g


class _Ops:
    """Dual-mode numeric ops: ndarray in/out, or Node in/out when traced."""

    @staticmethod
    def add(a, b):
        out = _val(a) + _val(b)
        if not (_is_node(a) or _is_node(b)):
            return out
        parents = tuple(x for x in (a, b) if _is_node(x))

        def vjp(g):
            grads = []
            if _is_node(a):
                grads.append(_unbroadcast(g, a.value.shape))
            if _is_node(b):
                grads.append(_unbroadcast(g, b.value.shape))
            return grads

        return Node(out, parents, vjp, "add")

    @staticmethod
    def sub(a, b):
        out = _val(a) - _val(b)
        if not (_is_node(a) or _is_node(b)):
            return out
        parents = tuple(x for x in (a, b) if _is_node(x))

        def vjp(g):
            grads = []
            if _is_node(a):
                grads.append(_unbroadcast(g, a.value.shape))
            if _is_node(b):
                grads.append(_unbroadcast(-g, b.value.shape))
            return grads

        return Node(out, parents, vjp, "sub")

    @staticmethod
    def mul(a, b):
        av, bv = _val(a), _val(b)
        out = av * bv
        if not (_is_node(a) or _is_node(b)):
            return out
        parents = tuple(x for x in (a, b) if _is_node(x))

        def vjp(g):
            grads = []
            if _is_node(a):
                grads.append(_unbroadcast(g * bv, a.value.shape))
            if _is_node(b):
                grads.append(_unbroadcast(g * av, b.value.shape))
            return grads

        return Node(out, parents, vjp, "mul")

    @staticmethod
    def neg(a):
        out = -_val(a)
        if not _is_node(a):
            return out
        return Node(out, (a,), lambda g: (-g,), "neg")

    @staticmethod
    def matmul(a, b):
        av, bv = _val(a), _val(b)
        out = av @ bv
        if not (_is_node(a) or _is_node(b)):
            return out
        parents = tuple(x for x in (a, b) if _is_node(x))

        def vjp(g):
            grads = []
            if _is_node(a):
                grads.append(g @ bv.T)
            if _is_node(b):
                grads.append(av.T @ g)
            return grads

        return Node(out, parents, vjp, "matmul")

    @staticmethod
    def tanh(a):
        out = np.tanh(_val(a))
        if not _is_node(a):
            return out
        return Node(out, (a,), lambda g: (g * (1.0 - out * out),), "tanh")

    @staticmethod
    def sigmoid(a):
        av = _val(a)
        out = 0.5 * (np.tanh(0.5 * av) + 1.0)  # numerically stable logistic
        if not _is_node(a):
            return out
        return Node(out, (a,), lambda g: (g * out * (1.0 - out),), "sigmoid")

    @staticmethod
    def relu(a):
        av = _val(a)
        out = np.maximum(av, 0.0)
        if not _is_node(a):
            return out
        return Node(out, (a,), lambda g: (g * (av > 0.0),), "relu")

    @staticmethod
    def exp(a):
        out = np.exp(_val(a))
        if not _is_node(a):
            return out
        return Node(out, (a,), lambda g: (g * out,), "exp")

    @staticmethod
    def log(a):
        av = _val(a)
        out = np.log(av)
        if not _is_node(a):
            return out
        return Node(out, (a,), lambda g: (g / av,), "log")

    @staticmethod
    def square(a):
        av = _val(a)
        out = av * av
        if not _is_node(a):
            return out
        return Node(out, (a,), lambda g: (g * 2.0 * av,), "square")

    @staticmethod
    def sum(a, axis=None, keepdims=False):
        av = _val(a)
        out = av.sum(axis=axis, keepdims=keepdims)
        if not _is_node(a):
            return out

        def vjp(g):
            if axis is None:
                return (np.broadcast_to(g, av.shape).copy(),)
            gg = g if keepdims else np.expand_dims(g, axis)
            return (np.broadcast_to(gg, av.shape).copy(),)

        return Node(out, (a,), vjp, "sum")

    @staticmethod
    def mean(a):
        av = _val(a)
        out = av.mean()
        if not _is_node(a):
            return out
        n = av.size
        return Node(out, (a,), lambda g: (np.broadcast_to(g / n, av.shape).copy(),), "mean")

    @staticmethod
    def concat(parts, axis=1):
        vals = [_val(p) for p in parts]
        out = np.concatenate(vals, axis=axis)
        if not any(_is_node(p) for p in parts):
            return out
        parents = tuple(p for p in parts if _is_node(p))
        sizes = [v.shape[axis] for v in vals]
        offsets = np.cumsum([0] + sizes)

        def vjp(g):
            grads = []
            for p, off, size in zip(parts, offsets, sizes):
                if _is_node(p):
                    index = [slice(None)] * g.ndim
                    index[axis] = slice(off, off + size)
                    grads.append(g[tuple(index)])
            return grads

        return Node(out, parents, vjp, "concat")

    @staticmethod
    def slice_cols(a, start, stop):
        av = _val(a)
        out = av[:, start:stop]
        if not _is_node(a):
            return out

        def vjp(g):
            full = np.zeros_like(av)
            full[:, start:stop] = g
            return (full,)

        return Node(out, (a,), vjp, "slice_cols")

    @staticmethod
    def gather_rows(a, idx):
        """out[i] = a[i, idx[i]]; idx is a constant int vector."""
        av = _val(a)
        rows = np.arange(av.shape[0])
        out = av[rows, idx]
        if not _is_node(a):
            return out

        def vjp(g):
            full = np.zeros_like(av)
            np.add.at(full, (rows, idx), g)
            return (full,)

        return Node(out, (a,), vjp, "gather_rows")

    @staticmethod
    def logsumexp(a, axis=1):
        av = _val(a)
        m = av.max(axis=axis, keepdims=True)
        shifted = np.exp(av - m)
        out = np.log(shifted.sum(axis=axis)) + np.squeeze(m, axis=axis)
        if not _is_node(a):
            return out
        softmax = shifted / shifted.sum(axis=axis, keepdims=True)

        def vjp(g):
            return (np.expand_dims(g, axis) * softmax,)

        return Node(out, (a,), vjp, "logsumexp")

    @staticmethod
    def clip(a, lo, hi):
        """Clamp with pass-through gradient inside [lo, hi], zero outside."""
        av = _val(a)
        out = np.clip(av, lo, hi)
        if not _is_node(a):
            return out
        inside = (av > lo) & (av < hi)
        return Node(out, (a,), lambda g: (g * inside,), "clip")


ops = _Ops
