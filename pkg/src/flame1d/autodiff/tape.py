"""Reverse-mode automatic differentiation over numpy arrays.

A ``Var`` wraps an ndarray (or scalar) and records the operations applied to
it; ``backward()`` on a scalar-valued Var accumulates exact gradients into
every reachable leaf.  Constants (plain floats / ndarrays) mixed into the
arithmetic are treated as such and never enter the graph, which keeps graphs
small when most coefficients are fixed physics data.

Gradient accumulation follows creation order (descending), so repeated runs
of the same single-threaded computation reduce in a fixed order.
"""
from __future__ import annotations

import itertools

import numpy as np

_ids = itertools.count()


def _unbroadcast(grad, shape):
    """Sum `grad` down to `shape`, undoing numpy broadcasting."""
    if grad.shape == shape:
        return grad
    extra = grad.ndim - len(shape)
    if extra > 0:
        grad = grad.sum(axis=tuple(range(extra)))
    axes = tuple(i for i, s in enumerate(shape) if s == 1 and grad.shape[i] != 1)
    if axes:
        grad = grad.sum(axis=axes, keepdims=True)
    if grad.shape != shape:
        grad = grad.reshape(shape)
    return grad


class Var:
    """Node in the reverse-mode graph. `data` is always a float64 ndarray."""

    __slots__ = ("data", "grad", "_parents", "_vjp", "_id")

    # make `ndarray <op> Var` dispatch to our reflected methods
    __array_ufunc__ = None

    def __init__(self, data, parents=(), vjp=None):
        self.data = np.asarray(data, dtype=np.float64)
        self.grad = None
        self._parents = parents
        self._vjp = vjp
        self._id = next(_ids)

    @property
    def shape(self):
        return self.data.shape

    def __repr__(self):
        return f"Var(shape={self.data.shape}, id={self._id})"

    # ---- graph construction helpers -------------------------------------

    def _new(self, data, parents, vjp):
        return Var(data, parents, vjp)

    # ---- arithmetic ------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Var):
            a, b = self, other
            return Var(a.data + b.data, (a, b),
                       lambda g: (_unbroadcast(g, a.data.shape),
                                  _unbroadcast(g, b.data.shape)))
        return Var(self.data + other, (self,),
                   lambda g, s=self.data.shape: (_unbroadcast(g, s),))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Var):
            a, b = self, other
            return Var(a.data - b.data, (a, b),
                       lambda g: (_unbroadcast(g, a.data.shape),
                                  _unbroadcast(-g, b.data.shape)))
        return Var(self.data - other, (self,),
                   lambda g, s=self.data.shape: (_unbroadcast(g, s),))

    def __rsub__(self, other):
        return Var(other - self.data, (self,),
                   lambda g, s=self.data.shape: (_unbroadcast(-g, s),))

    def __neg__(self):
        return Var(-self.data, (self,),
                   lambda g, s=self.data.shape: (_unbroadcast(-g, s),))

    def __mul__(self, other):
        if isinstance(other, Var):
            a, b = self, other
            return Var(a.data * b.data, (a, b),
                       lambda g: (_unbroadcast(g * b.data, a.data.shape),
                                  _unbroadcast(g * a.data, b.data.shape)))
        return Var(self.data * other, (self,),
                   lambda g, c=other, s=self.data.shape: (_unbroadcast(g * c, s),))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Var):
            a, b = self, other
            out = Var(a.data / b.data, (a, b), None)
            out._vjp = lambda g: (_unbroadcast(g / b.data, a.data.shape),
                                  _unbroadcast(-g * out.data / b.data, b.data.shape))
            return out
        return Var(self.data / other, (self,),
                   lambda g, c=other, s=self.data.shape: (_unbroadcast(g / c, s),))

    def __rtruediv__(self, other):
        out = Var(other / self.data, (self,), None)
        out._vjp = lambda g, s=self.data.shape: (
            _unbroadcast(-g * out.data / self.data, s),)
        return out

    def __pow__(self, p):
        if not isinstance(p, (int, float)):
            raise TypeError("Var ** exponent must be a plain number")
        out = Var(self.data ** p, (self,), None)
        out._vjp = lambda g, s=self.data.shape: (
            _unbroadcast(g * p * self.data ** (p - 1), s),)
        return out

    def __matmul__(self, other):
        if isinstance(other, Var):
            a, b = self, other
            return Var(a.data @ b.data, (a, b),
                       lambda g: (g @ b.data.T, a.data.T @ g))
        return Var(self.data @ other, (self,),
                   lambda g, c=other: (g @ c.T,))

    def __rmatmul__(self, other):
        return Var(other @ self.data, (self,),
                   lambda g, c=other: (c.T @ g,))

    def __getitem__(self, idx):
        out = Var(self.data[idx], (self,), None)

        def vjp(g, idx=idx, shape=self.data.shape):
            full = np.zeros(shape)
            np.add.at(full, idx, g)
            return (full,)

        out._vjp = vjp
        return out

    # ---- transcendental --------------------------------------------------

    def exp(self):
        out = Var(np.exp(self.data), (self,), None)
        out._vjp = lambda g: (g * out.data,)
        return out

    def log(self):
        return Var(np.log(self.data), (self,),
                   lambda g: (g / self.data,))

    def sqrt(self):
        out = Var(np.sqrt(self.data), (self,), None)
        out._vjp = lambda g: (g * (0.5 / out.data),)
        return out

    def tanh(self):
        out = Var(np.tanh(self.data), (self,), None)
        out._vjp = lambda g: (g * (1.0 - out.data * out.data),)
        return out

    def sigmoid(self):
        out = Var(1.0 / (1.0 + np.exp(-self.data)), (self,), None)
        out._vjp = lambda g: (g * out.data * (1.0 - out.data),)
        return out

    # ---- shape / reductions ----------------------------------------------

    def reshape(self, *shape):
        if len(shape) == 1 and isinstance(shape[0], tuple):
            shape = shape[0]
        out = Var(self.data.reshape(shape), (self,), None)
        out._vjp = lambda g, s=self.data.shape: (g.reshape(s),)
        return out

    def sum(self):
        return Var(self.data.sum(), (self,),
                   lambda g, s=self.data.shape: (np.broadcast_to(g, s),))

    def mean(self):
        n = self.data.size
        return Var(self.data.mean(), (self,),
                   lambda g, s=self.data.shape: (np.broadcast_to(g / n, s),))

    # ---- backward --------------------------------------------------------

    def backward(self):
        """Accumulate gradients of this scalar into all reachable leaves."""
        if self.data.shape != ():
            raise ValueError("backward() requires a scalar Var")
        # collect reachable sub-graph (iterative; graphs can be deep)
        seen = {id(self): self}
        stack = [self]
        while stack:
            node = stack.pop()
            for p in node._parents:
                if id(p) not in seen:
                    seen[id(p)] = p
                    stack.append(p)
        order = sorted(seen.values(), key=lambda v: v._id, reverse=True)
        self.grad = np.ones(())
        for node in order:
            if node.grad is None or node._vjp is None:
                continue
            for parent, g in zip(node._parents, node._vjp(node.grad)):
                if parent.grad is None:
                    parent.grad = np.array(g, dtype=np.float64, copy=True)
                else:
                    parent.grad += g


def where(mask, a, b):
    """Elementwise select with a constant boolean mask.

    The mask never carries gradient; `a` and `b` may be Vars or constants.
    """
    av = a.data if isinstance(a, Var) else a
    bv = b.data if isinstance(b, Var) else b
    data = np.where(mask, av, bv)
    if isinstance(a, Var) and isinstance(b, Var):
        return Var(data, (a, b),
                   lambda g: (_unbroadcast(np.where(mask, g, 0.0), a.data.shape),
                              _unbroadcast(np.where(mask, 0.0, g), b.data.shape)))
    if isinstance(a, Var):
        return Var(data, (a,),
                   lambda g: (_unbroadcast(np.where(mask, g, 0.0), a.data.shape),))
    if isinstance(b, Var):
        return Var(data, (b,),
                   lambda g: (_unbroadcast(np.where(mask, 0.0, g), b.data.shape),))
    return data


def concatenate(parts):
    """Concatenate 1-D Vars/arrays into one Var (or array if no Var given)."""
    if not any(isinstance(p, Var) for p in parts):
        return np.concatenate([np.asarray(p, dtype=np.float64) for p in parts])
    datas = [p.data if isinstance(p, Var) else np.asarray(p, dtype=np.float64)
             for p in parts]
    sizes = [d.size for d in datas]
    offsets = np.cumsum([0] + sizes)
    parents = tuple(p for p in parts if isinstance(p, Var))

    def vjp(g):
        grads = []
        for p, lo, hi in zip(parts, offsets[:-1], offsets[1:]):
            if isinstance(p, Var):
                grads.append(g[lo:hi])
        return tuple(grads)

    return Var(np.concatenate(datas), parents, vjp)
