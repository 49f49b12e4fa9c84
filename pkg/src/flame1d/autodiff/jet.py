"""Second-order Taylor jets and the generic scalar math they ride on.

A ``Jet2`` carries a value and its first/second derivatives with respect to
one spatial coordinate.  Slots may hold plain numbers, numpy arrays, or
reverse-mode ``Var`` nodes, so the same physics kernel evaluates on bare
numbers (reference solvers, tests) and inside a differentiable training
graph.  The module-level functions (``exp``, ``log``, ``where``, ...)
dispatch on operand type and are the contract kernels are written against.
"""
from __future__ import annotations

import numpy as np

from .tape import Var
from .tape import where as var_where


# ---------------------------------------------------------------------------
# generic scalar ops: plain numbers / ndarrays, Var, Jet2
# ---------------------------------------------------------------------------

def raw(x):
    """Plain numeric payload of x (value slot for jets, data for Vars)."""
    if isinstance(x, Jet2):
        return raw(x.v)
    if isinstance(x, Var):
        return x.data
    return x


def exp(x):
    if isinstance(x, Jet2):
        ev = exp(x.v)
        return Jet2(ev, ev * x.d1, ev * (x.d1 * x.d1) + ev * x.d2)
    if isinstance(x, Var):
        return x.exp()
    return np.exp(x)


def log(x):
    if isinstance(x, Jet2):
        lv = log(x.v)
        inv = 1.0 / x.v
        d1 = inv * x.d1
        return Jet2(lv, d1, inv * x.d2 - d1 * d1)
    if isinstance(x, Var):
        return x.log()
    return np.log(x)


def sqrt(x):
    if isinstance(x, Jet2):
        sv = sqrt(x.v)
        d1 = 0.5 / sv * x.d1
        return Jet2(sv, d1, 0.5 / sv * x.d2 - 0.5 / x.v * (d1 * x.d1))
    if isinstance(x, Var):
        return x.sqrt()
    return np.sqrt(x)


def tanh(x):
    if isinstance(x, Jet2):
        tv = tanh(x.v)
        sech2 = 1.0 - tv * tv
        return Jet2(tv, sech2 * x.d1,
                    sech2 * x.d2 - 2.0 * tv * sech2 * (x.d1 * x.d1))
    if isinstance(x, Var):
        return x.tanh()
    return np.tanh(x)


def sigmoid(x):
    if isinstance(x, Jet2):
        sv = sigmoid(x.v)
        f1 = sv * (1.0 - sv)
        f2 = f1 * (1.0 - 2.0 * sv)
        return Jet2(sv, f1 * x.d1, f2 * (x.d1 * x.d1) + f1 * x.d2)
    if isinstance(x, Var):
        return x.sigmoid()
    return 1.0 / (1.0 + np.exp(-x))


def powc(x, p):
    """x**p for a plain-number exponent p."""
    if isinstance(x, Jet2):
        pv = powc(x.v, p)
        f1 = p * powc(x.v, p - 1.0)
        f2 = p * (p - 1.0) * powc(x.v, p - 2.0)
        return Jet2(pv, f1 * x.d1, f2 * (x.d1 * x.d1) + f1 * x.d2)
    if isinstance(x, Var):
        return x ** p
    return x ** p


def where(mask, a, b):
    """Select by a plain boolean mask (never differentiated through)."""
    if isinstance(a, Jet2) or isinstance(b, Jet2):
        a = a if isinstance(a, Jet2) else Jet2.const(a)
        b = b if isinstance(b, Jet2) else Jet2.const(b)
        return Jet2(where(mask, a.v, b.v),
                    where(mask, a.d1, b.d1),
                    where(mask, a.d2, b.d2))
    if isinstance(a, Var) or isinstance(b, Var):
        return var_where(mask, a, b)
    return np.where(mask, a, b)


def pow_clamped(x, p):
    """max(x, 0)**p with derivatives defined as 0 where x <= 0.

    Used for fractional reaction orders where a concentration can hit
    exactly zero.
    """
    mask = raw(x) > 0.0
    safe = where(mask, x, 1.0)
    return where(mask, powc(safe, p), 0.0)


def clamp(x, lo, hi):
    """Clamp to [lo, hi]; derivatives are zeroed outside the interval."""
    v = raw(x)
    out = where(v < lo, lo, x)
    return where(v > hi, hi, out)


# ---------------------------------------------------------------------------
# jets
# ---------------------------------------------------------------------------

class Jet2:
    """Value plus first and second derivative w.r.t. the spatial coordinate."""

    __slots__ = ("v", "d1", "d2")

    def __init__(self, v, d1, d2):
        self.v = v
        self.d1 = d1
        self.d2 = d2

    @staticmethod
    def const(c):
        return Jet2(c, 0.0, 0.0)

    @staticmethod
    def seed(x, slope=1.0):
        """Jet of the independent coordinate itself (d1 = slope, d2 = 0)."""
        return Jet2(x, slope if np.ndim(x) == 0 else np.full(np.shape(x), slope), 0.0)

    def __repr__(self):
        return f"Jet2(v={self.v!r}, d1={self.d1!r}, d2={self.d2!r})"

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Jet2):
            return Jet2(self.v + other.v, self.d1 + other.d1, self.d2 + other.d2)
        return Jet2(self.v + other, self.d1, self.d2)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet2):
            return Jet2(self.v - other.v, self.d1 - other.d1, self.d2 - other.d2)
        return Jet2(self.v - other, self.d1, self.d2)

    def __rsub__(self, other):
        return Jet2(other - self.v, -self.d1, -self.d2)

    def __neg__(self):
        return Jet2(-self.v, -self.d1, -self.d2)

    def __mul__(self, other):
        if isinstance(other, Jet2):
            return Jet2(self.v * other.v,
                        self.d1 * other.v + self.v * other.d1,
                        self.d2 * other.v + 2.0 * (self.d1 * other.d1)
                        + self.v * other.d2)
        return Jet2(self.v * other, self.d1 * other, self.d2 * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet2):
            q = self.v / other.v
            q1 = (self.d1 - q * other.d1) / other.v
            q2 = (self.d2 - 2.0 * (q1 * other.d1) - q * other.d2) / other.v
            return Jet2(q, q1, q2)
        inv = 1.0 / other
        return Jet2(self.v * inv, self.d1 * inv, self.d2 * inv)

    def __rtruediv__(self, other):
        return Jet2.const(other) / self

    def __pow__(self, p):
        return powc(self, p)

    # calculus helpers -------------------------------------------------------

    def shift(self):
        """Jet of this quantity's x-derivative.

        Only the value and first-derivative slots of the result are
        meaningful (the second would need third-order information, which a
        2-jet does not carry).
        """
        return Jet2(self.d1, self.d2, 0.0)


def softmax(logits):
    """Softmax over a list of scalar-like logits, returned as a list.

    Shift-invariant form: the max of the (detached) values is subtracted
    before exponentiation, which changes nothing analytically.
    """
    vals = [raw(z) for z in logits]
    m = vals[0]
    for v in vals[1:]:
        m = np.maximum(m, v)
    exps = [exp(z - m) for z in logits]
    total = exps[0]
    for e in exps[1:]:
        total = total + e
    return [e / total for e in exps]
