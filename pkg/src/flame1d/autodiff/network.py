"""Small fully-connected networks evaluated on second-order jets.

Two architectures: a plain MLP, and a gated variant where every hidden
activation is blended between two learned streams computed from the input
(`mmlp`).  Weight matrices may optionally be stored in factorized form as a
per-output scale vector times a matrix (`rwf`), in which case both factors
are trainable.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .jet import Jet2, tanh

_ACTIVATIONS = {"tanh": tanh}


@dataclass(frozen=True)
class NetworkSpec:
    arch: str = "mlp"                       # "mlp" | "mmlp"
    widths: tuple = (1, 64, 64, 64, 1)
    activation: str = "tanh"
    rwf: bool = False

    def __post_init__(self):
        if self.arch not in ("mlp", "mmlp"):
            raise ValueError(f"unknown arch {self.arch!r}")
        if self.activation not in _ACTIVATIONS:
            raise ValueError(f"unknown activation {self.activation!r}")
        if self.widths[0] != 1:
            raise ValueError("input width must be 1")
        if self.widths[-1] < 1:
            raise ValueError("output width must be >= 1")
        hidden = self.widths[1:-1]
        if self.arch == "mmlp" and len(set(hidden)) > 1:
            raise ValueError("mmlp needs equal hidden widths")

    @property
    def n_out(self):
        return self.widths[-1]


@dataclass
class KappaParam:
    """A named trainable physics scalar (stored in its scaled form)."""
    value: float
    trainable: bool = True


@dataclass
class NetworkParams:
    spec: NetworkSpec
    tensors: dict = field(default_factory=dict)   # name -> ndarray
    kappa: dict = field(default_factory=dict)     # name -> KappaParam

    def trainable_names(self):
        names = list(self.tensors)
        names += [f"kappa.{k}" for k, p in self.kappa.items() if p.trainable]
        return names

    def get_array(self, name):
        if name.startswith("kappa."):
            return np.asarray(self.kappa[name[6:]].value, dtype=np.float64)
        return self.tensors[name]

    def set_array(self, name, value):
        if name.startswith("kappa."):
            self.kappa[name[6:]].value = float(value)
        else:
            self.tensors[name] = value

    def copy(self):
        return NetworkParams(
            self.spec,
            {k: v.copy() for k, v in self.tensors.items()},
            {k: KappaParam(p.value, p.trainable) for k, p in self.kappa.items()},
        )


def init_params(spec, seed, kappa=None):
    """Glorot-normal weights, zero biases, scale factors s = exp(N(1, 0.1)).

    Deterministic for a given seed; kappa is a {name: (value, trainable)}
    or {name: value} mapping copied into the parameter set.
    """
    rng = np.random.default_rng(seed)
    tensors = {}

    def dense(prefix, n_in, n_out, factorized):
        std = np.sqrt(2.0 / (n_in + n_out))
        w = rng.normal(0.0, std, size=(n_in, n_out))
        if factorized:
            tensors[f"{prefix}.M"] = w
            tensors[f"{prefix}.s"] = np.exp(rng.normal(1.0, 0.1, size=n_out))
        else:
            tensors[f"{prefix}.W"] = w
        tensors[f"{prefix}.b"] = np.zeros(n_out)

    widths = spec.widths
    for layer in range(len(widths) - 1):
        dense(f"L{layer}", widths[layer], widths[layer + 1], spec.rwf)
    if spec.arch == "mmlp":
        dense("U", widths[0], widths[1], spec.rwf)
        dense("V", widths[0], widths[1], spec.rwf)

    kp = {}
    for name, val in (kappa or {}).items():
        if isinstance(val, KappaParam):
            kp[name] = KappaParam(val.value, val.trainable)
        elif isinstance(val, tuple):
            kp[name] = KappaParam(float(val[0]), bool(val[1]))
        else:
            kp[name] = KappaParam(float(val))
    return NetworkParams(spec, tensors, kp)


def _weight(tensors, prefix, rwf):
    if rwf:
        return tensors[f"{prefix}.M"] * tensors[f"{prefix}.s"]
    return tensors[f"{prefix}.W"]


def _linear(tensors, prefix, rwf, a):
    w = _weight(tensors, prefix, rwf)
    b = tensors[f"{prefix}.b"]
    return Jet2(a.v @ w + b, a.d1 @ w, a.d2 @ w)


def forward_jet(spec, tensors, x):
    """Network output jet for an input jet x with slots of shape (N, 1).

    `tensors` holds ndarrays or reverse-mode Vars; output slots have shape
    (N, n_out).  Derivatives are exact w.r.t. whatever the input jet's
    derivative slots are seeded against.
    """
    act = _ACTIVATIONS[spec.activation]
    n_layers = len(spec.widths) - 1
    if spec.arch == "mmlp":
        gate_u = act(_linear(tensors, "U", spec.rwf, x))
        gate_v = act(_linear(tensors, "V", spec.rwf, x))
        a = x
        for layer in range(n_layers - 1):
            z = act(_linear(tensors, f"L{layer}", spec.rwf, a))
            a = z * gate_u + (1.0 - z) * gate_v
        return _linear(tensors, f"L{n_layers - 1}", spec.rwf, a)
    a = x
    for layer in range(n_layers - 1):
        a = act(_linear(tensors, f"L{layer}", spec.rwf, a))
    return _linear(tensors, f"L{n_layers - 1}", spec.rwf, a)


def output_column(out, j):
    """Column j of a forward_jet result as a jet of (N,) slots."""
    sel = (slice(None), j)
    return Jet2(out.v[sel], out.d1[sel], out.d2[sel])
