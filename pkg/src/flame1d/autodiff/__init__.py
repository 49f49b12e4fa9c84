"""Self-contained differentiation and optimization.

Forward second-order jets in the spatial coordinate, a reverse-mode tape for
exact parameter gradients, MLP/MMLP networks with optional factorized
weights, and Adam.
"""
from __future__ import annotations

import numpy as np

from . import jet as ops
from .adam import Adam, lr_schedule
from .checkpoint import load_checkpoint, save_checkpoint
from .jet import Jet2, softmax
from .network import (KappaParam, NetworkParams, NetworkSpec, forward_jet,
                      init_params, output_column)
from .tape import Var, concatenate


def wrap_trainable(params):
    """Fresh leaf Vars over the current values of all trainable entries."""
    leaves = {}
    for name in params.trainable_names():
        leaves[name] = Var(params.get_array(name))
    return leaves


def loss_gradients(loss_fn, params):
    """Exact gradients of a scalar loss w.r.t. all trainable parameters.

    `loss_fn(leaves)` must build the loss from the given {name: Var}
    mapping.  Non-finite losses raise before any gradient is produced;
    parameters the loss never touches get zero gradients.
    """
    leaves = wrap_trainable(params)
    loss = loss_fn(leaves)
    value = loss.data if isinstance(loss, Var) else np.asarray(loss)
    if not np.isfinite(value):
        raise FloatingPointError(f"non-finite loss: {value}")
    loss.backward()
    grads = {}
    for name, leaf in leaves.items():
        grads[name] = (np.zeros_like(leaf.data) if leaf.grad is None
                       else np.asarray(leaf.grad))
    return grads


__all__ = [
    "Adam", "Jet2", "KappaParam", "NetworkParams", "NetworkSpec", "Var",
    "concatenate", "forward_jet", "init_params", "load_checkpoint",
    "loss_gradients", "lr_schedule", "ops", "output_column",
    "save_checkpoint", "softmax", "wrap_trainable",
]
