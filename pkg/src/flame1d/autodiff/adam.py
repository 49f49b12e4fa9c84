"""Adam optimizer (bias-corrected first/second moments)."""
from __future__ import annotations

import numpy as np


class Adam:
    """Standard Adam over a dict of named parameter arrays.

    beta1 = 0.9, beta2 = 0.999, eps = 1e-8 unless overridden.  Moments start
    at zero, so a parameter whose gradient is identically zero is never
    moved.
    """

    def __init__(self, beta1=0.9, beta2=0.999, eps=1e-8):
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.m = {}
        self.v = {}
        self.t = 0

    def step(self, params, grads, lr):
        """Update `params` (name -> ndarray) in place from `grads`."""
        self.t += 1
        bc1 = 1.0 - self.beta1 ** self.t
        bc2 = 1.0 - self.beta2 ** self.t
        for name, g in grads.items():
            if name not in self.m:
                self.m[name] = np.zeros_like(g)
                self.v[name] = np.zeros_like(g)
            m = self.m[name]
            v = self.v[name]
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * (g * g)
            params[name] -= lr * (m / bc1) / (np.sqrt(v / bc2) + self.eps)


def lr_schedule(epoch, lr0=1e-3, decay=0.95, step=1000):
    """Staircase-decayed learning rate for the given in-stage epoch."""
    return lr0 * decay ** (epoch // step)
