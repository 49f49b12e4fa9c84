"""Simplified freely-propagating premixed flame model.

Single-step Arrhenius kinetics with constant material properties and unit
Lewis number.  The energy balance reduces to one second-order ODE in T; all
other fields (u, rho, Y_F, p, omega) follow algebraically from T and the
flame speed, which is the eigenvalue of the problem.

Kernels are generic over plain numbers, arrays, and jets.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .autodiff.jet import exp, pow_clamped, raw, sqrt

ATM = 101325.0


@dataclass(frozen=True)
class Case1Params:
    """Model constants plus working condition (SI units)."""
    A: float = 1.4e8
    nu: float = 1.6
    E_a: float = 121417.2
    W: float = 0.02897
    lam: float = 0.026
    c_p: float = 1000.0
    q_F: float = 5.0e7
    R: float = 8.3145
    T_in: float = 298.0
    dTdx_in: float = 1.0e5
    p_in: float = ATM
    phi: float = 0.46
    L: float = 1.5e-3

    def __post_init__(self):
        for name in ("A", "nu", "E_a", "W", "lam", "c_p", "q_F", "R",
                     "T_in", "dTdx_in", "p_in", "phi", "L"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not 0.0 < self.phi < 1.0:
            raise ValueError("lean model: phi must lie in (0, 1)")

    @property
    def Y_F_in(self):
        # methane/oxygen bookkeeping: Y_F_in = phi / (4 + phi)
        return self.phi / (4.0 + self.phi)

    @property
    def rho_in(self):
        return self.p_in * self.W / (self.R * self.T_in)


def reaction_rate_c1(params, T, rho, Y_F):
    """omega = A exp(-E_a/RT) (rho Y_F)^nu, with rho*Y_F clamped at zero."""
    return params.A * exp(-params.E_a / (params.R * T)) \
        * pow_clamped(rho * Y_F, params.nu)


def adiabatic_temperature(params):
    """Outlet temperature for complete fuel consumption."""
    return params.T_in + params.q_F * params.Y_F_in / params.c_p


def derived_fields_c1(params, T, s_L, clamp_fuel=True):
    """(u, rho, Y_F, p, omega) as functions of T at flame speed s_L.

    Continuity and the momentum first integral are built in: rho*u equals
    rho_in*s_L and rho u^2 + p is conserved.  Y_F may go negative for
    T > T_adia; it is clamped only inside the reaction rate (pass
    clamp_fuel=False to skip computing omega).
    """
    RT_W = (params.R / params.W) * T
    c = s_L + params.R * params.T_in / (params.W * s_L)
    disc = c * c - 4.0 * RT_W
    if np.any(raw(disc) < 0.0):
        raise ValueError("state outside model validity: c^2 < 4RT/W")
    # rationalized root: no cancellation for small s_L
    u = 2.0 * RT_W / (c + sqrt(disc))
    rho = params.rho_in * s_L / u
    Y_F = params.Y_F_in + params.c_p * (params.T_in - T) / params.q_F
    p = rho * RT_W
    omega = reaction_rate_c1(params, T, rho, Y_F) if clamp_fuel else None
    return u, rho, Y_F, p, omega


def energy_residual_c1(params, T, dTdx, d2Tdx2, s_L):
    """rho_in s_L c_p dT/dx - lambda d2T/dx2 - omega q_F."""
    _, _, _, _, omega = derived_fields_c1(params, T, s_L)
    return params.rho_in * s_L * params.c_p * dTdx \
        - params.lam * d2Tdx2 - omega * params.q_F
