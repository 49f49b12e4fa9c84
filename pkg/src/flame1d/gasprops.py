"""Thermodynamic, transport, and kinetic property kernels.

Every function here is pure and written against the generic scalar ops in
:mod:`flame1d.autodiff.jet`, so it evaluates identically on plain floats,
numpy arrays, and second-order jets whose slots may be reverse-mode
variables.  Temperatures are clamped to [200, 6000] K before polynomial
evaluation.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .autodiff.jet import (clamp, exp, log, pow_clamped, powc, raw, sqrt,
                           where)
from .mechanism import T_CLAMP_HI, T_CLAMP_LO


@dataclass
class GasState:
    """Point state (T, p, Y). Fields may be numbers, arrays, or jets."""
    T: object
    p: object
    Y: list

    def __post_init__(self):
        tv = np.asarray(raw(self.T), dtype=np.float64)
        pv = np.asarray(raw(self.p), dtype=np.float64)
        if np.any(tv <= 0.0):
            raise ValueError("temperature must be positive")
        if np.any(pv <= 0.0):
            raise ValueError("pressure must be positive")


@dataclass
class TransportBundle:
    mu: object
    lam: object
    Dkm: list


def mean_molecular_weight(mech, Y):
    """W = (sum_k Y_k / W_k)^-1 in kg/mol."""
    acc = Y[0] / mech.species[0].weight
    for k in range(1, mech.n_species):
        acc = acc + Y[k] / mech.species[k].weight
    if np.any(raw(acc) <= 0.0):
        raise ValueError("mass fractions sum to zero")
    return 1.0 / acc


def mole_fractions(mech, Y):
    W = mean_molecular_weight(mech, Y)
    return [Y[k] * W / mech.species[k].weight for k in range(mech.n_species)]


def density(mech, state):
    """Ideal gas: rho = p W / (R T)."""
    W = mean_molecular_weight(mech, state.Y)
    return state.p * W / (mech.R * state.T)


def _poly4(coeffs, x):
    acc = coeffs[4]
    for c in (coeffs[3], coeffs[2], coeffs[1], coeffs[0]):
        acc = acc * x + c
    return acc


def _nasa_eval(coeffs, T, lnT):
    """(Cp/R, H/RT, S/R) for one 7-coefficient range."""
    a0, a1, a2, a3, a4, a5, a6 = coeffs
    cp_r = (((a4 * T + a3) * T + a2) * T + a1) * T + a0
    h_rt = ((((a4 / 5.0 * T + a3 / 4.0) * T + a2 / 3.0) * T + a1 / 2.0) * T
            + a0 + a5 / T)
    s_r = (((a4 / 4.0 * T + a3 / 3.0) * T + a2 / 2.0) * T + a1) * T \
        + a0 * lnT + a6
    return cp_r, h_rt, s_r


def species_thermo(mech, T, p):
    """Mass-based (c_pk, h_k, s_k) per species at (T, p).

    NASA-7 polynomials on the range selected by T_mid, converted to mass
    basis; the entropy carries the -R ln(p/p_ref) pressure correction.
    """
    Tc = clamp(T, T_CLAMP_LO, T_CLAMP_HI)
    lnT = log(Tc)
    R = mech.R
    press_corr = log(p / mech.p_ref)
    cp, h, s = [], [], []
    for sp in mech.species:
        low = _nasa_eval(sp.nasa_low, Tc, lnT)
        high = _nasa_eval(sp.nasa_high, Tc, lnT)
        mask = raw(Tc) < sp.t_mid
        cp_r = where(mask, low[0], high[0])
        h_rt = where(mask, low[1], high[1])
        s_r = where(mask, low[2], high[2])
        w = sp.weight
        cp.append(cp_r * (R / w))
        h.append(h_rt * Tc * (R / w))
        s.append((s_r - press_corr) * (R / w))
    return cp, h, s


def mixture_thermo(mech, state):
    """Mean (c_p, h, s); the entropy includes the ideal mixing term."""
    cp_k, h_k, s_k = species_thermo(mech, state.T, state.p)
    Y = state.Y
    cp = sum_scalars(cp_k[k] * Y[k] for k in range(mech.n_species))
    h = sum_scalars(h_k[k] * Y[k] for k in range(mech.n_species))
    X = mole_fractions(mech, state.Y)
    W = mean_molecular_weight(mech, state.Y)
    R = mech.R
    s_mol = None
    for k, sp in enumerate(mech.species):
        S_k = s_k[k] * sp.weight                 # molar species entropy
        mask = raw(X[k]) > 1e-300
        Xs = where(mask, X[k], 1.0)
        term = where(mask, (S_k - R * log(Xs)) * Xs, 0.0)
        s_mol = term if s_mol is None else s_mol + term
    return cp, h, s_mol / W


def sum_scalars(items):
    acc = None
    for item in items:
        acc = item if acc is None else acc + item
    return acc


def species_transport(mech, T, p):
    """Per-species (mu_k, lambda_k) and the pairwise D_kj matrix at p.

    Viscosity and conductivity come from the stored polynomial-in-ln(T)
    fits; binary diffusivities are stored at the reference pressure and
    scale as p_ref/p.
    """
    Tc = clamp(T, T_CLAMP_LO, T_CLAMP_HI)
    lnT = log(Tc)
    t14 = powc(Tc, 0.25)
    t12 = sqrt(Tc)
    mu, lam = [], []
    for sp in mech.species:
        root = t14 * _poly4(sp.visc_fit, lnT)
        if np.any(raw(root) < 0.0):
            raise ValueError(f"viscosity fit for {sp.name} negative in range")
        mu.append(root * root)
        lam.append(t12 * _poly4(sp.cond_fit, lnT))
    t32 = t12 * Tc
    scale = mech.p_ref / p
    K = mech.n_species
    D = [[None] * K for _ in range(K)]
    for k in range(K):
        for j in range(k, K):
            val = t32 * _poly4(mech.diff_fit[k, j], lnT) * scale
            D[k][j] = val
            D[j][k] = val
    return mu, lam, D


def mixture_viscosity(mech, X, mu_k):
    """Wilke combination rule."""
    W = [sp.weight for sp in mech.species]
    K = mech.n_species
    total = None
    for k in range(K):
        denom = None
        for j in range(K):
            phi = (1.0 / np.sqrt(8.0)) * (1.0 + W[k] / W[j]) ** -0.5 \
                * powc(1.0 + sqrt(mu_k[k] / mu_k[j]) * (W[j] / W[k]) ** 0.25, 2.0)
            contrib = phi * X[j]
            denom = contrib if denom is None else denom + contrib
        term = mu_k[k] * X[k] / denom
        total = term if total is None else total + term
    return total


def mixture_conductivity(mech, X, lam_k):
    """Half arithmetic / half harmonic mole average."""
    K = mech.n_species
    arith = sum_scalars(X[k] * lam_k[k] for k in range(K))
    harm = sum_scalars(X[k] / lam_k[k] for k in range(K))
    return 0.5 * (arith + 1.0 / harm)


def mixavg_diffusion(mech, Y, X, D_pairs):
    """Mixture-averaged diffusion coefficient of each species.

    D'_km = (1 - Y_k) / sum_{j != k} X_j / D_jk, with the denominator
    guarded: when Y_k -> 1 the numerator also vanishes and the guarded
    quotient stays finite.
    """
    K = mech.n_species
    out = []
    for k in range(K):
        denom = sum_scalars(X[j] / D_pairs[j][k] for j in range(K) if j != k)
        out.append((1.0 - Y[k]) / (denom + 1e-12))
    return out


def _flux_correction(mech, Y, j_star):
    total = sum_scalars(j_star)
    return [j_star[k] - Y[k] * total for k in range(mech.n_species)]


def diffusive_fluxes(mech, state, dXdx):
    """Corrected mixture-averaged species mass fluxes (kg/m^2/s).

    The uncorrected flux is computed as j*_k = -rho (W_k/W) D'_km dX_k/dx,
    which is the Y_k/X_k-free form of the diffusion-velocity expression, so
    vanishing mole fractions need no special handling.  The correction
    removes the net flux so that sum_k j_k = 0.
    """
    rho = density(mech, state)
    W = mean_molecular_weight(mech, state.Y)
    X = mole_fractions(mech, state.Y)
    _, _, D = species_transport(mech, state.T, state.p)
    Dkm = mixavg_diffusion(mech, state.Y, X, D)
    j_star = [-(rho * (mech.species[k].weight / W) * Dkm[k]) * dXdx[k]
              for k in range(mech.n_species)]
    return _flux_correction(mech, state.Y, j_star)


def reaction_rates(mech, state):
    """(k_f per reaction, q per reaction, omega_dot_k molar production).

    Concentrations [X_k] = rho Y_k / W_k are clamped at zero before
    fractional powers; omega_dot_k is in mol/(m^3 s).
    """
    rho = density(mech, state)
    conc = [rho * state.Y[k] / mech.species[k].weight
            for k in range(mech.n_species)]
    RT = mech.R * state.T
    kf_all, q_all = [], []
    omega = [None] * mech.n_species
    for rx in mech.reactions:
        kf = rx.A * exp(-rx.E_a / RT)
        if rx.b != 0.0:
            kf = kf * powc(state.T, rx.b)
        q = kf
        for k in rx.reactants:
            q = q * pow_clamped(conc[k], rx.orders[k])
        kf_all.append(kf)
        q_all.append(q)
        for k in range(mech.n_species):
            if rx.nu[k] != 0.0:
                term = rx.nu[k] * q
                omega[k] = term if omega[k] is None else omega[k] + term
    zero = 0.0 * rho
    omega = [zero if o is None else o for o in omega]
    return kf_all, q_all, omega
