#!/usr/bin/env python3
"""Regenerate the bundled one-step CH4/air mechanism data file.

Thermo blocks are GRI-Mech 3.0 NASA-7 coefficients.  Transport fit blocks
are produced here once from Chapman-Enskog kinetic theory with standard
Lennard-Jones parameters (Neufeld collision-integral fits) and a modified
Eucken conductivity, then least-squares fitted to the polynomial-in-ln(T)
forms the library evaluates:

    mu_k^(1/2) = T^(1/4) * sum_n b_n (ln T)^n
    lambda_k   = T^(1/2) * sum_n c_n (ln T)^n
    D_kj       = T^(3/2) * sum_n d_n (ln T)^n     (at p = 101325 Pa)

The emitted file is frozen repo data; this script exists for provenance and
only needs rerunning if species data changes.
"""
import numpy as np

R = 8.3145
P_REF = 101325.0
K_B = 1.380649e-23
N_A = 6.02214076e23

# name, W (kg/mol), eps/kB (K), sigma (angstrom)
SPECIES = [
    ("CH4", 16.043e-3, 141.400, 3.746),
    ("O2", 31.998e-3, 107.400, 3.458),
    ("CO2", 44.009e-3, 244.001, 3.763),
    ("H2O", 18.015e-3, 572.400, 2.605),
    ("N2", 28.014e-3, 97.530, 3.621),
]

# GRI-Mech 3.0 NASA-7 polynomials: (T_low, T_mid, T_high, low coeffs, high coeffs)
NASA7 = {
    "CH4": (200.0, 1000.0, 3500.0,
            (5.14987613e+00, -1.36709788e-02, 4.91800599e-05, -4.84743026e-08,
             1.66693956e-11, -1.02466476e+04, -4.64130376e+00),
            (7.48514950e-02, 1.33909467e-02, -5.73285809e-06, 1.22292535e-09,
             -1.01815230e-13, -9.46834459e+03, 1.84373180e+01)),
    "O2": (200.0, 1000.0, 3500.0,
           (3.78245636e+00, -2.99673416e-03, 9.84730201e-06, -9.68129509e-09,
            3.24372837e-12, -1.06394356e+03, 3.65767573e+00),
           (3.28253784e+00, 1.48308754e-03, -7.57966669e-07, 2.09470555e-10,
            -2.16717794e-14, -1.08845772e+03, 5.45323129e+00)),
    "CO2": (200.0, 1000.0, 3500.0,
            (2.35677352e+00, 8.98459677e-03, -7.12356269e-06, 2.45919022e-09,
             -1.43699548e-13, -4.83719697e+04, 9.90105222e+00),
            (3.85746029e+00, 4.41437026e-03, -2.21481404e-06, 5.23490188e-10,
             -4.72084164e-14, -4.87591660e+04, 2.27163806e+00)),
    "H2O": (200.0, 1000.0, 3500.0,
            (4.19864056e+00, -2.03643410e-03, 6.52040211e-06, -5.48797062e-09,
             1.77197817e-12, -3.02937267e+04, -8.49032208e-01),
            (3.03399249e+00, 2.17691804e-03, -1.64072518e-07, -9.70419870e-11,
             1.68200992e-14, -3.00042971e+04, 4.96677010e+00)),
    "N2": (300.0, 1000.0, 5000.0,
           (3.29867700e+00, 1.40824040e-03, -3.96322200e-06, 5.64151500e-09,
            -2.44485400e-12, -1.02089990e+03, 3.95037200e+00),
           (2.92664000e+00, 1.48797680e-03, -5.68476000e-07, 1.00970380e-10,
            -6.75335100e-15, -9.22797700e+02, 5.98052800e+00)),
}


def omega22(t_star):
    """Neufeld fit of the (2,2) reduced collision integral."""
    return (1.16145 * t_star ** -0.14874
            + 0.52487 * np.exp(-0.77320 * t_star)
            + 2.16178 * np.exp(-2.43787 * t_star))


def omega11(t_star):
    """Neufeld fit of the (1,1) reduced collision integral."""
    return (1.06036 * t_star ** -0.15610
            + 0.19300 * np.exp(-0.47635 * t_star)
            + 1.03587 * np.exp(-1.52996 * t_star)
            + 1.76474 * np.exp(-3.89411 * t_star))


def viscosity(w, eps_k, sigma, T):
    m = w / N_A
    return (5.0 / 16.0) * np.sqrt(np.pi * m * K_B * T) / (
        np.pi * (sigma * 1e-10) ** 2 * omega22(T / eps_k))


def cp_mass(name, T):
    t_low, t_mid, t_high, low, high = NASA7[name]
    a = np.where(T[:, None] < t_mid, np.array(low), np.array(high))
    cp_r = sum(a[:, n] * T ** n for n in range(5))
    w = dict((s[0], s[1]) for s in SPECIES)[name]
    return cp_r * R / w


def conductivity(name, w, eps_k, sigma, T):
    # modified Eucken: lambda = mu/W * (f_trans*Cv_trans + f_int*Cv_int)
    mu = viscosity(w, eps_k, sigma, T)
    cv = cp_mass(name, T) * w - R          # molar Cv
    cv_trans = 1.5 * R
    cv_int = cv - cv_trans
    return mu / w * (2.5 * cv_trans + 1.32 * np.maximum(cv_int, 0.0))


def binary_diffusion(w1, w2, e1, e2, s1, s2, T):
    m12 = (w1 / N_A) * (w2 / N_A) / (w1 / N_A + w2 / N_A)
    eps12 = np.sqrt(e1 * e2)
    sig12 = 0.5 * (s1 + s2) * 1e-10
    return (3.0 / 16.0) * np.sqrt(2.0 * np.pi * K_B ** 3 * T ** 3 / m12) / (
        P_REF * np.pi * sig12 ** 2 * omega11(T / eps12))


def fit(T, target, prefactor):
    """Least squares of target/prefactor against powers of ln(T)."""
    lt = np.log(T)
    A = np.vander(lt, 5, increasing=True)
    coef, *_ = np.linalg.lstsq(A, target / prefactor, rcond=None)
    rel = np.abs(A @ coef * prefactor / target - 1.0).max()
    return coef, rel


def main():
    T = np.geomspace(300.0, 3000.0, 200)
    lines = []
    lines.append("# One-step CH4/air mechanism data (5 species, 1 irreversible reaction).")
    lines.append("# Thermo: GRI-Mech 3.0 NASA-7 polynomials.")
    lines.append("# Transport fits: generated by tools/make_mechanism_data.py from")
    lines.append("# Chapman-Enskog theory with Lennard-Jones parameters; see that script.")
    lines.append("")
    lines.append("units mw g/mol")
    lines.append("")
    lines.append("species")
    for name, w, _, _ in SPECIES:
        lines.append(f"  {name:4s} {w * 1e3:.3f}")
    lines.append("end")
    for name, w, eps_k, sigma in SPECIES:
        t_low, t_mid, t_high, low, high = NASA7[name]
        lines.append("")
        lines.append(f"nasa7 {name} {t_low} {t_mid} {t_high}")
        lines.append("  low  " + " ".join(f"{c: .8e}" for c in low))
        lines.append("  high " + " ".join(f"{c: .8e}" for c in high))
        lines.append("end")
    for name, w, eps_k, sigma in SPECIES:
        mu = viscosity(w, eps_k, sigma, T)
        lam = conductivity(name, w, eps_k, sigma, T)
        bcoef, berr = fit(T, np.sqrt(mu), T ** 0.25)
        ccoef, cerr = fit(T, lam, T ** 0.5)
        print(f"{name}: visc fit max rel {berr:.2e}, cond fit max rel {cerr:.2e}")
        lines.append("")
        lines.append(f"transport-fits {name}")
        lines.append("  visc " + " ".join(f"{c: .10e}" for c in bcoef))
        lines.append("  cond " + " ".join(f"{c: .10e}" for c in ccoef))
        lines.append("end")
    lines.append("")
    lines.append("binary-diffusion-fits")
    for i, (n1, w1, e1, s1) in enumerate(SPECIES):
        for n2, w2, e2, s2 in SPECIES[i:]:
            d = binary_diffusion(w1, w2, e1, e2, s1, s2, T)
            dcoef, derr = fit(T, d, T ** 1.5)
            print(f"D {n1}-{n2}: fit max rel {derr:.2e}")
            lines.append(f"  {n1} {n2} " + " ".join(f"{c: .10e}" for c in dcoef))
    lines.append("end")
    lines.append("")
    lines.append("reaction CH4 + 2 O2 -> CO2 + 2 H2O")
    lines.append("  A 1.1e7")
    lines.append("  b 0.0")
    lines.append("  E_a 83680.0")
    lines.append("  order CH4 1.0")
    lines.append("  order O2 0.5")
    lines.append("end")
    out = "src/flame1d/data/1s_ch4_mp1.mech"
    with open(out, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {out}")
    # quick sanity prints
    print("N2 viscosity at 300 K:", viscosity(28.014e-3, 97.53, 3.621, np.array([300.0]))[0])
    print("N2 conductivity at 300 K:",
          conductivity("N2", 28.014e-3, 97.53, 3.621, np.array([300.0]))[0])


if __name__ == "__main__":
    main()
