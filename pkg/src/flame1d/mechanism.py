"""Chemical mechanism data model, file parser, and composition utilities.

The mechanism file is human-readable text with `species`, `nasa7`,
`transport-fits`, `binary-diffusion-fits`, and `reaction` blocks (see the
bundled ``data/1s_ch4_mp1.mech`` and the README for the schema).  All values
are SI except molecular weights, which may be given in g/mol via a
``units mw g/mol`` header.

A parsed ``Mechanism`` is immutable and safe for concurrent reads.
"""
from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field

import numpy as np

R_UNIVERSAL = 8.3145          # J/(mol K)
P_REF = 101325.0              # Pa
T_CLAMP_LO = 200.0            # polynomial evaluation clamp (K)
T_CLAMP_HI = 6000.0


class MechanismError(ValueError):
    """Schema or validation failure while loading a mechanism file."""


@dataclass(frozen=True)
class SpeciesData:
    name: str
    weight: float                       # kg/mol
    t_low: float
    t_mid: float
    t_high: float
    nasa_low: tuple                     # 7 coefficients, T < t_mid
    nasa_high: tuple                    # 7 coefficients, T >= t_mid
    visc_fit: tuple                     # 5 coefficients, sqrt(mu) = T^1/4 poly(lnT)
    cond_fit: tuple                     # 5 coefficients, lambda = T^1/2 poly(lnT)


@dataclass(frozen=True)
class ReactionData:
    A: float                            # pre-exponential (SI, mol/m^3 basis)
    b: float                            # temperature exponent
    E_a: float                          # J/mol
    orders: tuple                       # per-species concentration exponent
    nu: tuple                           # signed stoichiometric coefficients

    @property
    def reactants(self):
        return tuple(k for k, o in enumerate(self.orders) if o != 0.0)


@dataclass(frozen=True)
class Mechanism:
    species: tuple
    reactions: tuple
    diff_fit: np.ndarray                # (K, K, 5); D_kj = T^3/2 poly(lnT) at p_ref
    p_ref: float = P_REF
    R: float = R_UNIVERSAL
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index",
                           {s.name: k for k, s in enumerate(self.species)})
        self.diff_fit.setflags(write=False)

    @property
    def n_species(self):
        return len(self.species)

    @property
    def names(self):
        return tuple(s.name for s in self.species)

    @property
    def weights(self):
        return np.array([s.weight for s in self.species])

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise MechanismError(f"species {name!r} not in mechanism") from None


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _floats(tokens, n, where):
    if len(tokens) != n:
        raise MechanismError(f"{where}: expected {n} numbers, got {len(tokens)}")
    try:
        return tuple(float(t) for t in tokens)
    except ValueError as exc:
        raise MechanismError(f"{where}: {exc}") from None


def _parse_equation(text, names, where):
    """'CH4 + 2 O2 -> CO2 + 2 H2O' -> signed stoichiometric coefficients."""
    if "->" not in text:
        raise MechanismError(f"{where}: reaction equation needs '->'")
    lhs, rhs = text.split("->")
    nu = np.zeros(len(names))

    def add(side, sign):
        for term in side.split("+"):
            tokens = term.split()
            if not tokens:
                raise MechanismError(f"{where}: empty reaction term")
            if len(tokens) == 1:
                coeff, name = 1.0, tokens[0]
            elif len(tokens) == 2:
                coeff, name = float(tokens[0]), tokens[1]
            else:
                raise MechanismError(f"{where}: bad reaction term {term!r}")
            if name not in names:
                raise MechanismError(f"{where}: unknown species {name!r}")
            nu[names.index(name)] += sign * coeff

    add(lhs, -1.0)
    add(rhs, +1.0)
    return nu


def parse_mechanism(path):
    """Parse and fully validate a mechanism file."""
    with open(path) as fh:
        raw_lines = fh.readlines()

    mw_scale = 1.0
    names, weights = [], []
    nasa = {}
    transport = {}
    diff_entries = {}
    reactions_raw = []

    block = None
    ctx = None
    for lineno, raw in enumerate(raw_lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"line {lineno}"
        tokens = line.split()
        if block is None:
            head = tokens[0]
            if head == "units":
                if tokens[1:] == ["mw", "g/mol"]:
                    mw_scale = 1e-3
                elif tokens[1:] == ["mw", "kg/mol"]:
                    mw_scale = 1.0
                else:
                    raise MechanismError(f"{where}: unsupported units {line!r}")
            elif head == "species":
                block = "species"
            elif head == "nasa7":
                if len(tokens) != 5:
                    raise MechanismError(f"{where}: nasa7 header needs "
                                         "'nasa7 NAME T_low T_mid T_high'")
                block, ctx = "nasa7", {
                    "name": tokens[1],
                    "ranges": _floats(tokens[2:], 3, where)}
            elif head == "transport-fits":
                if len(tokens) != 2:
                    raise MechanismError(f"{where}: transport-fits header needs a species name")
                block, ctx = "transport", {"name": tokens[1]}
            elif head == "binary-diffusion-fits":
                block = "diffusion"
            elif head == "reaction":
                block, ctx = "reaction", {"equation": line[len("reaction"):].strip(),
                                          "fields": {}, "orders": {}, "line": lineno}
            else:
                raise MechanismError(f"{where}: unexpected {head!r} outside a block")
            continue

        if line == "end":
            if block == "nasa7":
                nasa[ctx["name"]] = ctx
            elif block == "transport":
                transport[ctx["name"]] = ctx
            elif block == "reaction":
                reactions_raw.append(ctx)
            block, ctx = None, None
            continue

        if block == "species":
            vals = _floats(tokens[1:], 1, where)
            if tokens[0] in names:
                raise MechanismError(f"{where}: duplicate species {tokens[0]!r}")
            names.append(tokens[0])
            weights.append(vals[0])
        elif block == "nasa7":
            if tokens[0] not in ("low", "high"):
                raise MechanismError(f"{where}: nasa7 rows are 'low' or 'high'")
            ctx[tokens[0]] = _floats(tokens[1:], 7, where)
        elif block == "transport":
            if tokens[0] not in ("visc", "cond"):
                raise MechanismError(f"{where}: transport rows are 'visc' or 'cond'")
            ctx[tokens[0]] = _floats(tokens[1:], 5, where)
        elif block == "diffusion":
            if len(tokens) != 7:
                raise MechanismError(f"{where}: diffusion row needs 'NAME NAME c0..c4'")
            pair = (tokens[0], tokens[1])
            coeffs = _floats(tokens[2:], 5, where)
            for key in (pair, pair[::-1]):
                if key in diff_entries and diff_entries[key] != coeffs:
                    raise MechanismError(
                        f"{where}: conflicting diffusion fit for pair {key}")
            diff_entries[pair] = coeffs
            diff_entries[pair[::-1]] = coeffs
        elif block == "reaction":
            if tokens[0] == "order":
                ctx["orders"][tokens[1]] = _floats(tokens[2:], 1, where)[0]
            elif tokens[0] in ("A", "b", "E_a"):
                ctx["fields"][tokens[0]] = _floats(tokens[1:], 1, where)[0]
            else:
                raise MechanismError(f"{where}: unknown reaction field {tokens[0]!r}")

    if block is not None:
        raise MechanismError(f"unterminated {block!r} block at end of file")
    if not names:
        raise MechanismError("no species block")

    species = []
    for name, w in zip(names, weights):
        if name not in nasa:
            raise MechanismError(f"species {name!r}: missing nasa7 block")
        if name not in transport:
            raise MechanismError(f"species {name!r}: missing transport-fits block")
        t_low, t_mid, t_high = nasa[name]["ranges"]
        sp = SpeciesData(
            name=name, weight=w * mw_scale,
            t_low=t_low, t_mid=t_mid, t_high=t_high,
            nasa_low=nasa[name].get("low"), nasa_high=nasa[name].get("high"),
            visc_fit=transport[name].get("visc"),
            cond_fit=transport[name].get("cond"))
        if sp.nasa_low is None or sp.nasa_high is None:
            raise MechanismError(f"species {name!r}: nasa7 block needs low and high rows")
        if sp.visc_fit is None or sp.cond_fit is None:
            raise MechanismError(f"species {name!r}: transport block needs visc and cond rows")
        species.append(sp)

    K = len(names)
    diff_fit = np.zeros((K, K, 5))
    for i, ni in enumerate(names):
        for j, nj in enumerate(names):
            if (ni, nj) not in diff_entries:
                raise MechanismError(f"missing binary-diffusion fit for pair {ni}-{nj}")
            diff_fit[i, j] = diff_entries[(ni, nj)]

    reactions = []
    for rx in reactions_raw:
        where = f"reaction at line {rx['line']}"
        nu = _parse_equation(rx["equation"], names, where)
        for fname in ("A", "b", "E_a"):
            if fname not in rx["fields"]:
                raise MechanismError(f"{where}: missing field {fname!r}")
        orders = np.zeros(K)
        for k in range(K):
            if nu[k] < 0:
                orders[k] = -nu[k]
        for oname, oval in rx["orders"].items():
            if oname not in names:
                raise MechanismError(f"{where}: order for unknown species {oname!r}")
            orders[names.index(oname)] = oval
        reactions.append(ReactionData(
            A=rx["fields"]["A"], b=rx["fields"]["b"], E_a=rx["fields"]["E_a"],
            orders=tuple(orders), nu=tuple(nu)))

    mech = Mechanism(tuple(species), tuple(reactions), diff_fit)
    _validate(mech)
    return mech


def _nasa_cp_r(coeffs, T):
    acc = 0.0
    for c in reversed(coeffs[:5]):
        acc = acc * T + c
    return acc


def _validate(mech):
    for sp in mech.species:
        if sp.weight <= 0:
            raise MechanismError(f"species {sp.name!r}: nonpositive weight")
        if not (sp.t_low < sp.t_mid < sp.t_high):
            raise MechanismError(f"species {sp.name!r}: needs T_low < T_mid < T_high")
        lo = _nasa_cp_r(sp.nasa_low, sp.t_mid)
        hi = _nasa_cp_r(sp.nasa_high, sp.t_mid)
        if abs(lo - hi) > 1e-3 * abs(lo):
            raise MechanismError(
                f"species {sp.name!r}: cp discontinuous at T_mid "
                f"({lo:.6g} vs {hi:.6g})")
    W = mech.weights
    for i, rx in enumerate(mech.reactions):
        if rx.A <= 0:
            raise MechanismError(f"reaction {i}: nonpositive A")
        if not np.all(np.isfinite(rx.orders)):
            raise MechanismError(f"reaction {i}: non-finite orders")
        nu = np.asarray(rx.nu)
        if np.abs(nu - np.round(nu)).max() > 1e-9:
            raise MechanismError(f"reaction {i}: non-integer stoichiometry")
        imbalance = abs(float(nu @ W)) / float(np.abs(nu) @ W)
        if imbalance > 1e-6:
            raise MechanismError(f"reaction {i}: mass imbalance {imbalance:.2e}")
    # symmetry of the evaluated binary diffusivities
    T = np.linspace(300.0, 3000.0, 28)
    lt = np.log(T)
    poly = sum(mech.diff_fit[..., n, None] * lt ** n for n in range(5))
    if np.abs(poly - poly.transpose(1, 0, 2)).max() > 1e-10 * np.abs(poly).max():
        raise MechanismError("binary diffusion fits are not symmetric")


def load_bundled(name="1s_ch4_mp1"):
    """Load a mechanism shipped with the package."""
    ref = importlib.resources.files("flame1d") / "data" / f"{name}.mech"
    with importlib.resources.as_file(ref) as path:
        return parse_mechanism(path)


# ---------------------------------------------------------------------------
# composition utilities
# ---------------------------------------------------------------------------

def mixture_from_phi(mech, phi):
    """Mass fractions of a CH4/air mixture at equivalence ratio phi.

    Air is O2 + 3.76 N2; stoichiometry is CH4 + 2 O2, so the mole ratio
    X_CH4 : X_O2 is phi : 2.
    """
    if phi <= 0:
        raise ValueError("phi must be positive")
    k_fuel = mech.index("CH4")
    k_o2 = mech.index("O2")
    k_n2 = mech.index("N2")
    moles = np.zeros(mech.n_species)
    moles[k_fuel] = phi
    moles[k_o2] = 2.0
    moles[k_n2] = 2.0 * 3.76
    mass = moles * mech.weights
    y = mass / mass.sum()
    return y / y.sum()


def enthalpy_mass(mech, T, Y):
    """Mixture specific enthalpy (J/kg) at temperature T (plain numbers)."""
    from . import gasprops
    _, h_k, _ = gasprops.species_thermo(mech, T, mech.p_ref)
    return sum(h * y for h, y in zip(h_k, Y))


def equilibrium_state(mech, T_in, p, Y_in):
    """Complete-combustion products and their adiabatic temperature.

    The deficient reactant of the (single, irreversible) reaction is fully
    consumed along the reaction stoichiometry; the product temperature
    solves h(T_eq, Y_eq) = h(T_in, Y_in) at constant pressure by bisection
    on [T_in, 6000 K] to |dT| < 1e-6 K.
    """
    if len(mech.reactions) != 1:
        raise MechanismError("equilibrium_state requires a single-reaction mechanism")
    rx = mech.reactions[0]
    W = mech.weights
    Y_in = np.asarray(Y_in, dtype=np.float64)
    n = Y_in / W                               # mol per kg of mixture
    extent = min(n[k] / -rx.nu[k] for k in range(mech.n_species) if rx.nu[k] < 0)
    extent = max(extent, 0.0)
    Y_eq = (n + np.asarray(rx.nu) * extent) * W
    Y_eq = np.clip(Y_eq, 0.0, None)
    Y_eq = Y_eq / Y_eq.sum()

    h_target = enthalpy_mass(mech, T_in, Y_in)

    def balance(T):
        return enthalpy_mass(mech, T, Y_eq) - h_target

    lo, hi = T_in, 6000.0
    f_lo = balance(lo)
    if f_lo == 0.0 or extent == 0.0:
        return T_in, Y_eq
    if f_lo > 0.0 or balance(hi) < 0.0:
        raise ValueError("enthalpy balance has no root in [T_in, 6000 K]")
    while hi - lo > 1e-6:
        mid = 0.5 * (lo + hi)
        if balance(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi), Y_eq
