"""Regular radial solutions (f, g) of the reduced Dirac equation.

    PhiType:  f' - l f / r     = (E + mu) g,    g' + (l+2) g / r = (mu - E) f
    PsiType:  f' + (l+2) f / r = (E + mu) g,    g' - l g / r     = (mu - E) f

With w = (mu^2 - E^2) r^2 / 4 and F_nu(w) = sum w^n / (n! Gamma(nu+n+1)) the
regular solutions are, up to a constant,

    PhiType:  U = ( r^l F_{l+1/2}(w),              (mu-E)/2 r^{l+1} F_{l+3/2}(w) )
    PsiType:  V = ( (E+mu)/2 r^{l+1} F_{l+3/2}(w),  r^l F_{l+1/2}(w) )

which is the modified-Bessel (edge) form for w > 0, the Bessel (bulk) form for
w < 0 and the polynomial critical form at w = 0. The profile constructors
below return the textbook forms with their square-root prefactors; the
reduced states are U and V themselves.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable

import numpy as np

from . import specfun
from .angular import AngularSector, SpinorType


class Regime(Enum):
    EDGE = "edge"
    BULK = "bulk"
    CRITICAL = "critical"


class CriticalCase(Enum):
    E_EQ_MINUS_MU = "E=-mu"
    E_EQ_PLUS_MU = "E=+mu"


class RegimeError(ValueError):
    pass


# thresholds for switching to the reduced (series) forms
EPS_R_SWITCH = 1e-6
GAP_SWITCH = 1e-8


@dataclass(frozen=True)
class RadialProfile:
    regime: Regime
    sector: AngularSector
    E: float
    mu: float
    rule: Callable = field(repr=False, compare=False)
    normalization_convention: str = "explicit"

    def eval(self, r):
        r = np.atleast_1d(np.asarray(r, dtype=float))
        f, g = self.rule(r)
        return np.asarray(f, dtype=float), np.asarray(g, dtype=float)

    def scaled(self, c: float, convention: str | None = None) -> "RadialProfile":
        rule = self.rule

        def scaled_rule(r):
            f, g = rule(r)
            return c * np.asarray(f), c * np.asarray(g)

        return replace(self, rule=scaled_rule,
                       normalization_convention=convention or self.normalization_convention)


def classify(E: float, mu: float) -> Regime:
    if abs(E) < abs(mu):
        return Regime.EDGE
    if abs(E) > abs(mu):
        return Regime.BULK
    return Regime.CRITICAL


def regular_solution(sector: AngularSector, E: float, mu: float, r) -> tuple[np.ndarray, np.ndarray]:
    """The unified regular solution U (PhiType) or V (PsiType) at radii r."""
    l = sector.l
    r = np.atleast_1d(np.asarray(r, dtype=float))
    q = (mu - E) * (mu + E) / 4.0
    f = np.empty_like(r)
    g = np.empty_like(r)
    for i, ri in enumerate(r):
        w = q * ri * ri
        a, b = specfun.regular_pair(l, w)
        # regular_pair may drop a common positive factor for |w| > 1
        if abs(w) > 1.0:
            c = _pair_scale(l, w)
            a, b = a * c, b * c
        rl = ri ** l
        if sector.spinor_type is SpinorType.PHI:
            f[i] = rl * a
            g[i] = 0.5 * (mu - E) * rl * ri * b
        else:
            f[i] = 0.5 * (E + mu) * rl * ri * b
            g[i] = rl * a
    return f, g


def _pair_scale(l: int, w: float) -> float:
    # regular_pair returns (1, F_{l+3/2}/F_{l+1/2}) for w > 1 and
    # (z/2)^{l+1/2} (F_{l+1/2}, F_{l+3/2}) for w < -1, with z = 2 sqrt|w|
    z = 2.0 * math.sqrt(abs(w))
    if w > 0.0:
        return specfun.bessel_IP(l + 0.5, z)
    return (0.5 * z) ** (-(l + 0.5))


def _sgn(x: float) -> float:
    return 1.0 if x > 0 else -1.0


def edge_profile(sector: AngularSector, E: float, mu: float) -> RadialProfile:
    """Modified-Bessel profile for |E| < |mu|.

    PhiType: (s sqrt|mu+E| I_{l+1/2}(eps r), sqrt|mu-E| I_{l+3/2}(eps r)) / sqrt(eps r)
    PsiType: (s sqrt|mu+E| I_{l+3/2}(eps r), sqrt|mu-E| I_{l+1/2}(eps r)) / sqrt(eps r)
    with s = sgn(mu). Falls back to the reduced state near |E| = |mu|.
    """
    E, mu = float(E), float(mu)
    if not abs(E) < abs(mu):
        raise RegimeError(f"edge profile needs |E| < |mu|, got E={E}, mu={mu}")
    eps = math.sqrt((mu - E) * (mu + E))
    if eps < EPS_R_SWITCH or abs(abs(E) - abs(mu)) < GAP_SWITCH:
        return reduced_edge_state(sector, E, mu)
    l = sector.l
    top = _sgn(mu) * math.sqrt(abs(mu + E))
    bot = math.sqrt(abs(mu - E))
    phi_type = sector.spinor_type is SpinorType.PHI

    def rule(r):
        f = np.empty_like(r)
        g = np.empty_like(r)
        for i, ri in enumerate(r):
            x = eps * ri
            if x == 0.0:
                f[i] = g[i] = 0.0
                continue
            vals = specfun.bessel_I_scaled_array(l + 1, x) * math.exp(x) / math.sqrt(x)
            lo, hi = vals[l], vals[l + 1]
            f[i], g[i] = (top * lo, bot * hi) if phi_type else (top * hi, bot * lo)
        return f, g

    return RadialProfile(Regime.EDGE, sector, E, mu, rule)


def bulk_profile(sector: AngularSector, E: float, mu: float) -> RadialProfile:
    """Bessel profile for |E| > |mu|.

    PhiType: (-s sqrt|E+mu| J_{l+1/2}(beta r), sqrt|E-mu| J_{l+3/2}(beta r)) / sqrt(beta r)
    PsiType: ( s sqrt|E+mu| J_{l+3/2}(beta r), sqrt|E-mu| J_{l+1/2}(beta r)) / sqrt(beta r)
    with s = sgn(E).
    """
    E, mu = float(E), float(mu)
    if not abs(E) > abs(mu):
        raise RegimeError(f"bulk profile needs |E| > |mu|, got E={E}, mu={mu}")
    beta = math.sqrt((E - mu) * (E + mu))
    if beta < EPS_R_SWITCH or abs(abs(E) - abs(mu)) < GAP_SWITCH:
        return reduced_bulk_state(sector, E, mu)
    l = sector.l
    phi_type = sector.spinor_type is SpinorType.PHI
    top = (-1.0 if phi_type else 1.0) * _sgn(E) * math.sqrt(abs(E + mu))
    bot = math.sqrt(abs(E - mu))

    def rule(r):
        f = np.empty_like(r)
        g = np.empty_like(r)
        for i, ri in enumerate(r):
            x = beta * ri
            if x == 0.0:
                f[i] = g[i] = 0.0
                continue
            vals = specfun.bessel_J_array(l + 1, x) / math.sqrt(x)
            lo, hi = vals[l], vals[l + 1]
            f[i], g[i] = (top * lo, bot * hi) if phi_type else (top * hi, bot * lo)
        return f, g

    return RadialProfile(Regime.BULK, sector, E, mu, rule)


def critical_profile(sector: AngularSector, case: CriticalCase, mu: float) -> RadialProfile:
    """Polynomial profiles at |E| = |mu|."""
    case = CriticalCase(case)
    mu = float(mu)
    l = sector.l
    E = -mu if case is CriticalCase.E_EQ_MINUS_MU else mu
    phi_type = sector.spinor_type is SpinorType.PHI
    # the coupled form belongs to E=-mu for PhiType and E=+mu for PsiType
    coupled = (case is CriticalCase.E_EQ_MINUS_MU) == phi_type

    def rule(r):
        rl = r ** l
        if coupled:
            big, small = (2 * l + 3) * rl, 2.0 * mu * rl * r
            return (big, small) if phi_type else (small, big)
        zero = np.zeros_like(r)
        return (rl, zero) if phi_type else (zero, rl)

    return RadialProfile(Regime.CRITICAL, sector, E, mu, rule)


def reduced_edge_state(sector: AngularSector, E: float, mu: float) -> RadialProfile:
    """The scalar-stripped edge state (U or V), finite as mu -> 0 and as E -> -+mu."""
    E, mu = float(E), float(mu)
    if not abs(E) <= abs(mu):
        raise RegimeError(f"reduced edge state needs |E| <= |mu|, got E={E}, mu={mu}")
    return RadialProfile(Regime.EDGE, sector, E, mu,
                         lambda r: regular_solution(sector, E, mu, r), "reduced")


def reduced_bulk_state(sector: AngularSector, E: float, mu: float) -> RadialProfile:
    """The scalar-stripped bulk state (U or V in the Bessel regime)."""
    E, mu = float(E), float(mu)
    if not abs(E) >= abs(mu):
        raise RegimeError(f"reduced bulk state needs |E| >= |mu|, got E={E}, mu={mu}")
    return RadialProfile(Regime.BULK, sector, E, mu,
                         lambda r: regular_solution(sector, E, mu, r), "reduced")


def zero_mode_profile(sector: AngularSector) -> RadialProfile:
    """(r^l, 0) / Gamma(l+3/2) for PhiType and (0, r^l) / Gamma(l+3/2) for PsiType."""
    c = 1.0 / specfun.gamma_half(2 * sector.l + 3)
    return critical_profile(sector, CriticalCase.E_EQ_PLUS_MU if sector.spinor_type is SpinorType.PHI
                            else CriticalCase.E_EQ_MINUS_MU, 0.0).scaled(c, "zero-mode")


def reduced_critical_profile(sector: AngularSector, mu: float) -> RadialProfile:
    """Common limit of the reduced edge and bulk states at the coupled critical line.

    Equals ((2l+3) r^l, 2 mu r^{l+1}) / (2 Gamma(l+5/2)) for PhiType (E = -mu),
    mirrored for PsiType (E = +mu); this is the w = 0 value of U and V.
    """
    case = CriticalCase.E_EQ_MINUS_MU if sector.spinor_type is SpinorType.PHI else CriticalCase.E_EQ_PLUS_MU
    c = 1.0 / (2.0 * specfun.gamma_half(2 * sector.l + 5))
    return critical_profile(sector, case, mu).scaled(c, "reduced")


def check_grid(R: float, n: int = 200) -> np.ndarray:
    return np.geomspace(R * 1e-2, R, n)


def _derivative(profile: RadialProfile, r: np.ndarray, rel_step: float = 1e-3):
    # step resolves both the r^l behavior and the oscillation length 1/|E|
    k = max(abs(profile.E), abs(profile.mu), 1e-300)
    h = rel_step * np.minimum(r, 1.0 / k)
    w = (1.0, -8.0, 8.0, -1.0)
    off = (-2, -1, 1, 2)
    df = np.zeros_like(r)
    dg = np.zeros_like(r)
    for c, o in zip(w, off):
        f, g = profile.eval(r + o * h)
        df += c * f
        dg += c * g
    return df / (12.0 * h), dg / (12.0 * h)


def ode_residual(profile: RadialProfile, R: float, n: int = 200) -> float:
    """Max finite-difference residual of the radial system on the check grid.

    Scaled by R / (sup|f| + sup|g|) so that it is dimensionless.
    """
    r = check_grid(R, n)
    f, g = profile.eval(r)
    df, dg = _derivative(profile, r)
    l = profile.sector.l
    E, mu = profile.E, profile.mu
    if profile.sector.spinor_type is SpinorType.PHI:
        r1 = df - l * f / r - (E + mu) * g
        r2 = dg + (l + 2) * g / r - (mu - E) * f
    else:
        r1 = df + (l + 2) * f / r - (E + mu) * g
        r2 = dg - l * g / r - (mu - E) * f
    scale = np.max(np.abs(f)) + np.max(np.abs(g))
    if scale == 0.0:
        return 0.0
    return float(R * max(np.max(np.abs(r1)), np.max(np.abs(r2))) / scale)


def l2_norm(profile: RadialProfile, R: float, n: int = 64) -> float:
    x, w = np.polynomial.legendre.leggauss(n)
    r = 0.5 * R * (x + 1.0)
    f, g = profile.eval(r)
    return math.sqrt(0.5 * R * float(np.sum(w * (f * f + g * g) * r * r)))


def l2_normalize(profile: RadialProfile, R: float) -> RadialProfile:
    """Rescale so that int_0^R (f^2 + g^2) r^2 dr = 1."""
    nrm = l2_norm(profile, R)
    if nrm == 0.0:
        raise ValueError("cannot normalize a vanishing profile")
    return profile.scaled(1.0 / nrm, "l2")


def sup_distance(a: RadialProfile, b: RadialProfile, R: float, n: int = 200,
                 match_scale: bool = False) -> float:
    """Sup-norm distance of two profiles on the check grid.

    With match_scale, a is first multiplied by the least-squares factor that
    best matches it to b.
    """
    r = check_grid(R, n)
    fa, ga = a.eval(r)
    fb, gb = b.eval(r)
    if match_scale:
        va = np.concatenate([fa, ga])
        vb = np.concatenate([fb, gb])
        c = float(va @ vb / (va @ va))
        fa, ga = c * fa, c * ga
    return float(max(np.max(np.abs(fa - fb)), np.max(np.abs(ga - gb))))
