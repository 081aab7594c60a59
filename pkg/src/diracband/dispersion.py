"""Eigenvalue conditions for APS and chiral-bag boundary conditions.

Every boundary condition reduces, on a sector, to one linear relation
c . (f(R), g(R)) = 0 on the regular radial pair. With A = (l+1+s)/R and
s = sqrt((l+1)^2 + (mu R)^2):

    APS(-)  PhiType c = (mu, -A)     PsiType c = (A, -mu)
    APS(+)  PhiType c = (A, mu)      PsiType c = (mu, A)
    chiral  both     c = (1, -e^{-lambda})

Residuals are evaluated on the unified regular solution (see radial), scaled
by |c| |(f, g)| so that they are bounded, pole-free and continuous across
|E| = |mu|. The public residuals additionally carry the orientation sign that
makes them agree in sign with "left side minus right side" of the textbook
Bessel-function form of each condition.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import brentq

from .problem import BoundaryCondition, ProblemSpec
from .radial import RegimeError, regular_solution

__all__ = [
    "BoundaryCondition", "ProblemSpec", "EquationRegime", "DispersionEquation", "NO_SOLUTION",
    "condition_vector", "unified_residual", "residual", "edge_admissible",
    "edge_residual_aps", "bulk_residual_aps", "edge_residual_chiral", "bulk_residual_chiral",
    "critical_eigenvalues_chiral", "edge_roots", "bulk_roots", "all_roots",
]


class EquationRegime(Enum):
    EDGE = "edge"
    BULK_POSITIVE_E = "bulk+"
    BULK_NEGATIVE_E = "bulk-"


class _NoSolution:
    """Marker for quadrants where the condition provably has no root."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __bool__(self):
        return False

    def __repr__(self):
        return "NO_SOLUTION"


NO_SOLUTION = _NoSolution()


def condition_vector(spec: ProblemSpec, mu: float) -> tuple[float, float]:
    l, R = spec.sector.l, spec.R
    if spec.bc is BoundaryCondition.CHIRAL_BAG:
        return 1.0, -math.exp(-spec.chiral_lambda)
    a = (l + 1.0 + math.hypot(l + 1.0, mu * R)) / R
    if spec.bc is BoundaryCondition.APS_MINUS:
        return (mu, -a) if spec.is_phi else (a, -mu)
    return (a, mu) if spec.is_phi else (mu, a)


def unified_residual(spec: ProblemSpec, E: float, mu: float) -> float:
    """c . (f, g)(R) / (|c| |(f, g)(R)|) on the regular solution; valid for all E."""
    f, g = regular_solution(spec.sector, E, mu, spec.R)
    f, g = float(f[0]), float(g[0])
    c0, c1 = condition_vector(spec, mu)
    den = math.hypot(c0, c1) * math.hypot(f, g)
    return (c0 * f + c1 * g) / den


def _orientation(spec: ProblemSpec, E: float, mu: float) -> float:
    # sign relating the unified residual to "LHS - RHS" of the Bessel form;
    # the textbook PhiType profiles are sgn(mu) U (edge) and -sgn(E) U (bulk)
    if spec.bc is BoundaryCondition.APS_PLUS:
        return -1.0
    if spec.is_phi:
        if abs(E) < abs(mu):
            return 1.0 if mu > 0 else -1.0
        return -1.0 if E > 0 else 1.0
    return -1.0 if spec.bc is BoundaryCondition.APS_MINUS else 1.0


def edge_admissible(spec: ProblemSpec, E: float, mu: float) -> bool:
    """Quadrants in which an edge root is not excluded by a sign argument."""
    if mu == 0.0:
        return False
    if spec.bc is BoundaryCondition.APS_PLUS:
        return False
    if spec.bc is BoundaryCondition.APS_MINUS:
        if spec.is_phi:
            return (mu > 0 and E <= 0) or (mu < 0 and E >= 0)
        return (mu > 0 and E >= 0) or (mu < 0 and E <= 0)
    if mu < 0:
        return False
    lam = spec.chiral_lambda
    if spec.is_phi and lam >= 0:
        return E <= 0
    if not spec.is_phi and lam <= 0:
        return E >= 0
    return True


def _edge_check(E, mu):
    if not abs(E) < abs(mu):
        raise RegimeError(f"edge residual needs |E| < |mu|, got E={E}, mu={mu}")


def _bulk_check(E, mu):
    if not abs(E) > abs(mu):
        raise RegimeError(f"bulk residual needs |E| > |mu|, got E={E}, mu={mu}")


def edge_residual_aps(spec: ProblemSpec, E: float, mu: float):
    _edge_check(E, mu)
    if spec.bc is BoundaryCondition.CHIRAL_BAG:
        raise ValueError("use edge_residual_chiral for the chiral bag")
    if not edge_admissible(spec, E, mu):
        return NO_SOLUTION
    return _orientation(spec, E, mu) * unified_residual(spec, E, mu)


def bulk_residual_aps(spec: ProblemSpec, E: float, mu: float) -> float:
    _bulk_check(E, mu)
    if spec.bc is BoundaryCondition.CHIRAL_BAG:
        raise ValueError("use bulk_residual_chiral for the chiral bag")
    return _orientation(spec, E, mu) * unified_residual(spec, E, mu)


def edge_residual_chiral(spec: ProblemSpec, E: float, mu: float):
    _edge_check(E, mu)
    if spec.bc is not BoundaryCondition.CHIRAL_BAG:
        raise ValueError("spec is not a chiral-bag problem")
    if not edge_admissible(spec, E, mu):
        return NO_SOLUTION
    return _orientation(spec, E, mu) * unified_residual(spec, E, mu)


def bulk_residual_chiral(spec: ProblemSpec, E: float, mu: float) -> float:
    _bulk_check(E, mu)
    if spec.bc is not BoundaryCondition.CHIRAL_BAG:
        raise ValueError("spec is not a chiral-bag problem")
    return _orientation(spec, E, mu) * unified_residual(spec, E, mu)


def residual(spec: ProblemSpec, E: float, mu: float):
    """Oriented residual for whichever regime (E, mu) lies in."""
    if abs(E) < abs(mu):
        if spec.bc is BoundaryCondition.CHIRAL_BAG:
            return edge_residual_chiral(spec, E, mu)
        return edge_residual_aps(spec, E, mu)
    if abs(E) > abs(mu):
        if spec.bc is BoundaryCondition.CHIRAL_BAG:
            return bulk_residual_chiral(spec, E, mu)
        return bulk_residual_aps(spec, E, mu)
    return unified_residual(spec, E, mu)


@dataclass(frozen=True)
class DispersionEquation:
    spec: ProblemSpec
    regime: EquationRegime

    def valid(self, E: float, mu: float) -> bool:
        if self.regime is EquationRegime.EDGE:
            return abs(E) <= abs(mu) and edge_admissible(self.spec, E, mu)
        if self.regime is EquationRegime.BULK_POSITIVE_E:
            return E >= abs(mu)
        return E <= -abs(mu)

    def residual(self, E: float, mu: float):
        if not self.valid(E, mu):
            return NO_SOLUTION
        return unified_residual(self.spec, E, mu)


def critical_eigenvalues_chiral(l: int, R: float, lam: float) -> tuple[float, float]:
    """(E_plus, E_minus) = ((2l+3) e^{-lam} / 2R, -(2l+3) e^{lam} / 2R)."""
    if not R > 0:
        raise ValueError("R must be positive")
    return (2 * l + 3) * math.exp(-lam) / (2.0 * R), -(2 * l + 3) * math.exp(lam) / (2.0 * R)


def _refine(fun, a, fa, b, fb):
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    return brentq(fun, a, b, xtol=1e-15 * max(1.0, abs(a), abs(b)), rtol=1e-15, maxiter=200)


def edge_roots(spec: ProblemSpec, mu: float, n_scan: int = 201) -> list[float]:
    """All sign changes of the residual in the admissible part of |E| <= |mu|.

    The scan uses Chebyshev points in E / |mu| (dense near the critical lines,
    endpoints included); a root exactly on |E| = |mu| is reported once.
    """
    if mu == 0.0:
        return []
    m = abs(mu)
    xs = np.cos(np.pi * np.arange(n_scan) / (n_scan - 1))[::-1]
    Es = [m * x for x in xs if edge_admissible(spec, m * x, mu)]
    if len(Es) < 2:
        return []

    def fun(E):
        return unified_residual(spec, E, mu)

    vals = [fun(E) for E in Es]
    roots = []
    for (a, fa), (b, fb) in zip(zip(Es, vals), zip(Es[1:], vals[1:])):
        if fa == 0.0:
            roots.append(a)
        elif fa * fb < 0.0:
            roots.append(_refine(fun, a, fa, b, fb))
    if vals[-1] == 0.0:
        roots.append(Es[-1])
    return sorted(set(roots))


def bulk_roots(spec: ProblemSpec, mu: float, n: int, sign: int = 1,
               beta_step: float | None = None, max_beta: float | None = None) -> list[float]:
    """The n roots with E of the given sign and smallest |E| in |E| > |mu|.

    Scans beta = sqrt(E^2 - mu^2) from 0 in steps of pi/(16 R); asymptotically
    consecutive roots are pi/R apart in beta.
    """
    if n <= 0:
        return []
    R = spec.R
    h = beta_step or math.pi / (16.0 * R)
    limit = max_beta or (n + spec.sector.l + 10) * 2.0 * math.pi / R
    s = 1.0 if sign > 0 else -1.0

    def e_of(beta):
        return s * math.hypot(beta, mu)

    def fun_beta(beta):
        return unified_residual(spec, e_of(beta), mu)

    roots: list[float] = []
    b0 = 0.0
    f0 = fun_beta(b0)
    while len(roots) < n:
        b1 = b0 + h
        if b1 > limit:
            raise ArithmeticError(f"found only {len(roots)} of {n} bulk roots below beta={limit}")
        f1 = fun_beta(b1)
        if f0 == 0.0:
            if b0 > 0.0:
                roots.append(e_of(b0))
        elif f0 * f1 < 0.0:
            roots.append(e_of(_refine(fun_beta, b0, f0, b1, f1)))
        b0, f0 = b1, f1
    return roots[:n]


def all_roots(spec: ProblemSpec, mu: float, n_bulk: int = 0, include_edge: bool = True) -> list[float]:
    out = edge_roots(spec, mu) if include_edge else []
    if n_bulk:
        out += bulk_roots(spec, mu, n_bulk, +1) + bulk_roots(spec, mu, n_bulk, -1)
    return sorted(out)
