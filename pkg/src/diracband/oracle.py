"""Independent eigenvalue oracle: shooting on the radial ODEs.

No Bessel function is evaluated here. The regular solution is seeded by its
Frobenius series near the origin, integrated outward with an adaptive
eighth-order Runge-Kutta scheme, and the boundary condition is imposed at
r = R using boundary-operator eigenvectors obtained by numerical
diagonalization of the sector block.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernel
from .boundary import boundary_block, chiral_bag_block
from .problem import BoundaryCondition, ProblemSpec

_shoot = kernel("shoot")[0]


class InsufficientRootsError(ArithmeticError):
    pass


@dataclass(frozen=True)
class ShootingProblem:
    spec: ProblemSpec
    mu: float
    r_start: float | None = None
    series_order: int = 6
    rtol: float = 1e-12
    max_steps: int = 200000

    def __post_init__(self):
        if self.series_order < 4:
            raise ValueError("series_order must be at least 4")
        if self.r_start is not None and self.r_start > self.spec.R * 1e-4:
            raise ValueError("r_start must not exceed R * 1e-4")

    @property
    def sector(self):
        return self.spec.sector

    @property
    def start(self) -> float:
        return self.r_start if self.r_start is not None else self.spec.R * 1e-5


def frobenius_seed(l: int, psi: bool, E: float, mu: float, r: float, order: int = 6):
    """(F, G) = (f, g) / r^l at small r from the series of the regular solution."""
    ep, em = E + mu, mu - E
    r2 = r * r
    big = 0.0
    small = 0.0
    a = 1.0
    p = 1.0
    for n in range(order):
        # leading slot a_n r^{2n}; partner b_n r^{2n+1}
        b = (em if not psi else ep) * a / (2 * l + 3 + 2 * n)
        big += a * p
        small += b * p * r
        a = (ep if not psi else em) * b / (2 * n + 2)
        p *= r2
    return (big, small) if not psi else (small, big)


def boundary_values(problem: ShootingProblem, E: float) -> tuple[float, float]:
    """(F(R), G(R)) of the regular solution, up to a positive factor."""
    spec = problem.spec
    psi = not spec.is_phi
    l = spec.sector.l
    r0 = problem.start
    F0, G0 = frobenius_seed(l, psi, E, problem.mu, r0, problem.series_order)
    F, G, _ = _shoot.integrate_radial(l, psi, float(E), float(problem.mu), r0, spec.R,
                                      F0, G0, problem.rtol, problem.max_steps)
    return F, G


def _target_vector(spec: ProblemSpec, mu: float) -> np.ndarray:
    """Boundary pair direction allowed by the condition, by diagonalization."""
    if spec.bc is BoundaryCondition.CHIRAL_BAG:
        m = np.eye(2) - chiral_bag_block(spec.chiral_lambda)
        _, _, vt = np.linalg.svd(m)
        v = vt[-1]
    else:
        w, vecs = np.linalg.eigh(boundary_block(spec.sector, mu, spec.R))
        v = vecs[:, 0] if spec.bc is BoundaryCondition.APS_MINUS else vecs[:, 1]
    # fix the arbitrary sign so residuals are reproducible
    if v[np.argmax(np.abs(v))] < 0:
        v = -v
    return v


def shoot(problem: ShootingProblem, E: float) -> float:
    """Normalized cross product f v_g - g v_f at r = R."""
    F, G = boundary_values(problem, E)
    v = _target_vector(problem.spec, problem.mu)
    nrm = math.hypot(F, G)
    if nrm == 0.0 or not math.isfinite(nrm):
        raise ArithmeticError(f"shooting produced a degenerate boundary value at E={E}")
    return (F * v[1] - G * v[0]) / nrm


def _bisect(fun, a, fa, b, fb, tol):
    for _ in range(200):
        m = 0.5 * (a + b)
        if b - a <= tol * max(1.0, abs(m)):
            return m
        fm = fun(m)
        if fm == 0.0:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b, fb = m, fm
    return 0.5 * (a + b)


def oracle_eigenvalues(problem: ShootingProblem, count: int | None, window: tuple[float, float],
                       n_scan: int | None = None, tol: float = 1e-13) -> list[float]:
    """Roots of the shooting residual in the window by scan and bisection.

    Returns the `count` roots of smallest |E| (all roots when count is None),
    sorted ascending. Raises InsufficientRootsError if fewer are found.
    """
    lo, hi = float(window[0]), float(window[1])
    if not hi > lo:
        return []
    if n_scan is None:
        # resolve the pi/R root spacing of the oscillatory regime
        n_scan = max(200, int(math.ceil((hi - lo) / (math.pi / (16.0 * problem.spec.R)))))
    grid = np.linspace(lo, hi, n_scan + 1)

    def fun(E):
        return shoot(problem, E)

    vals = [fun(E) for E in grid]
    roots = []
    for i in range(n_scan):
        a, b, fa, fb = grid[i], grid[i + 1], vals[i], vals[i + 1]
        if fa == 0.0:
            roots.append(float(a))
        elif fa * fb < 0.0:
            roots.append(float(_bisect(fun, a, fa, b, fb, tol)))
    if vals[-1] == 0.0:
        roots.append(float(grid[-1]))
    roots = sorted(set(roots))
    if count is None:
        return roots
    if len(roots) < count:
        raise InsufficientRootsError(f"found {len(roots)} roots in {window}, wanted {count}")
    chosen = sorted(roots, key=abs)[:count]
    return sorted(chosen)
