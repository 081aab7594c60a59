"""The boundary operator B_mu on the sphere |r| = R, reduced to one sector.

On the sector spanned by (a Phi^{(+)}, b Phi^{(-)}) (PhiType) or
(a Phi^{(-)}, b Phi^{(+)}) (PsiType), B_mu is a real symmetric 2x2 matrix and
gamma_r acts as sigma_2 on the coefficient pair (a, b).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .angular import (AngularSector, HarmonicBranch, SpinorType, sigma_r,
                      sphere_grid, spinor_harmonic)

GAMMA_R_BLOCK = np.array([[0.0, -1j], [1j, 0.0]])


@dataclass(frozen=True)
class BoundaryEigenData:
    sector: AngularSector
    mu: float
    R: float
    lambda_plus: float
    lambda_minus: float
    coeff_plus: np.ndarray
    coeff_minus: np.ndarray

    def condition_vector(self, sign: int = -1) -> np.ndarray:
        """c with c . (f, g) = 0 iff (f, g) lies on the sign-eigenvector."""
        v = self.coeff_minus if sign < 0 else self.coeff_plus
        return np.array([v[1], -v[0]])


def boundary_block(sector: AngularSector, mu: float, R: float) -> np.ndarray:
    l = sector.l
    mr = mu * R
    if sector.spinor_type is SpinorType.PHI:
        m = [[l, mr], [mr, -(l + 2)]]
    else:
        m = [[-(l + 2), mr], [mr, l]]
    return -np.array(m, dtype=float) / R


def _root(l: int, mu: float, R: float) -> float:
    return math.hypot(l + 1.0, mu * R)


def aps_boundary_eigen(sector: AngularSector, mu: float, R: float) -> BoundaryEigenData:
    """Eigenvalues (1 +- s)/R, s = sqrt((l+1)^2 + (mu R)^2), and unit eigenvectors.

    The eigenvectors are written in the forms that stay finite and nonzero
    through mu = 0, where they reduce to the pure upper/lower states.
    """
    if not R > 0:
        raise ValueError("R must be positive")
    l = sector.l
    s = _root(l, mu, R)
    a = l + 1.0 + s
    mr = mu * R
    if sector.spinor_type is SpinorType.PHI:
        vp = np.array([-mr, a])
        vm = np.array([a, mr])
    else:
        vp = np.array([a, -mr])
        vm = np.array([mr, a])
    return BoundaryEigenData(sector, float(mu), float(R), (1.0 + s) / R, (1.0 - s) / R,
                             vp / np.linalg.norm(vp), vm / np.linalg.norm(vm))


def chiral_bag_block(lam: float) -> np.ndarray:
    """Sector form of -i gamma_r e^{lam gamma_0} gamma_0 (identical for both types)."""
    return np.array([[0.0, math.exp(-lam)], [math.exp(lam), 0.0]])


def chiral_condition_vector(lam: float) -> np.ndarray:
    return np.array([1.0, -math.exp(-lam)])


def four_spinor(sector: AngularSector, a, b, theta, phi) -> np.ndarray:
    """(a H_upper, b H_lower) at the given angles, shape (4, n)."""
    up = spinor_harmonic(sector, sector.upper_branch(), theta, phi)
    dn = spinor_harmonic(sector, sector.lower_branch(), theta, phi)
    return np.stack([a * up.upper, a * up.lower, b * dn.upper, b * dn.lower])


def apply_gamma_r(x: np.ndarray, theta, phi) -> np.ndarray:
    s = sigma_r(theta, phi)
    top = np.einsum("nij,jn->in", s, x[2:])
    bot = np.einsum("nij,jn->in", s, x[:2])
    return np.concatenate([-1j * top, 1j * bot])


@dataclass
class ExchangeReport:
    ratio: complex
    ratio_spread: float
    anticommutator_residual: float
    passed: bool


def gamma_r_exchange_check(sector: AngularSector, mu: float, R: float,
                           n_angles: int = 50, seed: int = 0) -> ExchangeReport:
    """gamma_r maps the (+) boundary eigenstate onto a multiple of the (-) one.

    The multiple is measured at random angles and must be constant; the
    matrix identity B gamma_r + gamma_r B = (2/R) gamma_r is checked on the
    sector block.
    """
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0.05, math.pi - 0.05, n_angles)
    phi = rng.uniform(0.0, 2 * math.pi, n_angles)
    eig = aps_boundary_eigen(sector, mu, R)
    xp = four_spinor(sector, *eig.coeff_plus, theta, phi)
    xm = four_spinor(sector, *eig.coeff_minus, theta, phi)
    gx = apply_gamma_r(xp, theta, phi)
    # least-squares ratio, then the spread of pointwise deviations around it
    ratio = complex(np.vdot(xm.ravel(), gx.ravel()) / np.vdot(xm.ravel(), xm.ravel()))
    spread = float(np.max(np.abs(gx - ratio * xm)))
    b = boundary_block(sector, mu, R)
    anti = b @ GAMMA_R_BLOCK + GAMMA_R_BLOCK @ b - (2.0 / R) * GAMMA_R_BLOCK
    res = float(np.max(np.abs(anti)))
    return ExchangeReport(ratio, spread, res,
                          abs(ratio) > 1e-3 and spread <= 1e-10 and res <= 1e-13)


def boundary_current(sector: AngularSector, a: complex, b: complex, R: float = 1.0,
                     n_theta: int = 64, n_phi: int = 64) -> float:
    """Normalized normal current at r = R for the boundary value (a H_upper, b H_lower).

    Returns int psi^dag gamma_r psi dS / int psi^dag psi dS; the R^2 area
    factors cancel in the ratio.
    """
    theta, phi, w = sphere_grid(n_theta, n_phi)
    x = four_spinor(sector, a, b, theta, phi)
    gx = apply_gamma_r(x, theta, phi)
    num = np.sum(w * np.sum(np.conj(x) * gx, axis=0))
    den = np.sum(w * np.sum(np.abs(x) ** 2, axis=0))
    if den == 0.0:
        return 0.0
    return float(num.real / den)


def profile_current(profile, R: float, **kw) -> float:
    """boundary_current for a radial profile evaluated at r = R."""
    f, g = profile.eval(np.array([R]))
    return boundary_current(profile.sector, complex(f[0]), complex(g[0]), R, **kw)


def block_independent_of_m(j: float, mu: float, R: float) -> bool:
    """B_mu blocks agree for every m in the multiplet."""
    two_j = int(round(2 * j))
    for t in SpinorType:
        ref = boundary_block(AngularSector(j, j, t), mu, R)
        for tm in range(-two_j, two_j + 1, 2):
            if not np.array_equal(boundary_block(AngularSector(j, tm / 2, t), mu, R), ref):
                return False
    return True


def harmonic_pair_orthogonality(sector: AngularSector, n_theta: int = 64, n_phi: int = 64) -> float:
    """|<Phi^{(+)}, Phi^{(-)}>| on the unit sphere."""
    theta, phi, w = sphere_grid(n_theta, n_phi)
    p = spinor_harmonic(sector, HarmonicBranch.PLUS, theta, phi)
    m = spinor_harmonic(sector, HarmonicBranch.MINUS, theta, phi)
    return abs(np.sum(w * (np.conj(p.upper) * m.upper + np.conj(p.lower) * m.lower)))
