"""Spinor spherical harmonics and the angular operators acting on them.

Conventions: Y^n_l is the Condon-Shortley spherical harmonic, and for
j = l + 1/2

    Phi^{j(+)}_m = ( sqrt((j+m)/2j) Y_l^{m-1/2},          sqrt((j-m)/2j) Y_l^{m+1/2} )
    Phi^{j(-)}_m = ( sqrt((j-m+1)/(2j+2)) Y_{l+1}^{m-1/2}, -sqrt((j+m+1)/(2j+2)) Y_{l+1}^{m+1/2} )

so that sigma.L Phi^{(+)} = (j - 1/2) Phi^{(+)}, sigma.L Phi^{(-)} = -(j + 3/2) Phi^{(-)}
and sigma_r exchanges the two.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np


class SpinorType(Enum):
    """Which two-spinor harmonic sits in the upper slot of the 4-spinor."""

    PHI = "phi"  # (f Phi^{(+)}, g Phi^{(-)}), P eigenvalue +(j+1/2)
    PSI = "psi"  # (f Phi^{(-)}, g Phi^{(+)}), P eigenvalue -(j+1/2)


class HarmonicBranch(Enum):
    PLUS = "plus"
    MINUS = "minus"


def _half_int(x: float, name: str) -> int:
    two = 2.0 * float(x)
    if abs(two - round(two)) > 1e-12 or int(round(two)) % 2 != 1:
        raise ValueError(f"{name}={x} is not a half-odd-integer")
    return int(round(two))


@dataclass(frozen=True)
class AngularSector:
    j: float
    m: float
    spinor_type: SpinorType = SpinorType.PHI

    def __post_init__(self):
        two_j = _half_int(self.j, "j")
        two_m = _half_int(self.m, "m")
        if two_j < 1:
            raise ValueError("j must be at least 1/2")
        if abs(two_m) > two_j:
            raise ValueError(f"|m| must not exceed j, got j={self.j}, m={self.m}")
        if not isinstance(self.spinor_type, SpinorType):
            object.__setattr__(self, "spinor_type", SpinorType(self.spinor_type))

    @property
    def two_j(self) -> int:
        return int(round(2 * self.j))

    @property
    def two_m(self) -> int:
        return int(round(2 * self.m))

    @property
    def l(self) -> int:
        return (self.two_j - 1) // 2

    @property
    def p_eigenvalue(self) -> float:
        s = 1.0 if self.spinor_type is SpinorType.PHI else -1.0
        return s * (self.j + 0.5)

    @property
    def p_sign(self) -> int:
        return 1 if self.spinor_type is SpinorType.PHI else -1

    def with_type(self, spinor_type: SpinorType) -> "AngularSector":
        return AngularSector(self.j, self.m, spinor_type)

    def upper_branch(self) -> HarmonicBranch:
        """Harmonic branch carried by the upper (f) slot of the 4-spinor."""
        return HarmonicBranch.PLUS if self.spinor_type is SpinorType.PHI else HarmonicBranch.MINUS

    def lower_branch(self) -> HarmonicBranch:
        return HarmonicBranch.MINUS if self.spinor_type is SpinorType.PHI else HarmonicBranch.PLUS


@dataclass
class TwoSpinorSample:
    theta: np.ndarray
    phi: np.ndarray
    upper: np.ndarray
    lower: np.ndarray

    def density(self) -> np.ndarray:
        return np.abs(self.upper) ** 2 + np.abs(self.lower) ** 2

    def scaled(self, c: complex) -> "TwoSpinorSample":
        return TwoSpinorSample(self.theta, self.phi, c * self.upper, c * self.lower)

    def max_distance(self, other: "TwoSpinorSample") -> float:
        return float(max(np.max(np.abs(self.upper - other.upper)),
                         np.max(np.abs(self.lower - other.lower))))


def legendre(l: int, n: int, x) -> np.ndarray:
    """Fully normalized associated Legendre function Pbar^n_l(x), 0 <= n <= l.

    Pbar^n_l(cos t) e^{i n phi} has unit norm on the sphere (no Condon-Shortley
    phase). Built by the stable upward recurrence in degree at fixed order.
    """
    if n < 0 or n > l:
        raise IndexError(f"need 0 <= n <= l, got l={l}, n={n}")
    x = np.asarray(x, dtype=float)
    s = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    p = np.full_like(x, 1.0 / math.sqrt(4.0 * math.pi))
    for k in range(1, n + 1):
        p = math.sqrt((2 * k + 1) / (2.0 * k)) * s * p
    if l == n:
        return p
    p_prev = p
    p = math.sqrt(2 * n + 3) * x * p
    for k in range(n + 2, l + 1):
        a = math.sqrt((4.0 * k * k - 1.0) / (k * k - n * n))
        b = math.sqrt(((k - 1.0) ** 2 - n * n) / (4.0 * (k - 1.0) ** 2 - 1.0))
        p, p_prev = a * (x * p - b * p_prev), p
    return p


def spherical_harmonic(l: int, n: int, theta, phi) -> np.ndarray:
    """Y^n_l(theta, phi), Condon-Shortley phase."""
    if abs(n) > l:
        raise IndexError(f"|n| must not exceed l, got l={l}, n={n}")
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    an = abs(n)
    y = legendre(l, an, np.cos(theta)) * np.exp(1j * an * phi)
    if n >= 0:
        return (-1) ** an * y
    return np.conj(y)


def _ylm(l: int, n2: int, theta, phi):
    # n given doubled (n2 = 2n, always even here); zero outside |n| <= l
    n = n2 // 2
    if abs(n) > l:
        return np.zeros(np.broadcast(np.asarray(theta), np.asarray(phi)).shape, dtype=complex)
    return spherical_harmonic(l, n, theta, phi)


def spinor_harmonic(sector: AngularSector, branch: HarmonicBranch, theta, phi) -> TwoSpinorSample:
    """Phi^{j(+)}_m or Phi^{j(-)}_m at the given angles."""
    branch = HarmonicBranch(branch)
    tj, tm = sector.two_j, sector.two_m
    l = sector.l
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if branch is HarmonicBranch.PLUS:
        cu = math.sqrt((tj + tm) / (2.0 * tj))
        cd = math.sqrt((tj - tm) / (2.0 * tj))
        up = cu * _ylm(l, tm - 1, theta, phi)
        dn = cd * _ylm(l, tm + 1, theta, phi)
    else:
        cu = math.sqrt((tj - tm + 2) / (2.0 * tj + 4))
        cd = -math.sqrt((tj + tm + 2) / (2.0 * tj + 4))
        up = cu * _ylm(l + 1, tm - 1, theta, phi)
        dn = cd * _ylm(l + 1, tm + 1, theta, phi)
    return TwoSpinorSample(theta, phi, np.asarray(up), np.asarray(dn))


def sigma_dot_L_eigenvalue(sector: AngularSector, branch: HarmonicBranch) -> float:
    if HarmonicBranch(branch) is HarmonicBranch.PLUS:
        return sector.j - 0.5
    return -(sector.j + 1.5)


def _derivs(sector, branch, theta, phi, h):
    # five-point stencils for d/dtheta and d/dphi of both components
    def at(t, p):
        s = spinor_harmonic(sector, branch, t, p)
        return np.stack([s.upper, s.lower])

    w = (1.0, -8.0, 8.0, -1.0)
    off = (-2, -1, 1, 2)
    dt = sum(c * at(theta + o * h, phi) for c, o in zip(w, off)) / (12.0 * h)
    dp = sum(c * at(theta, phi + o * h) for c, o in zip(w, off)) / (12.0 * h)
    return at(theta, phi), dt, dp


def _check_poles(theta):
    if np.any(np.sin(np.asarray(theta)) < 1e-8):
        warnings.warn("angular derivatives requested at a pole; the frame is singular there",
                      RuntimeWarning, stacklevel=3)


def apply_sigma_dot_L(sector: AngularSector, branch: HarmonicBranch, theta, phi,
                      h: float = 1e-4) -> TwoSpinorSample:
    """sigma.L applied to a spinor harmonic by finite differences.

    sigma.L = [[L3, L-], [L+, -L3]] with L3 = -i d/dphi and
    L+- = e^{+-i phi}(+-d/dtheta + i cot(theta) d/dphi).
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    _check_poles(theta)
    v, dt, dp = _derivs(sector, branch, theta, phi, h)
    cot = np.cos(theta) / np.sin(theta)
    l3 = -1j * dp
    lp = np.exp(1j * phi) * (dt + 1j * cot * dp)
    lm = np.exp(-1j * phi) * (-dt + 1j * cot * dp)
    up = l3[0] + lm[1]
    dn = lp[0] - l3[1]
    return TwoSpinorSample(theta, phi, up, dn)


def apply_J3(sector: AngularSector, branch: HarmonicBranch, theta, phi,
             h: float = 1e-4) -> TwoSpinorSample:
    """(L3 + sigma_3/2) applied by finite differences."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    v, _, dp = _derivs(sector, branch, theta, phi, h)
    return TwoSpinorSample(theta, phi, -1j * dp[0] + 0.5 * v[0], -1j * dp[1] - 0.5 * v[1])


def sigma_r(theta, phi) -> np.ndarray:
    """The matrix sigma . r_hat, shape (..., 2, 2)."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    c, s = np.cos(theta), np.sin(theta)
    out = np.empty(np.broadcast(theta, phi).shape + (2, 2), dtype=complex)
    out[..., 0, 0] = c
    out[..., 0, 1] = s * np.exp(-1j * phi)
    out[..., 1, 0] = s * np.exp(1j * phi)
    out[..., 1, 1] = -c
    return out


def apply_sigma_r(sector: AngularSector, branch: HarmonicBranch, theta, phi) -> TwoSpinorSample:
    s = spinor_harmonic(sector, branch, theta, phi)
    return sigma_r_of(s)


def sigma_r_of(sample: TwoSpinorSample) -> TwoSpinorSample:
    m = sigma_r(sample.theta, sample.phi)
    up = m[..., 0, 0] * sample.upper + m[..., 0, 1] * sample.lower
    dn = m[..., 1, 0] * sample.upper + m[..., 1, 1] * sample.lower
    return TwoSpinorSample(sample.theta, sample.phi, up, dn)


def harmonic_parity(sector: AngularSector, branch: HarmonicBranch) -> int:
    """Sign of Phi^{(+-)} under r_hat -> -r_hat."""
    l = sector.l if HarmonicBranch(branch) is HarmonicBranch.PLUS else sector.l + 1
    return -1 if l % 2 else 1


def four_spinor_parity(sector: AngularSector) -> int:
    """Sign s with gamma_0 X(-r) = s X(r) for the 4-spinor of this sector."""
    k = sector.l if sector.spinor_type is SpinorType.PHI else sector.l + 1
    return -1 if k % 2 else 1


def antipode(theta, phi):
    return np.pi - np.asarray(theta, dtype=float), np.asarray(phi, dtype=float) + np.pi


def sphere_grid(n_theta: int = 64, n_phi: int = 64):
    """Gauss-Legendre in cos(theta) times uniform phi; returns flat (theta, phi, weights)."""
    x, wx = np.polynomial.legendre.leggauss(n_theta)
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    th, ph = np.meshgrid(np.arccos(x), phi, indexing="ij")
    w = np.outer(wx, np.full(n_phi, 2.0 * np.pi / n_phi))
    return th.ravel(), ph.ravel(), w.ravel()


def sphere_inner(a: TwoSpinorSample, b: TwoSpinorSample, weights) -> complex:
    """<a, b> on the unit sphere, conjugate-linear in a."""
    return complex(np.sum(weights * (np.conj(a.upper) * b.upper + np.conj(a.lower) * b.lower)))
