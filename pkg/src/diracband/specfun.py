"""Half-integer-order Bessel functions J_nu, I_nu and their regularized series.

Orders are nu = k + 1/2 with k >= 0. Values come from closed-form seeds at
nu = 1/2, 3/2, upward recurrence while nu < x and continued-fraction ratios
(Miller-type backward recurrence) above that. Modified Bessel values are
built from the scaled seed exp(-x) I_{1/2}(x) times backward ratios, so the
dispersion code can form I_{l+1/2}/I_{l+3/2} without overflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._backend import bessel as _k

_LOG_MAX = math.log(np.finfo(float).max)


@dataclass(frozen=True)
class HalfIntOrder:
    """Order nu = two_nu / 2 with two_nu odd and positive."""

    two_nu: int

    def __post_init__(self):
        if self.two_nu <= 0 or self.two_nu % 2 != 1:
            raise ValueError(f"two_nu must be odd and positive, got {self.two_nu}")

    @property
    def nu(self) -> float:
        return self.two_nu / 2.0

    @property
    def k(self) -> int:
        """Integer part: nu = k + 1/2."""
        return (self.two_nu - 1) // 2

    @classmethod
    def of(cls, nu: "HalfIntOrder | float") -> "HalfIntOrder":
        if isinstance(nu, HalfIntOrder):
            return nu
        two = 2.0 * float(nu)
        if abs(two - round(two)) > 1e-12:
            raise ValueError(f"order {nu} is not a half-integer")
        return cls(int(round(two)))


def _check_x(x: float) -> float:
    x = float(x)
    if not x > 0.0:
        raise ValueError(f"argument must be positive, got {x}")
    return x


def bessel_J_array(kmax: int, x: float) -> np.ndarray:
    """J_{k+1/2}(x) for k = 0..kmax."""
    x = _check_x(x)
    out = np.empty(kmax + 1)
    _k.j_half_array(kmax, x, out)
    return out


def bessel_I_scaled_array(kmax: int, x: float) -> np.ndarray:
    """exp(-x) I_{k+1/2}(x) for k = 0..kmax."""
    x = _check_x(x)
    out = np.empty(kmax + 1)
    _k.i_half_scaled_array(kmax, x, out)
    return out


def bessel_J(nu, x: float) -> float:
    """J_nu(x) for half-integer nu > 0, x > 0."""
    k = HalfIntOrder.of(nu).k
    return float(bessel_J_array(k, x)[k])


def bessel_I_scaled(nu, x: float) -> float:
    """exp(-x) I_nu(x)."""
    k = HalfIntOrder.of(nu).k
    return float(bessel_I_scaled_array(k, x)[k])


def bessel_I(nu, x: float) -> float:
    """I_nu(x); raises OverflowError when the value leaves double range."""
    x = _check_x(x)
    s = bessel_I_scaled(nu, x)
    if x + math.log(s) > _LOG_MAX:
        raise OverflowError(f"I_nu({x}) overflows double precision")
    return s * math.exp(x)


def bessel_I_ratio(l: int, x: float) -> float:
    """I_{l+3/2}(x) / I_{l+1/2}(x), formed without computing either value."""
    return _k.i_ratio(l + 1, _check_x(x))


def gamma_half(two_a: int) -> float:
    """Gamma(two_a / 2) for odd positive two_a, by recurrence from Gamma(1/2)."""
    if two_a <= 0 or two_a % 2 != 1:
        raise ValueError(f"two_a must be odd and positive, got {two_a}")
    g = math.sqrt(math.pi)
    a = 0.5
    while 2 * a < two_a:
        g *= a
        a += 1.0
    return g


def _gamma_over_sqrtpi(two_a: int) -> Fraction:
    g = Fraction(1)
    a = Fraction(1, 2)
    while 2 * a < two_a:
        g *= a
        a += 1
    return g


def _exact_series(nu: HalfIntOrder, z: float, alternating: bool) -> float:
    # Rational summation of the series: the float input is exact in binary,
    # Gamma(nu+n+1)/sqrt(pi) is rational, so cancellation costs nothing.
    q = Fraction(z) ** 2 / 4
    sign = -1 if alternating else 1
    g = _gamma_over_sqrtpi(nu.two_nu + 2)
    term = 1 / g
    total = term
    n = 0
    while True:
        n += 1
        term = term * sign * q / (n * (Fraction(nu.two_nu, 2) + n))
        total += term
        if n > q and abs(term) < abs(total) * Fraction(1, 10**18):
            break
    return float(total) / math.sqrt(math.pi)


def bessel_IP(nu, z: float) -> float:
    """Regularized series I^P_nu(z), with I_nu(z) = (z/2)^nu I^P_nu(z)."""
    order = HalfIntOrder.of(nu)
    z = float(z)
    if z < 0.0:
        raise ValueError("z must be non-negative")
    if z <= 40.0:
        return _k.series_p(order.nu, 0.25 * z * z, False)
    log_v = math.log(bessel_I_scaled(order, z)) + z - order.nu * math.log(z / 2.0)
    return math.exp(log_v)


def bessel_JP(nu, z: float) -> float:
    """Regularized series J^P_nu(z), with J_nu(z) = (z/2)^nu J^P_nu(z).

    Small arguments use the float series; larger ones sum the series in exact
    rational arithmetic so the alternating cancellation does not cost digits.
    """
    order = HalfIntOrder.of(nu)
    z = float(z)
    if z < 0.0:
        raise ValueError("z must be non-negative")
    if z <= 2.0:
        return _k.series_p(order.nu, 0.25 * z * z, True)
    if z <= 60.0:
        return _exact_series(order, z, True)
    return bessel_J(order, z) / (z / 2.0) ** order.nu


def regular_pair(l: int, w: float) -> tuple[float, float]:
    """(F_{l+1/2}(w), F_{l+3/2}(w)) up to one common positive factor.

    F_nu(w) = sum_n w^n / (n! Gamma(nu+n+1)) is I^P_nu(2 sqrt w) for w > 0 and
    J^P_nu(2 sqrt(-w)) for w < 0; it is entire in w, which lets one formula cover
    the edge, critical and bulk regimes.
    """
    return _k.regular_pair(int(l), float(w))


def _newton_polish(order: HalfIntOrder, lo: float, hi: float) -> float:
    k = order.k
    flo = bessel_J_array(k, lo)[k]
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo < 1e-6:
            break
        fm = bessel_J_array(k, mid)[k]
        if (fm > 0.0) == (flo > 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(50):
        vals = bessel_J_array(k + 1, x)
        # J'_nu = (nu/x) J_nu - J_{nu+1}
        deriv = order.nu / x * vals[k] - vals[k + 1]
        step = vals[k] / deriv
        x_new = x - step
        if not lo <= x_new <= hi:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= 1e-15 * x:
            return x_new
        x = x_new
    return x


def bessel_zeros(nu, n: int) -> list[float]:
    """First n positive zeros of J_nu, increasing, each to about 1e-12 absolute."""
    if n < 1:
        raise ValueError("n must be at least 1")
    order = HalfIntOrder.of(nu)
    k = order.k
    step = 0.5
    # no zero of J_nu lies below nu
    x = max(order.nu, 1e-3)
    fx = bessel_J_array(k, x)[k]
    zeros: list[float] = []
    while len(zeros) < n:
        x_next = x + step
        f_next = bessel_J_array(k, x_next)[k]
        if f_next == 0.0:
            zeros.append(float(x_next))
        elif fx != 0.0 and (fx > 0.0) != (f_next > 0.0):
            zeros.append(float(_newton_polish(order, x, x_next)))
        x, fx = x_next, f_next
    return zeros[:n]
