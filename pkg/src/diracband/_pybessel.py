"""Pure-Python Bessel kernels for half-integer orders.

Mirrors ``_cbessel.pyx`` function for function. Orders are passed as the
integer k with nu = k + 1/2.
"""
import math

_TINY = 1e-300
_EPS = 1e-15
_MAX_CF = 100000


def _lentz(b0, sign_a, x2):
    # 1/(b0 + s x^2/(b0+2 + s x^2/(b0+4 + ...))), modified Lentz
    f = _TINY
    c = f
    d = 0.0
    b = b0
    a = 1.0
    for i in range(_MAX_CF):
        d = b + a * d
        if d == 0.0:
            d = _TINY
        c = b + a / c
        if c == 0.0:
            c = _TINY
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < _EPS:
            return f
        a = sign_a * x2
        b += 2.0
    raise ArithmeticError("continued fraction did not converge")


def i_ratio(k, x):
    """I_{k+1/2}(x) / I_{k-1/2}(x) for k >= 1, x > 0."""
    return x * _lentz(2.0 * k + 1.0, 1.0, x * x)


def j_ratio(k, x):
    """J_{k+1/2}(x) / J_{k-1/2}(x) by continued fraction (k + 1/2 > x preferred)."""
    return x * _lentz(2.0 * k + 1.0, -1.0, x * x)


def j_half_array(n, x, out):
    """Fill out[k] = J_{k+1/2}(x) for k = 0..n."""
    s = math.sqrt(2.0 / (math.pi * x))
    sx = math.sin(x)
    out[0] = s * sx
    k0 = 0
    if x >= 1.5:
        k0 = min(n, int(math.floor(x - 0.5)))
    if k0 >= 1:
        out[1] = s * (sx / x - math.cos(x))
        for k in range(1, k0):
            out[k + 1] = (2.0 * k + 1.0) / x * out[k] - out[k - 1]
    if n > k0:
        rho = j_ratio(n, x)
        ratios = [0.0] * (n + 1)
        ratios[n] = rho
        for k in range(n - 1, k0, -1):
            rho = x / (2.0 * k + 1.0 - x * rho)
            ratios[k] = rho
        for k in range(k0 + 1, n + 1):
            out[k] = out[k - 1] * ratios[k]


def i_half_scaled_array(n, x, out):
    """Fill out[k] = exp(-x) I_{k+1/2}(x) for k = 0..n."""
    s = math.sqrt(2.0 / (math.pi * x))
    out[0] = -s * math.expm1(-2.0 * x) / 2.0
    if n == 0:
        return
    r = i_ratio(n, x)
    ratios = [0.0] * (n + 1)
    ratios[n] = r
    for k in range(n - 1, 0, -1):
        r = x / (2.0 * k + 1.0 + x * r)
        ratios[k] = r
    for k in range(1, n + 1):
        out[k] = out[k - 1] * ratios[k]


def series_p(nu, q, alternating):
    """sum_n (+-q)^n / (n! Gamma(nu+n+1)), q = (z/2)^2."""
    t = 1.0 / math.gamma(nu + 1.0)
    total = t
    sq = -q if alternating else q
    n = 0
    while True:
        t *= sq / ((n + 1.0) * (nu + n + 1.0))
        total += t
        n += 1
        if abs(t) <= 1e-17 * abs(total) and n > q:
            return total
        if n > 100000:
            raise ArithmeticError("series did not converge")


def regular_pair(l, w):
    """Regular radial pair (F_{l+1/2}(w), F_{l+3/2}(w)) up to a common positive factor.

    F_nu(w) = sum w^n / (n! Gamma(nu+n+1)) with w = (mu^2 - E^2) r^2 / 4.
    """
    if abs(w) <= 1.0:
        alt = w < 0.0
        q = abs(w)
        return series_p(l + 0.5, q, alt), series_p(l + 1.5, q, alt)
    x = 2.0 * math.sqrt(abs(w))
    if w > 0.0:
        return 1.0, 2.0 / x * i_ratio(l + 1, x)
    out = [0.0] * (l + 2)
    j_half_array(l + 1, x, out)
    return out[l], out[l + 1] * 2.0 / x
