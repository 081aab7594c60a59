# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Bessel kernels for half-integer orders (see _pybessel.py)."""
from libc.math cimport sin, cos, sqrt, expm1, fabs, floor, tgamma, M_PI
from libc.stdlib cimport malloc, free

cdef double _TINY = 1e-300
cdef double _EPS = 1e-15
cdef int _MAX_CF = 100000


cdef double _lentz(double b0, double sign_a, double x2) except? -1.0:
    cdef double f = _TINY, c = _TINY, d = 0.0, b = b0, a = 1.0, delta
    cdef int i
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
        if fabs(delta - 1.0) < _EPS:
            return f
        a = sign_a * x2
        b += 2.0
    raise ArithmeticError("continued fraction did not converge")


cpdef double i_ratio(int k, double x) except? -1.0:
    """I_{k+1/2}(x) / I_{k-1/2}(x) for k >= 1, x > 0."""
    return x * _lentz(2.0 * k + 1.0, 1.0, x * x)


cpdef double j_ratio(int k, double x) except? -1.0:
    """J_{k+1/2}(x) / J_{k-1/2}(x) by continued fraction."""
    return x * _lentz(2.0 * k + 1.0, -1.0, x * x)


cdef int _j_fill(int n, double x, double* out) except -1:
    cdef double s = sqrt(2.0 / (M_PI * x))
    cdef double sx = sin(x)
    cdef double rho
    cdef int k, k0 = 0
    cdef double* ratios
    out[0] = s * sx
    if x >= 1.5:
        k0 = <int>floor(x - 0.5)
        if k0 > n:
            k0 = n
    if k0 >= 1:
        out[1] = s * (sx / x - cos(x))
        for k in range(1, k0):
            out[k + 1] = (2.0 * k + 1.0) / x * out[k] - out[k - 1]
    if n > k0:
        ratios = <double*>malloc((n + 1) * sizeof(double))
        if ratios == NULL:
            raise MemoryError()
        try:
            rho = j_ratio(n, x)
            ratios[n] = rho
            k = n - 1
            while k > k0:
                rho = x / (2.0 * k + 1.0 - x * rho)
                ratios[k] = rho
                k -= 1
            for k in range(k0 + 1, n + 1):
                out[k] = out[k - 1] * ratios[k]
        finally:
            free(ratios)
    return 0


cdef int _i_fill(int n, double x, double* out) except -1:
    cdef double s = sqrt(2.0 / (M_PI * x))
    cdef double r
    cdef int k
    cdef double* ratios
    out[0] = -s * expm1(-2.0 * x) / 2.0
    if n == 0:
        return 0
    ratios = <double*>malloc((n + 1) * sizeof(double))
    if ratios == NULL:
        raise MemoryError()
    try:
        r = i_ratio(n, x)
        ratios[n] = r
        k = n - 1
        while k > 0:
            r = x / (2.0 * k + 1.0 + x * r)
            ratios[k] = r
            k -= 1
        for k in range(1, n + 1):
            out[k] = out[k - 1] * ratios[k]
    finally:
        free(ratios)
    return 0


def j_half_array(int n, double x, double[::1] out):
    """Fill out[k] = J_{k+1/2}(x) for k = 0..n."""
    _j_fill(n, x, &out[0])


def i_half_scaled_array(int n, double x, double[::1] out):
    """Fill out[k] = exp(-x) I_{k+1/2}(x) for k = 0..n."""
    _i_fill(n, x, &out[0])


cpdef double series_p(double nu, double q, bint alternating) except? -1.0:
    """sum_n (+-q)^n / (n! Gamma(nu+n+1)), q = (z/2)^2."""
    cdef double t = 1.0 / tgamma(nu + 1.0)
    cdef double total = t
    cdef double sq = -q if alternating else q
    cdef int n = 0
    while True:
        t *= sq / ((n + 1.0) * (nu + n + 1.0))
        total += t
        n += 1
        if fabs(t) <= 1e-17 * fabs(total) and n > q:
            return total
        if n > 100000:
            raise ArithmeticError("series did not converge")


cpdef tuple regular_pair(int l, double w):
    """Regular radial pair (F_{l+1/2}(w), F_{l+3/2}(w)) up to a common positive factor."""
    cdef double x, q
    cdef bint alt
    cdef double buf[64]
    cdef double* out
    cdef double a, b
    if fabs(w) <= 1.0:
        alt = w < 0.0
        q = fabs(w)
        return series_p(l + 0.5, q, alt), series_p(l + 1.5, q, alt)
    x = 2.0 * sqrt(fabs(w))
    if w > 0.0:
        return 1.0, 2.0 / x * i_ratio(l + 1, x)
    if l + 2 <= 64:
        _j_fill(l + 1, x, buf)
        return buf[l], buf[l + 1] * 2.0 / x
    out = <double*>malloc((l + 2) * sizeof(double))
    if out == NULL:
        raise MemoryError()
    try:
        _j_fill(l + 1, x, out)
        a = out[l]
        b = out[l + 1] * 2.0 / x
    finally:
        free(out)
    return a, b
