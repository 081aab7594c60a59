# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled DOP853 integrator for the regular radial systems (see _pyshoot.py)."""
from libc.math cimport exp, log, fabs, sqrt, pow

from scipy.integrate._ivp import dop853_coefficients as _dop

cdef enum:
    NS = 12

cdef double _A[NS][NS]
cdef double _B[NS]
cdef double _C[NS]
cdef double _E3[NS + 1]
cdef double _E5[NS + 1]

cdef int _i, _j
for _i in range(NS):
    _B[_i] = float(_dop.B[_i])
    _C[_i] = float(_dop.C[_i])
    for _j in range(NS):
        _A[_i][_j] = float(_dop.A[_i, _j])
for _i in range(NS + 1):
    _E3[_i] = float(_dop.E3[_i])
    _E5[_i] = float(_dop.E5[_i])

cdef double _SAFETY = 0.9
cdef double _MIN_FACTOR = 0.2
cdef double _MAX_FACTOR = 10.0


cdef inline void _rhs(double t, double F, double G, int l, bint psi,
                      double ep, double em, double* dF, double* dG) nogil:
    cdef double r = exp(t)
    if psi:
        dF[0] = -(2 * l + 2) * F + r * ep * G
        dG[0] = r * em * F
    else:
        dF[0] = r * ep * G
        dG[0] = -(2 * l + 2) * G + r * em * F


def integrate_radial(int l, bint psi, double E, double mu, double r0, double r1,
                     double F0, double G0, double rtol, int max_steps):
    """Integrate from r0 to r1; returns (F, G, n_steps)."""
    cdef double ep = E + mu, em = mu - E
    cdef double t = log(r0), t1 = log(r1)
    cdef double F = F0, G = G0, Fn, Gn
    cdef double h = t1 - t
    cdef double kF[NS + 1]
    cdef double kG[NS + 1]
    cdef double dF, dG, sF, sG, e5F, e5G, e3F, e3G, scale, e5, e3, denom, err, factor
    cdef int s, q, steps = 0
    cdef bint rejected = False
    if h > 0.1:
        h = 0.1
    _rhs(t, F, G, l, psi, ep, em, &kF[0], &kG[0])
    while t < t1:
        if steps >= max_steps:
            raise ArithmeticError("radial integration exceeded the step budget")
        if t + h > t1:
            h = t1 - t
        for s in range(1, NS):
            dF = 0.0
            dG = 0.0
            for q in range(s):
                dF += _A[s][q] * kF[q]
                dG += _A[s][q] * kG[q]
            _rhs(t + _C[s] * h, F + h * dF, G + h * dG, l, psi, ep, em, &kF[s], &kG[s])
        sF = 0.0
        sG = 0.0
        for s in range(NS):
            sF += _B[s] * kF[s]
            sG += _B[s] * kG[s]
        Fn = F + h * sF
        Gn = G + h * sG
        _rhs(t + h, Fn, Gn, l, psi, ep, em, &kF[NS], &kG[NS])
        e5F = 0.0
        e5G = 0.0
        e3F = 0.0
        e3G = 0.0
        for s in range(NS + 1):
            e5F += _E5[s] * kF[s]
            e5G += _E5[s] * kG[s]
            e3F += _E3[s] * kF[s]
            e3G += _E3[s] * kG[s]
        scale = fabs(F)
        if fabs(G) > scale:
            scale = fabs(G)
        if fabs(Fn) > scale:
            scale = fabs(Fn)
        if fabs(Gn) > scale:
            scale = fabs(Gn)
        scale = rtol * scale + 1e-300
        e5 = (e5F / scale) ** 2 + (e5G / scale) ** 2
        e3 = (e3F / scale) ** 2 + (e3G / scale) ** 2
        denom = e5 + 0.01 * e3
        if denom > 0.0:
            err = fabs(h) * e5 / sqrt(2.0 * denom)
        else:
            err = 0.0
        steps += 1
        if err < 1.0:
            if err == 0.0:
                factor = _MAX_FACTOR
            else:
                factor = _SAFETY * pow(err, -0.125)
                if factor > _MAX_FACTOR:
                    factor = _MAX_FACTOR
            if rejected and factor > 1.0:
                factor = 1.0
            t += h
            F = Fn
            G = Gn
            kF[0] = kF[NS]
            kG[0] = kG[NS]
            h *= factor
            rejected = False
        else:
            factor = _SAFETY * pow(err, -0.125)
            if factor < _MIN_FACTOR:
                factor = _MIN_FACTOR
            h *= factor
            rejected = True
            if h < 1e-14:
                raise ArithmeticError("step size underflow in radial integration")
    return F, G, steps
