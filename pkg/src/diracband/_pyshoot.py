"""Pure-Python DOP853 integrator for the regular radial systems.

The state is (F, G) with f = r^l F, g = r^l G and independent variable
t = ln r, which removes the 1/r singular coefficients:

    PhiType:  F' = r (E+mu) G,                 G' = -(2l+2) G + r (mu-E) F
    PsiType:  F' = -(2l+2) F + r (E+mu) G,     G' = r (mu-E) F

Mirrors ``_cshoot.pyx``.
"""
import math

from scipy.integrate._ivp import dop853_coefficients as _dop

_NS = _dop.N_STAGES
_A = [[float(_dop.A[i, j]) for j in range(_NS)] for i in range(_NS)]
_B = [float(v) for v in _dop.B]
_C = [float(v) for v in _dop.C[:_NS]]
_E3 = [float(v) for v in _dop.E3]
_E5 = [float(v) for v in _dop.E5]

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 10.0


def _rhs(t, F, G, l, psi, ep, em):
    r = math.exp(t)
    if psi:
        return -(2 * l + 2) * F + r * ep * G, r * em * F
    return r * ep * G, -(2 * l + 2) * G + r * em * F


def integrate_radial(l, psi, E, mu, r0, r1, F0, G0, rtol, max_steps):
    """Integrate from r0 to r1; returns (F, G, n_steps)."""
    ep = E + mu
    em = mu - E
    t = math.log(r0)
    t1 = math.log(r1)
    F, G = F0, G0
    h = min(0.1, t1 - t)
    kF = [0.0] * (_NS + 1)
    kG = [0.0] * (_NS + 1)
    kF[0], kG[0] = _rhs(t, F, G, l, psi, ep, em)
    steps = 0
    rejected = False
    while t < t1:
        if steps >= max_steps:
            raise ArithmeticError("radial integration exceeded the step budget")
        if t + h > t1:
            h = t1 - t
        for s in range(1, _NS):
            a = _A[s]
            dF = 0.0
            dG = 0.0
            for q in range(s):
                dF += a[q] * kF[q]
                dG += a[q] * kG[q]
            kF[s], kG[s] = _rhs(t + _C[s] * h, F + h * dF, G + h * dG, l, psi, ep, em)
        sF = 0.0
        sG = 0.0
        for s in range(_NS):
            sF += _B[s] * kF[s]
            sG += _B[s] * kG[s]
        Fn = F + h * sF
        Gn = G + h * sG
        kF[_NS], kG[_NS] = _rhs(t + h, Fn, Gn, l, psi, ep, em)
        e5F = e5G = e3F = e3G = 0.0
        for s in range(_NS + 1):
            e5F += _E5[s] * kF[s]
            e5G += _E5[s] * kG[s]
            e3F += _E3[s] * kF[s]
            e3G += _E3[s] * kG[s]
        scale = rtol * max(abs(F), abs(G), abs(Fn), abs(Gn)) + 1e-300
        e5 = (e5F / scale) ** 2 + (e5G / scale) ** 2
        e3 = (e3F / scale) ** 2 + (e3G / scale) ** 2
        denom = e5 + 0.01 * e3
        err = abs(h) * e5 / math.sqrt(2.0 * denom) if denom > 0.0 else 0.0
        steps += 1
        if err < 1.0:
            if err == 0.0:
                factor = _MAX_FACTOR
            else:
                factor = min(_MAX_FACTOR, _SAFETY * err ** (-1.0 / 8.0))
            if rejected:
                factor = min(1.0, factor)
            t += h
            F, G = Fn, Gn
            kF[0], kG[0] = kF[_NS], kG[_NS]
            h *= factor
            rejected = False
        else:
            h *= max(_MIN_FACTOR, _SAFETY * err ** (-1.0 / 8.0))
            rejected = True
            if h < 1e-14:
                raise ArithmeticError("step size underflow in radial integration")
    return F, G, steps
