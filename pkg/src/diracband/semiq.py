"""The semi-quantum Hamiltonian K_mu(k) and the mapping degrees of its Q matrices.

K_mu(k) = [[mu 1, -i k.sigma], [i k.sigma, -mu 1]] with doubly degenerate
eigenvalues +-sqrt(mu^2 + k^2). The off-diagonal blocks of the Q matrices give
maps R^3 -> S^3 whose degree is +-1/2 sgn(mu); it is computed here in closed
form, by quadrature of the pulled-back area form, and from the SU(2) trace
3-form on a discrete grid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import integrate

SIGMA = np.array([[[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]], dtype=complex)
I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
# unitary bringing the chiral operator sigma_1 x 1 to sigma_3 x 1
G_OFFDIAG = np.kron(np.array([[1, 1], [1, -1]]) / math.sqrt(2.0), I2).astype(complex)


class ExceptionalPointError(ValueError):
    pass


class DegenerateOriginError(ValueError):
    pass


class UndefinedDegreeError(ValueError):
    pass


class NonConvergenceError(ArithmeticError):
    pass


class GridTooCoarseError(ValueError):
    pass


class Gauge(Enum):
    UP = "up"
    DOWN = "down"


class DegreeMethod(Enum):
    ANALYTIC = "Analytic"
    QUADRATURE = "Quadrature"
    TRACE_FORM = "TraceForm"


def k_dot_sigma(k) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    return np.tensordot(k, SIGMA, axes=(-1, 0))


def k_matrix(k, mu: float) -> np.ndarray:
    ks = k_dot_sigma(k)
    m = mu * I2
    return np.block([[m, -1j * ks], [1j * ks, -m]])


@dataclass
class SemiQuantumState:
    k: np.ndarray
    mu: float
    matrix: np.ndarray
    lambda_plus: float
    lambda_minus: float
    projector_plus: np.ndarray
    projector_minus: np.ndarray

    @property
    def knorm(self) -> float:
        return float(np.linalg.norm(self.k))


def k_hamiltonian(k, mu: float) -> SemiQuantumState:
    k = np.asarray(k, dtype=float).reshape(3)
    K = k_matrix(k, mu)
    lam = math.sqrt(mu * mu + float(k @ k))
    if lam == 0.0:
        # every vector is an eigenvector of the zero matrix
        pp, pm = np.full((4, 4), np.nan + 0j), np.full((4, 4), np.nan + 0j)
    else:
        pp = (lam * I4 + K) / (2 * lam)
        pm = (lam * I4 - K) / (2 * lam)
    return SemiQuantumState(k, float(mu), K, lam, -lam, pp, pm)


def eigen_multiplicities(state: SemiQuantumState, tol: float = 1e-10) -> tuple[int, int]:
    """Numbers of numerical eigenvalues near lambda_plus and lambda_minus."""
    w = np.linalg.eigvalsh(state.matrix)
    scale = max(1.0, state.lambda_plus)
    return (int(np.sum(np.abs(w - state.lambda_plus) <= tol * scale)),
            int(np.sum(np.abs(w - state.lambda_minus) <= tol * scale)))


def eigenvectors(state: SemiQuantumState, sign: int, gauge: Gauge) -> np.ndarray:
    """Orthonormal 4x2 frame of the sign-eigenspace in the requested gauge."""
    k1, k2, k3 = state.k
    mu = state.mu
    lam = state.lambda_plus if sign > 0 else state.lambda_minus
    gauge = Gauge(gauge)
    if gauge is Gauge.UP:
        c = 1j * (lam - mu)
        n2 = 2 * lam * (lam - mu)
        cols = [[k3, k1 + 1j * k2, c, 0], [k1 - 1j * k2, -k3, 0, c]]
    else:
        c = -1j * (lam + mu)
        n2 = 2 * lam * (lam + mu)
        cols = [[c, 0, k3, k1 + 1j * k2], [0, c, k1 - 1j * k2, -k3]]
    if state.lambda_plus == 0.0:
        raise DegenerateOriginError("(k, mu) = (0, 0) is a total degeneracy")
    if not n2 > 1e-28 * max(1.0, state.lambda_plus) ** 2:
        raise ExceptionalPointError(
            f"k={state.k.tolist()} is an exceptional point of the {gauge.value} gauge "
            f"for the {'+' if sign > 0 else '-'} eigenvalue at mu={mu}")
    return np.array(cols, dtype=complex).T / math.sqrt(n2)


def transition_matrix(state: SemiQuantumState, sign: int) -> np.ndarray:
    """U with u_down = u_up U on the overlap of the two gauges."""
    up = eigenvectors(state, sign, Gauge.UP)
    down = eigenvectors(state, sign, Gauge.DOWN)
    return up.conj().T @ down


def q_matrices(state: SemiQuantumState) -> tuple[np.ndarray, np.ndarray]:
    if state.lambda_plus == 0.0:
        raise DegenerateOriginError("Q matrices are undefined at (k, mu) = (0, 0)")
    return state.matrix / state.lambda_plus, state.matrix / state.lambda_minus


def offdiag_blocks(state: SemiQuantumState, sign: int) -> tuple[np.ndarray, np.ndarray, float]:
    """Upper-right and lower-left blocks of g Q g^{-1}, plus the size of its diagonal blocks."""
    qp, qm = q_matrices(state)
    q = qp if sign > 0 else qm
    m = G_OFFDIAG @ q @ G_OFFDIAG.conj().T
    diag = max(np.max(np.abs(m[:2, :2])), np.max(np.abs(m[2:, 2:])))
    return m[:2, 2:], m[2:, :2], float(diag)


@dataclass(frozen=True)
class S3Point:
    z1: complex
    z2: complex

    @property
    def x(self) -> np.ndarray:
        return np.array([self.z1.real, self.z1.imag, self.z2.real, self.z2.imag])

    def norm(self) -> float:
        return math.hypot(abs(self.z1), abs(self.z2))


def _rho(k, mu) -> float:
    r = math.sqrt(float(np.dot(k, k)) + mu * mu)
    if r == 0.0:
        raise DegenerateOriginError("the map is undefined at (k, mu) = (0, 0)")
    return r


def map_q(sign: int, k, mu: float) -> S3Point:
    k = np.asarray(k, dtype=float)
    r = _rho(k, mu)
    s = 1.0 if sign > 0 else -1.0
    return S3Point(complex(k[0], k[1]) / r, complex(k[2], s * mu) / r)


def map_h(sign: int, k, mu: float) -> np.ndarray:
    """(k.sigma +- i mu 1) / sqrt(k^2 + mu^2), a unitary matrix with determinant -1."""
    k = np.asarray(k, dtype=float)
    r = _rho(k, mu)
    s = 1.0 if sign > 0 else -1.0
    return (k_dot_sigma(k) + s * 1j * mu * I2) / r


def q_limit_direction(sign: int, n, mu: float, k: float = 1e12) -> S3Point:
    """q at large |k| along the unit direction n."""
    n = np.asarray(n, dtype=float)
    return map_q(sign, k * n / np.linalg.norm(n), mu)


# --- degrees -------------------------------------------------------------------

@dataclass
class DegreeReport:
    method: DegreeMethod
    value: float
    error_estimate: float
    mu: float
    sign: int = 1
    integral: float | None = None


def _check_mu(mu):
    if mu == 0.0:
        raise UndefinedDegreeError("the degree is undefined at mu = 0: the map is singular at k = 0")


def degree_analytic(sign: int, mu: float) -> DegreeReport:
    _check_mu(mu)
    v = 0.5 * (1 if sign > 0 else -1) * (1 if mu > 0 else -1)
    return DegreeReport(DegreeMethod.ANALYTIC, v, 0.0, float(mu), 1 if sign > 0 else -1,
                        2 * math.pi ** 2 * v)


def area_form(x: np.ndarray, v1, v2, v3) -> np.ndarray:
    """S^3 area form with the orientation fixed at the north pole: omega = -i_X(dx1^..^dx4)."""
    m = np.stack([x, v1, v2, v3], axis=-2)
    return -np.linalg.det(m)


def pullback_density(sign: int, k: np.ndarray, mu: float) -> np.ndarray:
    """Coefficient of dk1^dk2^dk3 in q^* omega, from the Jacobian of q (k has shape (..., 3))."""
    k = np.asarray(k, dtype=float)
    s = 1.0 if sign > 0 else -1.0
    rho2 = np.sum(k * k, axis=-1) + mu * mu
    rho = np.sqrt(rho2)
    x = np.concatenate([k, np.full(k.shape[:-1] + (1,), s * mu)], axis=-1) / rho[..., None]
    vs = []
    for i in range(3):
        e = np.zeros(4)
        e[i] = 1.0
        vs.append(e / rho[..., None] - x * (k[..., i] / rho2)[..., None])
    return area_form(x, *vs)


def primitive_F(k: float, mu: float) -> float:
    """F with q^* omega = mu d(F varpi); F(inf) = pi / (4 |mu|)."""
    if math.isinf(k):
        return math.pi / (4 * abs(mu))
    return -k / (2 * (k * k + mu * mu)) + math.atan(k / mu) / (2 * mu)


def _sphere_rule(n_angular: int):
    x, w = np.polynomial.legendre.leggauss(n_angular)
    phi = (np.arange(2 * n_angular) + 0.5) * math.pi / n_angular
    ct, p = np.meshgrid(x, phi, indexing="ij")
    st = np.sqrt(1 - ct * ct)
    n = np.stack([st * np.cos(p), st * np.sin(p), ct], axis=-1).reshape(-1, 3)
    wt = (w[:, None] * np.full(phi.shape, math.pi / n_angular)[None, :]).reshape(-1)
    return n, wt


def _raw_integral_tan(sign, mu, n_radial, n_angular):
    # k = |mu| tan t maps [0, inf) onto [0, pi/2)
    t, wt = np.polynomial.legendre.leggauss(n_radial)
    t = 0.25 * math.pi * (t + 1)
    wt = 0.25 * math.pi * wt
    k = abs(mu) * np.tan(t)
    jac = abs(mu) / np.cos(t) ** 2
    n, wa = _sphere_rule(n_angular)
    pts = k[:, None, None] * n[None, :, :]
    dens = pullback_density(sign, pts, mu)
    return float(np.sum(wt[:, None] * (k * k * jac)[:, None] * wa[None, :] * dens))


def _raw_integral_truncated(sign, mu, k_max, n_angular):
    n, wa = _sphere_rule(n_angular)

    def radial(k):
        return k * k * float(np.sum(wa * pullback_density(sign, k * n, mu)))

    val, err = integrate.quad(radial, 0.0, k_max, limit=200, epsabs=1e-13, epsrel=1e-12,
                              points=[abs(mu)] if abs(mu) < k_max else None)
    s = 1.0 if sign > 0 else -1.0
    tail = s * mu * (primitive_F(math.inf, mu) - primitive_F(k_max, mu)) * 4 * math.pi
    return val + tail, err


def degree_quadrature(sign: int, mu: float, k_max: float | None = None, n_radial: int = 64,
                      n_angular: int = 8, method: str = "tan", tol: float = 1e-6) -> DegreeReport:
    """(1 / 2 pi^2) times the integral of the pulled-back area form over R^3.

    method "tan" integrates exactly over [0, inf) after k = |mu| tan t;
    method "truncate" integrates adaptively on [0, k_max] and adds the tail
    from the closed-form primitive. The error estimate compares against a
    half-resolution rule (tan) or takes the adaptive estimate (truncate).
    """
    _check_mu(mu)
    sgn = 1 if sign > 0 else -1
    if method == "tan":
        raw = _raw_integral_tan(sgn, mu, n_radial, n_angular)
        coarse = _raw_integral_tan(sgn, mu, max(2, n_radial // 2), max(2, n_angular // 2))
        err = abs(raw - coarse) / (2 * math.pi ** 2)
    elif method == "truncate":
        k_max = k_max if k_max is not None else 200.0 * abs(mu)
        if k_max < 10 * abs(mu):
            raise ValueError("k_max must be at least 10 |mu|")
        raw, e = _raw_integral_truncated(sgn, mu, k_max, n_angular)
        err = e / (2 * math.pi ** 2)
    else:
        raise ValueError(f"unknown method {method!r}")
    if err > tol:
        raise NonConvergenceError(f"quadrature error estimate {err:.2e} exceeds {tol:.2e}")
    return DegreeReport(DegreeMethod.QUADRATURE, raw / (2 * math.pi ** 2), err, float(mu), sgn, raw)


def su2_of(point: S3Point) -> np.ndarray:
    """x4 1 + i (x1 sigma_1 + x2 sigma_2 + x3 sigma_3).

    At the north pole this identification carries the tangent frame
    (x1, x2, x3), positive for the area form above, to the positive frame of
    the Lie algebra, so trace-form degrees and area-form degrees agree in sign.
    For q_+ it reproduces the off-diagonal block (mu + i k.sigma)/lambda of Q_+.
    """
    x = point.x
    return x[3] * I2 + 1j * np.tensordot(x[:3], SIGMA, axes=(0, 0))


def _field(target: str, sign: int, mu: float):
    """Vectorized k -> 2x2 unitary for the trace-form route."""
    s = 1.0 if sign > 0 else -1.0

    def q_su2(k):
        r = np.sqrt(np.sum(k * k, axis=-1) + mu * mu)[..., None, None]
        return (s * mu * I2 + 1j * np.tensordot(k, SIGMA, axes=(-1, 0))) / r

    def h_lit(k):
        r = np.sqrt(np.sum(k * k, axis=-1) + mu * mu)[..., None, None]
        return (np.tensordot(k, SIGMA, axes=(-1, 0)) + s * 1j * mu * I2) / r

    if target == "q":
        return q_su2
    if target == "h":
        return h_lit
    raise ValueError(f"unknown target {target!r}")


def _three_form(h, dh):
    """tr((h^dag dh)^3) coefficient from three partial derivatives dh[0..2]."""
    hd = np.conj(np.swapaxes(h, -1, -2))
    a = [hd @ d for d in dh]
    # sum over permutations with sign = 3 tr(A1 [A2, A3]) by cyclicity
    t = np.trace(a[0] @ (a[1] @ a[2] - a[2] @ a[1]), axis1=-2, axis2=-1)
    return 3.0 * t


def trace_form_density(k, mu: float, step: float | None = None, target: str = "q",
                       sign: int = 1) -> float:
    """Discrete tr((U^dag dU)^3) / dk^3 at one point, from central differences in k.

    For target "q" (U = su2_of(q_sign)) this approaches 12 sign mu / (k^2 + mu^2)^2;
    for the literal h_+ (target "h") it approaches -12 mu / (k^2 + mu^2)^2.
    """
    k = np.asarray(k, dtype=float)
    step = step if step is not None else min(0.05, abs(mu) / 20)
    f = _field(target, sign, mu)
    dh = []
    for i in range(3):
        e = np.zeros(3)
        e[i] = step
        dh.append((f(k + e) - f(k - e)) / (2 * step))
    return float(_three_form(f(k), dh).real)


def degree_trace_form(mu: float, n: int = 48, k_max: float | None = None, target: str = "q",
                      sign: int = 1) -> DegreeReport:
    """(1 / 24 pi^2) int tr((U^dag dU)^3) on a compactified grid.

    R^3 is covered by k = |mu| tan(t) n(theta, phi) with (t, theta, phi) on a
    regular midpoint grid of n x n x 2n cells; the 3-form is assembled from
    central differences of U along the three grid coordinates, which keeps
    the cell sums independent of the closed-form integrand. With k_max given
    the grid stops at |k| = k_max and the outer part is added from the
    primitive of the integrand.
    """
    _check_mu(mu)
    if n < 8:
        raise GridTooCoarseError("at least 8 cells per direction are needed")
    f = _field(target, sign, mu)
    a = abs(mu)
    t_max = 0.5 * math.pi if k_max is None else math.atan(k_max / a)
    nt, nth, nph = n, n, 2 * n
    dt, dth, dph = t_max / nt, math.pi / nth, 2 * math.pi / nph
    t = (np.arange(nt) + 0.5) * dt
    th = (np.arange(nth) + 0.5) * dth
    ph = (np.arange(nph) + 0.5) * dph
    T, TH, PH = np.meshgrid(t, th, ph, indexing="ij")

    def kpt(T, TH, PH):
        kk = a * np.tan(T)
        st = np.sin(TH)
        return np.stack([kk * st * np.cos(PH), kk * st * np.sin(PH), kk * np.cos(TH)], axis=-1)

    # differences at a fraction of the cell size keep the stencil inside t < pi/2
    eps = 0.25
    h0 = f(kpt(T, TH, PH))
    dh = []
    for dT, dTH, dPH, d in ((dt, 0, 0, dt), (0, dth, 0, dth), (0, 0, dph, dph)):
        plus = f(kpt(T + eps * dT, TH + eps * dTH, PH + eps * dPH))
        minus = f(kpt(T - eps * dT, TH - eps * dTH, PH - eps * dPH))
        dh.append((plus - minus) / (2 * eps * d))
    dens = _three_form(h0, dh).real
    total = float(np.sum(dens)) * dt * dth * dph
    tail = 0.0
    if k_max is not None:
        w = (1.0 if sign > 0 else -1.0) * (1.0 if target == "q" else -1.0)
        tail = w * 12 * mu * (primitive_F(math.inf, mu) - primitive_F(k_max, mu)) * 4 * math.pi
    value = (total + tail) / (24 * math.pi ** 2)
    # midpoint and difference errors are both O(cell^2); compare with a coarser grid
    err = 0.0
    if n >= 16:
        coarse = degree_trace_form(mu, n // 2, k_max, target, sign).value
        err = abs(value - coarse) / 3.0
    return DegreeReport(DegreeMethod.TRACE_FORM, value, err, float(mu), 1 if sign > 0 else -1,
                        (total + tail) / 12.0)


def jumps(mu: float = 1.0, **kw) -> tuple[float, float]:
    """(nu[q+](|mu|) - nu[q+](-|mu|), nu[q-](|mu|) - nu[q-](-|mu|)) by quadrature."""
    m = abs(mu)
    jp = degree_quadrature(+1, m, **kw).value - degree_quadrature(+1, -m, **kw).value
    jm = degree_quadrature(-1, m, **kw).value - degree_quadrature(-1, -m, **kw).value
    return jp, jm


# --- level crossing at k = 0 ------------------------------------------------

@dataclass
class CrossingReport:
    mus: np.ndarray
    projector_plus_error: np.ndarray
    projector_minus_error: np.ndarray
    min_gap_off_origin: float
    passed: bool


def eigenspace_crossing_check(mu_sequence, n_k: int = 200, seed: int = 0,
                              tol: float = 1e-6) -> CrossingReport:
    """Projector limits at k = 0 on both sides of mu = 0, and no crossing at k != 0.

    For mu < 0 the + eigenspace at k = 0 is span{e3, e4} and the - eigenspace
    span{e1, e2}; for mu > 0 they are exchanged.
    """
    mus = np.asarray(mu_sequence, dtype=float)
    if not (np.any(mus < 0) and np.any(mus > 0)):
        raise ValueError("mu_sequence must straddle 0")
    upper = np.diag([1, 1, 0, 0]).astype(complex)
    lower = np.diag([0, 0, 1, 1]).astype(complex)
    ep, em = [], []
    for mu in mus:
        if mu == 0.0:
            ep.append(np.nan)
            em.append(np.nan)
            continue
        st = k_hamiltonian(np.zeros(3), mu)
        tp, tm = (upper, lower) if mu > 0 else (lower, upper)
        ep.append(float(np.max(np.abs(st.projector_plus - tp))))
        em.append(float(np.max(np.abs(st.projector_minus - tm))))
    rng = np.random.default_rng(seed)
    ks = rng.normal(size=(n_k, 3))
    gap = math.inf
    for mu in mus:
        for k in ks:
            w = np.linalg.eigvalsh(k_matrix(k, mu))
            gap = min(gap, (w[2] - w[1]) / np.linalg.norm(k))
    ep, em = np.array(ep), np.array(em)
    ok = bool(np.nanmax(ep) <= tol and np.nanmax(em) <= tol and gap > 0)
    return CrossingReport(mus, ep, em, float(gap), ok)


def su2_rotation(g: np.ndarray) -> np.ndarray:
    """G with g sigma_k g^{-1} = sum_j sigma_j G_jk."""
    G = np.empty((3, 3))
    for j in range(3):
        for k in range(3):
            G[j, k] = 0.5 * np.trace(SIGMA[j] @ g @ SIGMA[k] @ g.conj().T).real
    return G


def random_su2(rng) -> np.ndarray:
    q = rng.normal(size=4)
    q /= np.linalg.norm(q)
    a, b = complex(q[0], q[1]), complex(q[2], q[3])
    return np.array([[a, -b.conjugate()], [b, a.conjugate()]])
