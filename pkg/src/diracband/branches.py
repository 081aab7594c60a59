"""Eigenvalue branches E(mu): root solving, continuation in mu and spectral flow."""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.optimize import brentq, linear_sum_assignment

from .angular import SpinorType
from .dispersion import (DispersionEquation, bulk_roots, edge_roots,
                         unified_residual)
from .problem import BoundaryCondition, ProblemSpec

CRITICAL_TOL = 1e-10
CROSSING_TOL = 1e-10


class StateClass(Enum):
    EDGE = "Edge"
    BULK = "Bulk"
    ZERO_MODE = "ZeroMode"
    CRITICAL = "Critical"


class FlowMode(Enum):
    ORDINARY = "Ordinary"
    EXTENDED = "Extended"


class NoSignChangeError(ValueError):
    pass


class MaxIterationError(ArithmeticError):
    pass


class AmbiguousCrossingError(ArithmeticError):
    pass


class BranchJumpWarning(RuntimeWarning):
    pass


def classify_point(E: float, mu: float) -> StateClass:
    if E == 0.0 and mu == 0.0:
        return StateClass.ZERO_MODE
    gap = abs(E) - abs(mu)
    if abs(gap) <= CRITICAL_TOL * max(1.0, abs(mu)):
        return StateClass.CRITICAL
    return StateClass.EDGE if gap < 0 else StateClass.BULK


@dataclass(frozen=True)
class BranchPoint:
    mu: float
    E: float
    state_class: StateClass
    p_sign: int
    residual: float
    branch_id: str | None = None


@dataclass
class Branch:
    branch_id: str
    spec: ProblemSpec
    points: list[BranchPoint] = field(default_factory=list)

    @property
    def p_sign(self) -> int:
        return self.spec.sector.p_sign

    @property
    def mu(self) -> np.ndarray:
        return np.array([p.mu for p in self.points])

    @property
    def E(self) -> np.ndarray:
        return np.array([p.E for p in self.points])

    @property
    def kind(self) -> str:
        classes = {p.state_class for p in self.points}
        has_edge = bool(classes & {StateClass.EDGE, StateClass.ZERO_MODE})
        has_bulk = StateClass.BULK in classes
        if has_edge and has_bulk:
            return "transient"
        return "bulk" if has_bulk else "edge"

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class FlowContribution:
    branch_id: str
    p_sign: int
    crossing_mu: float
    delta: int
    line: str = "E=0"
    crossing_E: float = 0.0


@dataclass
class FlowReport:
    flow: int
    contributions: list[FlowContribution]
    mode: FlowMode

    def __post_init__(self):
        if self.flow != sum(c.delta for c in self.contributions):
            raise ValueError("flow must equal the sum of the contributions")

    def by_p_sign(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.contributions:
            out[c.p_sign] = out.get(c.p_sign, 0) + c.delta
        return out


def _point(spec: ProblemSpec, E: float, mu: float, branch_id=None) -> BranchPoint:
    cls = classify_point(E, mu)
    res = unified_residual(spec, E, mu)
    return BranchPoint(float(mu), float(E), cls, spec.sector.p_sign, float(res), branch_id)


def solve_root(equation: DispersionEquation, bracket: tuple[float, float], mu: float,
               tol: float = 1e-12, max_iter: int = 100, branch_id=None) -> BranchPoint:
    """Bisection down to 1e-6, then Newton with a central-difference slope."""
    spec = equation.spec
    lo, hi = sorted(map(float, bracket))
    for E in (lo, hi):
        if not equation.valid(E, mu):
            raise ValueError(f"bracket end {E} outside the {equation.regime.value} regime at mu={mu}")

    def f(E):
        return unified_residual(spec, E, mu)

    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return _point(spec, lo, mu, branch_id)
    if fhi == 0.0:
        return _point(spec, hi, mu, branch_id)
    if flo * fhi > 0:
        raise NoSignChangeError(f"residual has no sign change on [{lo}, {hi}] at mu={mu}")
    n = 0
    while hi - lo > 1e-6 * max(1.0, abs(lo), abs(hi)):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        n += 1
        if fm == 0.0:
            return _point(spec, mid, mu, branch_id)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
        if n > 200:
            raise MaxIterationError("bisection did not converge")
    x = 0.5 * (lo + hi)
    for _ in range(max_iter):
        fx = f(x)
        if abs(fx) <= tol:
            return _point(spec, x, mu, branch_id)
        if (fx > 0) == (flo > 0):
            lo, flo = x, fx
        else:
            hi, fhi = x, fx
        h = 1e-7 * max(1.0, abs(x))
        d = (f(x + h) - f(x - h)) / (2 * h)
        xn = x - fx / d if d != 0.0 else 0.5 * (lo + hi)
        if not lo <= xn <= hi:
            xn = 0.5 * (lo + hi)
        if xn == x:
            break
        x = xn
    fx = f(x)
    if abs(fx) <= tol:
        return _point(spec, x, mu, branch_id)
    raise MaxIterationError(f"Newton stalled at E={x} with residual {fx:.3e}")


def roots_at(spec: ProblemSpec, mu: float, n_bulk: int = 0, include_edge: bool = True) -> list[float]:
    """Sorted, de-duplicated roots at one mu: edge roots plus n_bulk per sign."""
    out: list[float] = []
    if include_edge:
        if mu == 0.0 and spec.bc is BoundaryCondition.APS_MINUS:
            # the edge branch is defined to pass through the zero mode at the origin
            out.append(0.0)
        else:
            out += edge_roots(spec, mu)
    if n_bulk:
        out += bulk_roots(spec, mu, n_bulk, +1) + bulk_roots(spec, mu, n_bulk, -1)
    out.sort()
    dedup: list[float] = []
    for E in out:
        if dedup and abs(E - dedup[-1]) <= 1e-12 * max(1.0, abs(E)):
            continue
        dedup.append(E)
    return dedup


def _match(pred: np.ndarray, roots: list[float], gate: float):
    """Nearest assignment of predicted values to roots; pairs beyond gate are dropped."""
    if len(pred) == 0 or len(roots) == 0:
        return []
    cost = np.abs(pred[:, None] - np.asarray(roots)[None, :])
    big = 1e6 + cost.max()
    rows, cols = linear_sum_assignment(np.where(cost <= gate, cost, big))
    return [(int(r), int(c), float(cost[r, c])) for r, c in zip(rows, cols) if cost[r, c] <= gate]


def _continue(spec: ProblemSpec, mus: np.ndarray, root_sets: list[list[float]], prefix: str,
              n_bulk: int, include_edge: bool, max_refine: int = 4) -> list[Branch]:
    branches: list[Branch] = []
    active: list[int] = []
    counter = 0

    def new_branch(E, mu):
        nonlocal counter
        bid = f"{prefix}{counter}"
        counter += 1
        b = Branch(bid, spec, [_point(spec, E, mu, bid)])
        branches.append(b)
        return len(branches) - 1

    def predict(b: Branch, mu):
        pts = b.points
        if len(pts) < 2:
            return pts[-1].E, 0.0
        p0, p1 = pts[-2], pts[-1]
        slope = (p1.E - p0.E) / (p1.mu - p0.mu)
        step = slope * (mu - p1.mu)
        return p1.E + step, abs(step)

    def advance(mu, roots, depth):
        nonlocal active
        prev_mu = branches[active[0]].points[-1].mu if active else None
        dmu = abs(mu - prev_mu) if prev_mu is not None else 0.0
        preds = [predict(branches[i], mu) for i in active]
        pred = np.array([p[0] for p in preds])
        # |dE/dmu| <= 1 on every branch, so a true continuation moves at most dmu
        gate = 2.0 * dmu + 1e-9
        pairs = _match(pred, roots, gate)
        jumps = [(r, d) for r, _, d in pairs
                 if len(branches[active[r]].points) > 1
                 and d > 5.0 * max(preds[r][1], 0.05 * dmu) + 1e-9]
        if jumps and depth < max_refine and prev_mu is not None:
            mid = 0.5 * (prev_mu + mu)
            advance(mid, roots_at(spec, mid, n_bulk, include_edge), depth + 1)
            advance(mu, roots, depth + 1)
            return
        if jumps:
            warnings.warn(f"branch matching distance {max(d for _, d in jumps):.3e} at mu={mu} "
                          "exceeds 5x the predicted step", BranchJumpWarning, stacklevel=3)
        used = set()
        still = []
        for r, c, _ in pairs:
            bi = active[r]
            branches[bi].points.append(_point(spec, roots[c], mu, branches[bi].branch_id))
            used.add(c)
            still.append(bi)
        for c, E in enumerate(roots):
            if c not in used:
                still.append(new_branch(E, mu))
        active = still

    for mu, roots in zip(mus, root_sets):
        advance(float(mu), roots, 0)
    return branches


def sweep_branches(spec: ProblemSpec, mu_grid, n_bulk: int = 0, include_edge: bool = True,
                   types=None, threads: int = 1) -> list[Branch]:
    """Continue all requested roots across a monotone mu grid.

    Both spinor types are swept unless `types` restricts them. Roots at each
    grid point are computed independently (optionally in parallel), then
    linked by nearest matching against a linear predictor; grid intervals
    with suspicious matches are bisected before a BranchJumpWarning is raised.
    """
    mus = np.asarray(mu_grid, dtype=float)
    if mus.ndim != 1 or len(mus) < 2:
        raise ValueError("mu_grid needs at least two points")
    d = np.diff(mus)
    if not (np.all(d > 0) or np.all(d < 0)):
        raise ValueError("mu_grid must be strictly monotone")
    if types is None:
        types = [SpinorType.PHI, SpinorType.PSI]
    out: list[Branch] = []
    for t in types:
        s = spec.with_type(SpinorType(t))

        def job(mu, s=s):
            return roots_at(s, float(mu), n_bulk, include_edge)

        if threads > 1:
            with ThreadPoolExecutor(threads) as ex:
                root_sets = list(ex.map(job, mus))
        else:
            root_sets = [job(mu) for mu in mus]
        out += _continue(s, mus, root_sets, f"{s.sector.spinor_type.value}-", n_bulk, include_edge)
    return out


def _refine_crossing(spec, line, m0, m1):
    """mu in [m0, m1] at which the point on the line is an exact root."""
    def g(mu):
        return unified_residual(spec, line * mu, mu)

    g0, g1 = g(m0), g(m1)
    if g0 == 0.0:
        return m0
    if g1 == 0.0:
        return m1
    if g0 * g1 > 0:
        return None
    return brentq(g, m0, m1, xtol=1e-15, rtol=1e-15, maxiter=200)


def _crossings(branch: Branch, dist, tol=CROSSING_TOL):
    """Indices (i, k) with a sign change of dist between points i and k."""
    d = [dist(p) for p in branch.points]
    out = []
    n = len(d)
    i = 0
    while i < n - 1:
        if abs(d[i + 1]) <= tol:
            # touching the line: look past it
            k = i + 1
            while k < n and abs(d[k]) <= tol:
                k += 1
            if k == n:
                break
            if abs(d[i]) > tol and d[i] * d[k] > 0:
                raise AmbiguousCrossingError(
                    f"branch {branch.branch_id} touches the line near mu={branch.points[i + 1].mu}")
            if abs(d[i]) > tol:
                out.append((i, k))
            i = k
            continue
        if abs(d[i]) > tol and d[i] * d[i + 1] < 0:
            out.append((i, i + 1))
        i += 1
    return out


def _zero_crossings(branch: Branch, refine: bool = True):
    out = []
    for i, k in _crossings(branch, lambda p: p.E):
        p0, p1 = branch.points[i], branch.points[k]
        delta = 1 if p1.E > p0.E else -1
        if p1.mu < p0.mu:
            delta = -delta
        mids = [p for p in branch.points[i + 1:k] if p.state_class is StateClass.ZERO_MODE]
        if mids:
            mu_c = mids[0].mu
        else:
            mu_c = _refine_crossing(branch.spec, 0.0, p0.mu, p1.mu) if refine else None
            if mu_c is None:
                mu_c = p0.mu - p0.E * (p1.mu - p0.mu) / (p1.E - p0.E)
        out.append(FlowContribution(branch.branch_id, branch.p_sign, float(mu_c), delta, "E=0", 0.0))
    return out


def _line_crossings(branch: Branch, line: float, refine: bool = True):
    """Crossings of E = line * mu away from the origin.

    delta is the line weight (-1 for E=-mu, +1 for E=+mu) times +1 when the
    branch enters the edge region |E| < |mu| as mu increases, -1 when it leaves.
    """
    out = []
    for i, k in _crossings(branch, lambda p: p.E - line * p.mu):
        p0, p1 = branch.points[i], branch.points[k]
        if p0.mu * p1.mu <= 0:
            # the two lines meet at the origin; that passage is an E = 0 crossing
            continue
        a, b = sorted((p0, p1), key=lambda p: p.mu)
        entering = abs(b.E) < abs(b.mu)
        delta = int(line) * (1 if entering else -1)
        mu_c = _refine_crossing(branch.spec, line, a.mu, b.mu) if refine else None
        if mu_c is None:
            da, db = a.E - line * a.mu, b.E - line * b.mu
            mu_c = a.mu - da * (b.mu - a.mu) / (db - da)
        out.append(FlowContribution(branch.branch_id, branch.p_sign, float(mu_c), delta,
                                    "E=+mu" if line > 0 else "E=-mu", float(line * mu_c)))
    return out


def spectral_flow(branches, mode=FlowMode.ORDINARY, refine: bool = True) -> FlowReport:
    """Signed count of crossings of E = 0 (ordinary) or of E = -+mu (extended).

    In extended mode a passage through the origin, where both lines meet, is
    counted as the E = 0 crossing it is. With refine=False crossing positions
    are linearly interpolated between samples instead of re-solved, which is
    what tabulated (possibly synthetic) branch data calls for.
    """
    mode = FlowMode(mode)
    contrib: list[FlowContribution] = []
    for b in branches:
        if len(b) < 2:
            continue
        if mode is FlowMode.ORDINARY:
            contrib += _zero_crossings(b, refine)
        else:
            zc = [c for c in _zero_crossings(b, refine) if abs(c.crossing_mu) <= 1e-9]
            contrib += zc + _line_crossings(b, -1.0, refine) + _line_crossings(b, +1.0, refine)
    contrib.sort(key=lambda c: (c.crossing_mu, c.branch_id))
    return FlowReport(sum(c.delta for c in contrib), contrib, mode)
