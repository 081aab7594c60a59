"""Command-line front end.

Subcommands:

    sweep   continue eigenvalue branches over a mu range and write CSV
    flow    spectral flow of a sweep CSV, as JSON
    degree  mapping degrees of the semi-quantum maps, as JSON
    verify  run verification suites, JSON list of checks
    oracle  compare dispersion roots against the shooting oracle

Exit codes: 0 success, 1 a verification or cross-check failed, 2 invalid
configuration, 3 solver failure, 4 ambiguous crossing.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .angular import AngularSector, SpinorType
from .branches import (AmbiguousCrossingError, Branch, BranchPoint, FlowMode,
                       StateClass, roots_at, spectral_flow, sweep_branches)
from .problem import BoundaryCondition, ProblemSpec

CSV_HEADER = ["mu", "E", "j", "p_sign", "state_class", "branch_id", "residual"]

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_AMBIGUOUS = 4


class ConfigError(ValueError):
    pass


def fmt(x) -> str:
    """Shortest round-trip decimal; independent of locale."""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return repr(float(x))


@dataclass
class RunConfig:
    subcommand: str
    bc: BoundaryCondition = BoundaryCondition.APS_MINUS
    j: float = 3.5
    R: float = 1.0
    chiral_lambda: float = 0.0
    mu_min: float = -4.0
    mu_max: float = 4.0
    mu_steps: int = 201
    n_bulk: int = 0
    include_edge: bool = True
    output: str | None = None
    threads: int = 1
    extra: dict = field(default_factory=dict)

    def validate(self):
        if self.mu_steps < 2:
            raise ConfigError("--mu-steps must be at least 2")
        if not self.mu_max > self.mu_min:
            raise ConfigError("empty mu range: --mu-max must exceed --mu-min")
        if not self.R > 0 or not math.isfinite(self.R):
            raise ConfigError("--R must be positive")
        two_j = 2 * self.j
        if self.j <= 0 or abs(two_j - round(two_j)) > 1e-12 or round(two_j) % 2 == 0:
            raise ConfigError("--j must be a positive half-integer")
        if self.n_bulk < 0:
            raise ConfigError("--n-bulk must be non-negative")
        if not self.include_edge and self.n_bulk == 0:
            raise ConfigError("nothing to sweep: no edge branches and --n-bulk 0")
        if self.threads < 1:
            raise ConfigError("--threads must be at least 1")
        return self

    def spec(self, spinor_type=SpinorType.PHI) -> ProblemSpec:
        return ProblemSpec(self.bc, AngularSector(self.j, 0.5, spinor_type), self.R, self.chiral_lambda)

    def mu_grid(self) -> np.ndarray:
        return np.linspace(self.mu_min, self.mu_max, self.mu_steps)


def default_threads() -> int:
    env = os.environ.get("DIRACBAND_THREADS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ConfigError(f"DIRACBAND_THREADS must be an integer, got {env!r}")
    return os.cpu_count() or 1


# --- sweep -------------------------------------------------------------------

def branches_to_rows(branches: list[Branch], j: float) -> list[list[str]]:
    rows = []
    for b in branches:
        for p in b.points:
            rows.append((b.branch_id, p.mu, [fmt(p.mu), fmt(p.E), fmt(j), str(p.p_sign),
                                             p.state_class.value, b.branch_id, fmt(p.residual)]))
    rows.sort(key=lambda t: (t[0], t[1]))
    return [r for _, _, r in rows]


def write_csv(rows, stream):
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_HEADER)
    w.writerows(rows)


def gnuplot_script(csv_path: str, branch_ids: list[str]) -> str:
    name = Path(csv_path).name
    lines = [
        "# E(mu) branches; run with: gnuplot -p " + Path(csv_path).with_suffix(".gp").name,
        "set datafile separator ','",
        "set key outside right",
        "set xlabel 'mu'",
        "set ylabel 'E'",
        "set arrow from graph 0, first 0 to graph 1, first 0 nohead dt 2",
        "plot x title 'E=mu' dt 3 lc rgb 'gray', -x title 'E=-mu' dt 3 lc rgb 'gray', \\",
    ]
    parts = [f"  '{name}' using 1:(strcol(6) eq '{bid}' ? $2 : 1/0) with lines title '{bid}'"
             for bid in branch_ids]
    lines.append(", \\\n".join(parts))
    return "\n".join(lines) + "\n"


def cmd_sweep(cfg: RunConfig, stdout=None) -> list[Branch]:
    stdout = stdout or sys.stdout
    with warnings.catch_warnings():
        warnings.simplefilter("default")
        branches = sweep_branches(cfg.spec(), cfg.mu_grid(), n_bulk=cfg.n_bulk,
                                  include_edge=cfg.include_edge, threads=cfg.threads)
    rows = branches_to_rows(branches, cfg.j)
    if cfg.output and cfg.output != "-":
        with open(cfg.output, "w", newline="", encoding="utf-8") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, stdout)
    if cfg.extra.get("emit_plot"):
        gp = Path(cfg.output).with_suffix(".gp")
        ids = sorted({b.branch_id for b in branches})
        gp.write_text(gnuplot_script(cfg.output, ids), encoding="utf-8", newline="\n")
    return branches


# --- flow --------------------------------------------------------------------

def read_branches(path: str, bc: BoundaryCondition, R: float, lam: float) -> list[Branch]:
    """Rebuild branches from a sweep CSV; p_sign +1 is PhiType, -1 PsiType."""
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != CSV_HEADER:
        raise ConfigError(f"unexpected CSV header {header}")
    groups: dict[str, list[BranchPoint]] = {}
    meta: dict[str, tuple[float, int]] = {}
    for n, row in enumerate(reader, start=2):
        if not row:
            continue
        try:
            mu, E, j, p, cls, bid, res = row
            point = BranchPoint(float(mu), float(E), StateClass(cls), int(p), float(res), bid)
            jj = float(j)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"line {n}: {exc}")
        if point.p_sign not in (1, -1):
            raise ConfigError(f"line {n}: p_sign must be +1 or -1")
        if bid in meta and meta[bid] != (jj, point.p_sign):
            raise ConfigError(f"line {n}: branch {bid} changes j or p_sign")
        meta[bid] = (jj, point.p_sign)
        groups.setdefault(bid, []).append(point)
    out = []
    for bid in sorted(groups):
        jj, p = meta[bid]
        t = SpinorType.PHI if p > 0 else SpinorType.PSI
        try:
            spec = ProblemSpec(bc, AngularSector(jj, 0.5, t), R, lam)
        except ValueError as exc:
            raise ConfigError(f"branch {bid}: {exc}")
        pts = sorted(groups[bid], key=lambda q: q.mu)
        out.append(Branch(bid, spec, pts))
    return out


def flow_json(report) -> dict:
    return {
        "mode": report.mode.value,
        "spectral_flow": report.flow,
        "contributions": [
            {"branch_id": c.branch_id, "p_sign": c.p_sign, "crossing_mu": c.crossing_mu,
             "crossing_E": c.crossing_E, "line": c.line, "delta": c.delta}
            for c in report.contributions
        ],
    }


def cmd_flow(args, stdout=None) -> dict:
    stdout = stdout or sys.stdout
    bc = BoundaryCondition(args.bc)
    mode = args.mode
    if mode is None:
        mode = "extended" if bc is BoundaryCondition.CHIRAL_BAG else "ordinary"
    mode = FlowMode.EXTENDED if mode == "extended" else FlowMode.ORDINARY
    lam = args.chiral_lambda if args.chiral_lambda is not None else \
        (0.1 if bc is BoundaryCondition.CHIRAL_BAG else 0.0)
    branches = read_branches(args.input, bc, args.R, lam)
    report = spectral_flow(branches, mode, refine=args.refine)
    out = flow_json(report)
    stdout.write(json.dumps(out, indent=2) + "\n")
    return out


# --- degree ------------------------------------------------------------------

def _report_json(r) -> dict:
    return {"method": r.method.value, "value": r.value, "error_estimate": r.error_estimate,
            "mu": r.mu, "sign": r.sign, "integral": r.integral}


def jump_json(**kw) -> dict:
    from .semiq import jumps

    jp, jm = jumps(1.0, **kw)
    return {"q_plus": int(round(jp)), "q_minus": int(round(jm)), "net": int(round(jp + jm)),
            "values": {"q_plus": jp, "q_minus": jm}}


def cmd_degree(args, stdout=None) -> dict:
    from .semiq import degree_analytic, degree_quadrature, degree_trace_form

    stdout = stdout or sys.stdout
    if args.jump:
        out = jump_json()
    elif args.mu == 0.0:
        out = {"mu": 0.0, "degree": "undefined",
               "reason": "the maps are not defined at k = 0 when mu = 0"}
    else:
        mu = args.mu
        out = {"mu": mu}
        for name, s in (("q_plus", 1), ("q_minus", -1)):
            out[name] = {
                "analytic": _report_json(degree_analytic(s, mu)),
                "quadrature": _report_json(degree_quadrature(s, mu)),
                "trace_form": _report_json(degree_trace_form(mu, n=args.trace_n, sign=s)),
            }
        out["jump"] = jump_json()
    stdout.write(json.dumps(out, indent=2) + "\n")
    return out


# --- verify ------------------------------------------------------------------

SUITES = ("symmetry", "current", "angular", "projector", "limits")


def _check(suite, name, residual, tol, detail="", passed=None) -> dict:
    r = float(residual)
    ok = (r <= tol) if passed is None else bool(passed)
    return {"suite": suite, "name": name, "residual": r, "tolerance": tol, "passed": ok, "detail": detail}


def _suite_symmetry(threads: int) -> list[dict]:
    from .symmetry import (MATRIX_TOL, SPECTRUM_TOL, SymmetryCheck, antiunitary_squares,
                           check_boundary_symmetries, check_k_symmetries,
                           check_spectrum_symmetries)

    out = []
    rng = np.random.default_rng(0)
    worst: dict[tuple, tuple] = {}
    for _ in range(50):
        k = rng.normal(size=3) * 2
        mu = rng.uniform(-3, 3)
        for c in check_k_symmetries(k, mu):
            key = (c.name.value, c.target.value, c.detail)
            if key not in worst or c.residual > worst[key][0]:
                worst[key] = (c.residual, c)
    for j in (0.5, 3.5):
        for mu in (-1.0, 0.5, 2.0):
            for c in check_boundary_symmetries(AngularSector(j, 0.5), mu, 1.0):
                key = (c.name.value, c.target.value, c.detail)
                if key not in worst or c.residual > worst[key][0]:
                    worst[key] = (c.residual, c)
    for _, c in worst.values():
        out.append(_check("symmetry", f"{c.name.value}/{c.target.value}", c.residual, MATRIX_TOL, c.detail))
    sq = antiunitary_squares()
    out.append(_check("symmetry", "antiunitary squares", 0.0, 0.0, json.dumps(sq),
                      passed=sq["1 x i sigma2"] == -1))
    grid = np.linspace(-2.0, 2.0, 41)
    aps = sweep_branches(ProblemSpec(BoundaryCondition.APS_MINUS, AngularSector(3.5, 0.5), 1.0),
                         grid, n_bulk=2, threads=threads)
    phi = [b for b in aps if b.p_sign > 0]
    psi = [b for b in aps if b.p_sign < 0]
    c = check_spectrum_symmetries(phi, psi, BoundaryCondition.APS_MINUS)
    out.append(_check("symmetry", "APS mirror (E,P) -> (-E,-P)", c.residual, SPECTRUM_TOL, c.detail))
    base = ProblemSpec(BoundaryCondition.CHIRAL_BAG, AngularSector(3.5, 0.5), 1.0, 0.1)
    a = sweep_branches(base, grid, n_bulk=2, threads=threads)
    b = sweep_branches(base.with_lambda(-0.1), grid, n_bulk=2, threads=threads)
    c = check_spectrum_symmetries(a, b, BoundaryCondition.CHIRAL_BAG)
    out.append(_check("symmetry", "chiral bag spectrum(lambda) = -spectrum(-lambda)", c.residual,
                      SPECTRUM_TOL, c.detail))
    c = check_spectrum_symmetries(a, a, BoundaryCondition.CHIRAL_BAG, use_p=False)
    out.append(_check("symmetry", "chiral bag spectrum at lambda=0.1 is not E -> -E symmetric",
                      c.residual, SPECTRUM_TOL, c.detail, passed=c.residual > SPECTRUM_TOL))
    return out


def _suite_current() -> list[dict]:
    from .boundary import boundary_current
    from .radial import regular_solution

    out = []
    cases = [(BoundaryCondition.APS_MINUS, 1.0, 0.0), (BoundaryCondition.APS_PLUS, 1.0, 0.0),
             (BoundaryCondition.CHIRAL_BAG, 10.0, 0.1)]
    for bc, R, lam in cases:
        for j in (0.5, 3.5):
            worst, n = 0.0, 0
            for t in SpinorType:
                spec = ProblemSpec(bc, AngularSector(j, 0.5, t), R, lam)
                for mu in (-2.0, -0.5, 0.5, 2.0):
                    for E in roots_at(spec, mu, 3):
                        f, g = regular_solution(spec.sector, E, mu, np.array([R]))
                        worst = max(worst, abs(boundary_current(spec.sector, complex(f[0]),
                                                                complex(g[0]), R)))
                        n += 1
            out.append(_check("current", f"normal current {bc.value} j={fmt(j)} R={fmt(R)}", worst, 1e-12,
                              f"{n} eigenstates"))
    return out


def _suite_angular() -> list[dict]:
    from .angular import (HarmonicBranch, apply_J3, apply_sigma_dot_L, apply_sigma_r,
                          sigma_dot_L_eigenvalue, sphere_grid, sphere_inner, spinor_harmonic)

    out = []
    rng = np.random.default_rng(1)
    th = rng.uniform(0.2, math.pi - 0.2, 30)
    ph = rng.uniform(0, 2 * math.pi, 30)
    gt, gp, w = sphere_grid(48, 48)
    for j in (0.5, 1.5, 3.5):
        for m in sorted({j, 0.5, -j}, reverse=True):
            sec = AngularSector(j, m)
            worst_l, worst_j, worst_n, worst_r = 0.0, 0.0, 0.0, 0.0
            for br in HarmonicBranch:
                h = spinor_harmonic(sec, br, th, ph)
                worst_l = max(worst_l, apply_sigma_dot_L(sec, br, th, ph).max_distance(
                    h.scaled(sigma_dot_L_eigenvalue(sec, br))))
                worst_j = max(worst_j, apply_J3(sec, br, th, ph).max_distance(h.scaled(m)))
                hg = spinor_harmonic(sec, br, gt, gp)
                worst_n = max(worst_n, abs(sphere_inner(hg, hg, w) - 1.0))
            # sigma_r exchanges the two harmonics of the sector
            rp = apply_sigma_r(sec, HarmonicBranch.PLUS, th, ph)
            hm = spinor_harmonic(sec, HarmonicBranch.MINUS, th, ph)
            worst_r = min(rp.max_distance(hm), rp.max_distance(hm.scaled(-1)))
            tag = f"j={fmt(j)} m={fmt(m)}"
            out.append(_check("angular", f"sigma.L eigenvalue {tag}", worst_l, 1e-9, "finite differences"))
            out.append(_check("angular", f"J3 eigenvalue {tag}", worst_j, 1e-9, "finite differences"))
            out.append(_check("angular", f"unit norm {tag}", worst_n, 1e-12))
            out.append(_check("angular", f"sigma_r exchanges harmonics {tag}", worst_r, 1e-12))
    return out


def _suite_projector() -> list[dict]:
    from .semiq import I4, eigenspace_crossing_check, k_hamiltonian

    rng = np.random.default_rng(2)
    res = {"hermitian": 0.0, "idempotent": 0.0, "trace 2": 0.0, "completeness": 0.0,
           "spectral decomposition": 0.0, "eigenvalues": 0.0}
    for _ in range(200):
        k = rng.normal(size=3) * 2
        mu = rng.uniform(-3, 3)
        st = k_hamiltonian(k, mu)
        Pp, Pm = st.projector_plus, st.projector_minus
        res["hermitian"] = max(res["hermitian"], np.abs(st.matrix - st.matrix.conj().T).max(),
                               np.abs(Pp - Pp.conj().T).max())
        res["idempotent"] = max(res["idempotent"], np.abs(Pp @ Pp - Pp).max(), np.abs(Pm @ Pm - Pm).max())
        res["trace 2"] = max(res["trace 2"], abs(np.trace(Pp) - 2), abs(np.trace(Pm) - 2))
        res["completeness"] = max(res["completeness"], np.abs(Pp + Pm - I4).max())
        res["spectral decomposition"] = max(res["spectral decomposition"], np.abs(
            st.lambda_plus * Pp + st.lambda_minus * Pm - st.matrix).max())
        lam = math.sqrt(mu * mu + float(k @ k))
        res["eigenvalues"] = max(res["eigenvalues"], abs(st.lambda_plus - lam), abs(st.lambda_minus + lam))
    out = [_check("projector", name, v, 1e-12, "200 random (k, mu)") for name, v in res.items()]
    cr = eigenspace_crossing_check([-1.0, -1e-3, -1e-8, 1e-8, 1e-3, 1.0])
    err = float(max(np.nanmax(cr.projector_plus_error), np.nanmax(cr.projector_minus_error)))
    out.append(_check("projector", "eigenspaces at k=0 exchange across mu=0", err, 1e-6,
                      f"min gap off origin {cr.min_gap_off_origin:.3g}", passed=cr.passed))
    return out


def _suite_limits() -> list[dict]:
    from .dispersion import critical_eigenvalues_chiral, edge_roots
    from .radial import (ode_residual, reduced_bulk_state, reduced_critical_profile,
                         reduced_edge_state, sup_distance, zero_mode_profile)

    out = []
    # edge states approach the zero mode linearly in mu
    for j in (0.5, 3.5):
        for t in SpinorType:
            sec = AngularSector(j, 0.5, t)
            spec = ProblemSpec(BoundaryCondition.APS_MINUS, sec, 1.0)
            z = zero_mode_profile(sec)
            for sgn in (1, -1):
                d = []
                for mu in (1e-4, 1e-5):
                    E = edge_roots(spec, sgn * mu)[0]
                    d.append(sup_distance(reduced_edge_state(sec, E, sgn * mu), z, 1.0))
                rate = d[0] / d[1]
                out.append(_check("limits", f"edge -> zero mode j={fmt(j)} {t.value} mu={'+' if sgn > 0 else '-'}0",
                                  abs(rate - 10.0), 1e-2,
                                  f"sup distance {d[0]:.3e} at |mu|=1e-4, {d[1]:.3e} at 1e-5 (linear rate)"))
    # reduced edge and bulk states on both sides of the coupled critical lines
    for R in (1.0, 10.0):
        Ep, Em = critical_eigenvalues_chiral(3, R, 0.1)
        for t in SpinorType:
            sec = AngularSector(3.5, 0.5, t)
            mu, line = (-Em, -1.0) if t is SpinorType.PHI else (Ep, 1.0)
            c = reduced_critical_profile(sec, mu)
            worst = 0.0
            for d in (1e-6, -1e-6):
                E = line * mu + d
                p = reduced_edge_state(sec, E, mu) if abs(E) < abs(mu) else reduced_bulk_state(sec, E, mu)
                worst = max(worst, sup_distance(p, c, R))
            r = np.geomspace(R * 1e-2, R, 200)
            f, g = c.eval(r)
            scale = max(np.abs(f).max(), np.abs(g).max())
            out.append(_check("limits", f"critical limit {t.value} R={fmt(R)}", worst / scale, 1e-5,
                              f"relative sup distance; absolute {worst:.3e}"))
            out.append(_check("limits", f"critical profile solves the ODE {t.value} R={fmt(R)}",
                              ode_residual(c, R), 1e-8))
    return out


def cmd_verify(args, stdout=None) -> list[dict]:
    stdout = stdout or sys.stdout
    suites = []
    for s in args.suite or []:
        suites += [x.strip() for x in s.split(",") if x.strip()]
    suites = suites or list(SUITES)
    bad = [s for s in suites if s not in SUITES]
    if bad:
        raise ConfigError(f"unknown suite(s) {bad}; choose from {', '.join(SUITES)}")
    runners = {"symmetry": lambda: _suite_symmetry(args.threads), "current": _suite_current,
               "angular": _suite_angular, "projector": _suite_projector, "limits": _suite_limits}
    out = []
    for s in suites:
        out += runners[s]()
    stdout.write(json.dumps(out, indent=2) + "\n")
    return out


# --- oracle ------------------------------------------------------------------

def cmd_oracle(cfg: RunConfig, args, stdout=None) -> list[dict]:
    from .oracle import ShootingProblem, oracle_eigenvalues

    stdout = stdout or sys.stdout
    lo, hi = args.window
    if not hi > lo:
        raise ConfigError("empty search window")
    types = [SpinorType.PHI, SpinorType.PSI] if args.type == "both" else [SpinorType(args.type)]
    # enough bulk roots per sign to cover the window
    n_bulk = int(math.ceil(max(abs(lo), abs(hi)) * cfg.R / math.pi)) + 3
    out = []
    for mu in args.mu:
        for t in types:
            spec = cfg.spec(t)
            o = oracle_eigenvalues(ShootingProblem(spec, mu), None, (lo, hi))
            d = [E for E in roots_at(spec, mu, n_bulk) if lo < E < hi]
            agree = len(o) == len(d)
            worst = max((abs(a - b) / max(1.0, abs(b)) for a, b in zip(o, d)), default=0.0) \
                if agree else math.inf
            out.append({"mu": mu, "type": t.value, "oracle": o, "dispersion": d,
                        "max_rel_diff": worst if math.isfinite(worst) else None,
                        "passed": agree and worst <= args.tol})
    stdout.write(json.dumps(out, indent=2) + "\n")
    return out


# --- argument parsing ----------------------------------------------------------

def _add_problem_args(p):
    p.add_argument("--bc", choices=[b.value for b in BoundaryCondition], default="aps",
                   help="aps = APS(-), aps+ = APS(+), chiral = chiral bag")
    p.add_argument("--j", type=float, default=3.5)
    p.add_argument("--R", type=float, default=1.0)
    p.add_argument("--chiral-lambda", type=float, default=None,
                   help="chiral bag parameter (default 0.1 for --bc chiral)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="diracband", description="Dirac spectra in a ball with spectral boundary conditions")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="continue branches over a mu range and write CSV")
    _add_problem_args(p)
    p.add_argument("--mu-min", type=float, default=-4.0)
    p.add_argument("--mu-max", type=float, default=4.0)
    p.add_argument("--mu-steps", type=int, default=201)
    p.add_argument("--branches", default="edge", help="comma list of edge, bulk")
    p.add_argument("--n-bulk", type=int, default=None, help="bulk roots per sign (default 4 with bulk)")
    p.add_argument("--output", "-o", default="-")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--emit-plot", action="store_true", help="write a gnuplot script next to the CSV")

    p = sub.add_parser("flow", help="spectral flow of a sweep CSV")
    p.add_argument("input", help="CSV written by sweep, or - for stdin")
    p.add_argument("--mode", choices=["ordinary", "extended"], default=None,
                   help="default: ordinary for aps, extended for chiral")
    _add_problem_args(p)
    p.add_argument("--refine", action="store_true",
                   help="re-solve crossing positions instead of interpolating the samples")

    p = sub.add_parser("degree", help="mapping degrees of q+ and q-")
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--jump", action="store_true", help="only the jumps across mu = 0")
    p.add_argument("--trace-n", type=int, default=48)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", action="append", help=f"any of {', '.join(SUITES)} (repeatable)")
    p.add_argument("--threads", type=int, default=None)

    p = sub.add_parser("oracle", help="cross-check dispersion roots with the shooting oracle")
    _add_problem_args(p)
    p.add_argument("--mu", type=float, nargs="+", default=[0.5])
    p.add_argument("--type", choices=["phi", "psi", "both"], default="both")
    p.add_argument("--window", type=float, nargs=2, default=[-10.0, 10.0])
    p.add_argument("--tol", type=float, default=1e-6)
    return ap


def _config(args) -> RunConfig:
    bc = BoundaryCondition(args.bc)
    lam = args.chiral_lambda
    if lam is None:
        lam = 0.1 if bc is BoundaryCondition.CHIRAL_BAG else 0.0
    cfg = RunConfig(args.command, bc, args.j, args.R, lam)
    if args.command == "sweep":
        kinds = {x.strip() for x in args.branches.split(",") if x.strip()}
        if not kinds or kinds - {"edge", "bulk"}:
            raise ConfigError("--branches takes a comma list of edge, bulk")
        cfg.include_edge = "edge" in kinds
        if args.n_bulk is not None:
            cfg.n_bulk = args.n_bulk
        else:
            cfg.n_bulk = 4 if "bulk" in kinds else 0
        if "bulk" not in kinds and args.n_bulk:
            raise ConfigError("--n-bulk given without bulk branches")
        cfg.mu_min, cfg.mu_max, cfg.mu_steps = args.mu_min, args.mu_max, args.mu_steps
        cfg.output = args.output
        cfg.threads = args.threads if args.threads is not None else default_threads()
        cfg.extra["emit_plot"] = args.emit_plot
        if args.emit_plot and cfg.output == "-":
            raise ConfigError("--emit-plot needs --output")
        cfg.validate()
    else:
        if not cfg.R > 0:
            raise ConfigError("--R must be positive")
        two_j = 2 * cfg.j
        if cfg.j <= 0 or abs(two_j - round(two_j)) > 1e-12 or round(two_j) % 2 == 0:
            raise ConfigError("--j must be a positive half-integer")
    return cfg


def main(argv=None) -> int:
    from .oracle import InsufficientRootsError
    from .semiq import NonConvergenceError

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "sweep":
            cmd_sweep(_config(args))
        elif args.command == "flow":
            if not args.R > 0:
                raise ConfigError("--R must be positive")
            cmd_flow(args)
        elif args.command == "degree":
            if args.trace_n < 8:
                raise ConfigError("--trace-n must be at least 8")
            cmd_degree(args)
        elif args.command == "verify":
            if args.threads is None:
                args.threads = default_threads()
            checks = cmd_verify(args)
            return EXIT_OK if all(c["passed"] for c in checks) else EXIT_CHECK_FAILED
        elif args.command == "oracle":
            res = cmd_oracle(_config(args), args)
            return EXIT_OK if all(r["passed"] for r in res) else EXIT_CHECK_FAILED
    except ConfigError as exc:
        print(f"diracband: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FileNotFoundError as exc:
        print(f"diracband: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except AmbiguousCrossingError as exc:
        print(f"diracband: ambiguous crossing: {exc}", file=sys.stderr)
        return EXIT_AMBIGUOUS
    except (ArithmeticError, InsufficientRootsError, NonConvergenceError, ValueError) as exc:
        print(f"diracband: solver failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
