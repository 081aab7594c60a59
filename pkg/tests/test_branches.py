import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diracband.angular import AngularSector, SpinorType
from diracband.branches import (AmbiguousCrossingError, Branch, BranchPoint, FlowMode,
                                FlowReport, NoSignChangeError, StateClass, classify_point,
                                roots_at, solve_root, spectral_flow, sweep_branches)
from diracband.dispersion import DispersionEquation, EquationRegime, unified_residual
from diracband.problem import BoundaryCondition, ProblemSpec

APS = ProblemSpec(BoundaryCondition.APS_MINUS, AngularSector(3.5, 0.5), 1.0)
CHIRAL = ProblemSpec(BoundaryCondition.CHIRAL_BAG, AngularSector(3.5, 0.5), 10.0, 0.1)
# frozen from the shooting oracle
EDGE_PHI_MU2 = -0.2072895603859433


def test_solve_root_bulk_mu_zero():
    eq = DispersionEquation(APS, EquationRegime.BULK_POSITIVE_E)
    p = solve_root(eq, (7.0, 9.0), 0.0)
    assert p.E == pytest.approx(8.182561452571242, abs=1e-10)
    assert abs(p.residual) <= 1e-12
    assert p.state_class is StateClass.BULK


def test_solve_root_edge():
    eq = DispersionEquation(APS, EquationRegime.EDGE)
    p = solve_root(eq, (-1.0, -0.01), 2.0)
    assert p.E == pytest.approx(EDGE_PHI_MU2, abs=1e-6)
    assert p.state_class is StateClass.EDGE


def test_solve_root_no_sign_change():
    eq = DispersionEquation(APS, EquationRegime.BULK_POSITIVE_E)
    with pytest.raises(NoSignChangeError):
        solve_root(eq, (1.0, 2.0), 0.0)


def test_classify_point():
    assert classify_point(0.0, 0.0) is StateClass.ZERO_MODE
    assert classify_point(1.0, -1.0) is StateClass.CRITICAL
    assert classify_point(0.2, 1.0) is StateClass.EDGE


def test_aps_sweep_two_edge_branches():
    br = sweep_branches(APS, np.linspace(-4, 4, 201))
    assert len(br) == 2
    assert {b.p_sign for b in br} == {1, -1}
    for b in br:
        assert len(b) == 201
        i = int(np.argmin(np.abs(b.mu)))
        assert b.points[i].E == 0.0 and b.points[i].state_class is StateClass.ZERO_MODE
    rep = spectral_flow(br)
    assert rep.flow == 0
    assert rep.by_p_sign() == {1: -1, -1: 1}


def test_chiral_crossings():
    br = sweep_branches(CHIRAL, np.linspace(-1, 1, 101), n_bulk=2)
    rep = spectral_flow(br, FlowMode.EXTENDED)
    assert rep.flow == 0
    lines = {c.line: c for c in rep.contributions}
    assert lines["E=+mu"].crossing_mu == pytest.approx(9 * math.exp(-0.1) / 20, abs=1e-9)
    assert lines["E=-mu"].crossing_E == pytest.approx(-9 * math.exp(0.1) / 20, abs=1e-9)
    assert lines["E=+mu"].delta == 1 and lines["E=-mu"].delta == -1


def _synthetic(mus, Es, p=1):
    spec = APS if p > 0 else APS.with_type(SpinorType.PSI)
    pts = [BranchPoint(m, E, classify_point(E, m), p, 0.0, "syn") for m, E in zip(mus, Es)]
    return Branch("syn", spec, pts)


def test_synthetic_upward_crossing():
    mus = np.linspace(-1, 1, 11)
    rep = spectral_flow([_synthetic(mus, 0.5 * mus + 0.05)], refine=False)
    assert rep.flow == 1
    assert rep.contributions[0].crossing_mu == pytest.approx(-0.1)
    rep = spectral_flow([_synthetic(mus, -0.5 * mus + 0.05)], refine=False)
    assert rep.flow == -1


def test_touch_is_ambiguous():
    mus = np.linspace(-1, 1, 11)
    with pytest.raises(AmbiguousCrossingError):
        spectral_flow([_synthetic(mus, mus ** 2)], refine=False)


def test_flow_report_consistency():
    with pytest.raises(ValueError):
        FlowReport(1, [], FlowMode.ORDINARY)


def test_monotone_grid_required():
    with pytest.raises(ValueError):
        sweep_branches(APS, [0.0, 1.0, 0.5])


def test_bulk_never_crosses_zero():
    br = sweep_branches(APS, np.linspace(-2, 2, 41), n_bulk=3, include_edge=False)
    for b in br:
        assert np.all(b.E > 0) or np.all(b.E < 0)


def test_no_jump_warnings_on_reference_sweeps():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        sweep_branches(CHIRAL, np.linspace(1.3, 1.7, 21), n_bulk=3)


def test_threads_deterministic():
    a = sweep_branches(APS, np.linspace(-1, 1, 21), n_bulk=1, threads=1)
    b = sweep_branches(APS, np.linspace(-1, 1, 21), n_bulk=1, threads=4)
    assert [(x.branch_id, list(x.E)) for x in a] == [(x.branch_id, list(x.E)) for x in b]


@settings(max_examples=10, deadline=None)
@given(R=st.sampled_from([0.5, 1.0, 2.0]), lo=st.floats(-3, -0.5), hi=st.floats(0.5, 3))
def test_continuity_and_residual_property(R, lo, hi):
    spec = ProblemSpec(BoundaryCondition.APS_MINUS, AngularSector(3.5, 0.5), R)
    mus = np.linspace(lo, hi, 41)
    dmu = mus[1] - mus[0]
    for b in sweep_branches(spec, mus, n_bulk=1):
        assert np.all(np.abs(np.diff(b.E)) <= 1.0 * dmu + 1e-9)
        for p in b.points:
            assert abs(unified_residual(b.spec, p.E, p.mu)) <= 1e-10


@settings(max_examples=20, deadline=None)
@given(mu=st.floats(-4, 4).filter(lambda m: abs(m) > 1e-3))
def test_roots_at_sorted_unique(mu):
    r = roots_at(APS, mu, 2)
    assert r == sorted(r) and len(set(r)) == len(r)
