import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diracband.angular import AngularSector, SpinorType
from diracband.radial import (CriticalCase, Regime, RegimeError, bulk_profile, classify,
                              critical_profile, edge_profile, l2_normalize, l2_norm,
                              ode_residual, reduced_critical_profile, reduced_edge_state,
                              regular_solution, sup_distance, zero_mode_profile)

PHI = AngularSector(3.5, 0.5, SpinorType.PHI)
PSI = AngularSector(3.5, 0.5, SpinorType.PSI)


def test_classify():
    assert classify(0.1, 1.0) is Regime.EDGE
    assert classify(2.0, 1.0) is Regime.BULK
    assert classify(-1.0, 1.0) is Regime.CRITICAL


@pytest.mark.parametrize("sec", [PHI, PSI])
@pytest.mark.parametrize("E,mu", [(-0.3, 2.0), (0.5, -1.0), (7.0, 0.5), (-9.0, 1.5)])
def test_textbook_profiles_solve_ode(sec, E, mu):
    p = edge_profile(sec, E, mu) if abs(E) < abs(mu) else bulk_profile(sec, E, mu)
    assert ode_residual(p, 1.0) <= 1e-8


@pytest.mark.parametrize("sec", [PHI, PSI])
@pytest.mark.parametrize("case", list(CriticalCase))
def test_critical_profiles_solve_ode(sec, case):
    assert ode_residual(critical_profile(sec, case, 1.3), 2.0) <= 1e-8


def test_regime_errors():
    with pytest.raises(RegimeError):
        edge_profile(PHI, 2.0, 1.0)
    with pytest.raises(RegimeError):
        bulk_profile(PHI, 0.5, 1.0)


def test_unified_solution_proportional_to_textbook():
    r = np.linspace(0.05, 1.0, 30)
    for sec in (PHI, PSI):
        for E, mu in ((-0.4, 2.0), (6.0, 1.0)):
            f, g = regular_solution(sec, E, mu, r)
            p = edge_profile(sec, E, mu) if abs(E) < abs(mu) else bulk_profile(sec, E, mu)
            F, G = p.eval(r)
            c = F[-1] / f[-1]
            assert np.allclose(c * f, F, rtol=1e-10, atol=1e-14)
            assert np.allclose(c * g, G, rtol=1e-10, atol=1e-14)


def test_reduced_state_continuous_across_critical_line():
    mu = 1.5
    a = reduced_edge_state(PHI, -mu + 1e-9, mu)
    c = reduced_critical_profile(PHI, mu)
    assert sup_distance(a, c, 1.0) <= 1e-8


def test_zero_mode_limit_is_linear():
    z = zero_mode_profile(PHI)
    d1 = sup_distance(reduced_edge_state(PHI, 0.0, 1e-4), z, 1.0)
    d2 = sup_distance(reduced_edge_state(PHI, 0.0, 1e-5), z, 1.0)
    assert d1 / d2 == pytest.approx(10.0, rel=1e-3)


def test_l2_normalization():
    p = l2_normalize(bulk_profile(PSI, 5.0, 1.0), 1.0)
    assert l2_norm(p, 1.0) == pytest.approx(1.0, rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(l2=st.integers(0, 5), mu=st.floats(0.2, 4.0), frac=st.floats(-0.95, 0.95))
def test_edge_ode_property(l2, mu, frac):
    for t in SpinorType:
        sec = AngularSector(l2 + 0.5, 0.5, t)
        assert ode_residual(edge_profile(sec, frac * mu, mu), 1.0) <= 1e-7
