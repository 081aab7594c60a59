import math
import subprocess
import sys

import numpy as np
import pytest

from diracband.angular import AngularSector, SpinorType
from diracband.dispersion import bulk_roots, critical_eigenvalues_chiral, edge_roots
from diracband.oracle import (InsufficientRootsError, ShootingProblem, frobenius_seed,
                              oracle_eigenvalues, shoot)
from diracband.problem import BoundaryCondition, ProblemSpec


def spec(bc=BoundaryCondition.APS_MINUS, t=SpinorType.PHI, j=3.5, R=1.0, lam=0.0):
    return ProblemSpec(bc, AngularSector(j, 0.5, t), R, lam)


def test_oracle_does_not_load_bessel_code():
    code = ("import sys, diracband.oracle as o\n"
            "from diracband.problem import *\nfrom diracband.angular import *\n"
            "s = ProblemSpec(BoundaryCondition.APS_MINUS, AngularSector(3.5, 0.5), 1.0)\n"
            "o.oracle_eigenvalues(o.ShootingProblem(s, 2.0), 1, (-2, 0))\n"
            "print('diracband.specfun' in sys.modules, any('bessel' in m for m in sys.modules if m.startswith('diracband')))")
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["False", "False"]


def test_problem_validation():
    with pytest.raises(ValueError):
        ShootingProblem(spec(), 1.0, series_order=3)
    with pytest.raises(ValueError):
        ShootingProblem(spec(), 1.0, r_start=1e-3)


def test_frobenius_seed_solves_series_balance():
    # leading behaviour (r^l, (mu - E) r^{l+1} / (2l + 3)) for PhiType
    F, G = frobenius_seed(3, False, 0.7, 1.2, 1e-5)
    assert F == pytest.approx(1.0, abs=1e-9)
    assert G == pytest.approx((1.2 - 0.7) * 1e-5 / 9, rel=1e-8)


def test_mu_zero_bessel_zeros():
    got = oracle_eigenvalues(ShootingProblem(spec(), 0.0), 3, (0.5, 16.0))
    assert np.allclose(got, [8.182561452571242, 11.70490715457039, 15.03966470761652], atol=1e-9)


def test_edge_root_matches_dispersion():
    o = oracle_eigenvalues(ShootingProblem(spec(), 2.0), 1, (-2.0, 0.0))
    assert o[0] == pytest.approx(edge_roots(spec(), 2.0)[0], abs=1e-6)


def test_chiral_critical_point_is_root():
    Ep, Em = critical_eigenvalues_chiral(3, 10.0, 0.1)
    s = spec(BoundaryCondition.CHIRAL_BAG, SpinorType.PSI, R=10.0, lam=0.1)
    assert abs(shoot(ShootingProblem(s, Ep), Ep)) <= 1e-8
    s = spec(BoundaryCondition.CHIRAL_BAG, SpinorType.PHI, R=10.0, lam=0.1)
    assert abs(shoot(ShootingProblem(s, -Em), Em)) <= 1e-8


def test_bulk_roots_match():
    o = oracle_eigenvalues(ShootingProblem(spec(), 0.5), 5, (0.5, 25.0))
    d = bulk_roots(spec(), 0.5, 5)
    assert np.allclose(o, d, rtol=1e-6)


def test_empty_window_and_shortfall():
    assert oracle_eigenvalues(ShootingProblem(spec(), 0.5), 3, (1.0, 1.0)) == []
    with pytest.raises(InsufficientRootsError):
        oracle_eigenvalues(ShootingProblem(spec(), 0.5), 3, (0.5, 9.0))


@pytest.mark.parametrize("bc,lam", [(BoundaryCondition.APS_MINUS, 0.0), (BoundaryCondition.CHIRAL_BAG, 0.1)])
@pytest.mark.parametrize("t", list(SpinorType))
def test_edge_counts_match(bc, lam, t):
    s = spec(bc, t, lam=lam)
    for mu in (-2.0, -0.5, 0.5, 2.0):
        o = oracle_eigenvalues(ShootingProblem(s, mu), None, (-abs(mu), abs(mu)))
        assert len(o) == len(edge_roots(s, mu))
