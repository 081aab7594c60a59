import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diracband.angular import AngularSector, SpinorType
from diracband.branches import sweep_branches
from diracband.problem import BoundaryCondition, ProblemSpec
from diracband.symmetry import (CHIRAL_OP, PHS_QUANT_OP, TRS_QUANT_OP, SymmetryName,
                                antiunitary_squares, check_boundary_symmetries,
                                check_k_symmetries, check_spectrum_symmetries,
                                root_set_distance, sector_map)


def test_k_symmetries_reference_point():
    checks = check_k_symmetries([1, 2, 3], 0.7)
    assert len(checks) == 6
    assert all(c.residual <= 1e-14 for c in checks)


def test_antiunitary_squares():
    assert antiunitary_squares() == {"1 x i sigma2": -1, "sigma1 x i sigma2": -1,
                                     "sigma3 x i sigma2": -1, "sigma2 x sigma2": 1}


def test_boundary_symmetries():
    for sec, mu, R in ((AngularSector(3.5, 0.5), 1.0, 1.0), (AngularSector(1.5, -1.5), -0.3, 2.0)):
        for c in check_boundary_symmetries(sec, mu, R):
            assert c.passed, c


def test_sector_maps():
    phi = AngularSector(2.5, 0.5)
    M, fit = sector_map(CHIRAL_OP, False, phi, phi.with_type(SpinorType.PSI))
    assert fit <= 1e-13
    M, fit = sector_map(PHS_QUANT_OP, True, phi, AngularSector(2.5, -0.5, SpinorType.PSI))
    assert fit <= 1e-13 and np.allclose(M, [[0, -1], [-1, 0]], atol=1e-13)
    M, fit = sector_map(TRS_QUANT_OP, True, phi, AngularSector(2.5, -0.5))
    assert fit <= 1e-13


def test_root_set_distance_reports_unpaired():
    d, unpaired = root_set_distance([(1.0, 1)], [(-1.0, -1), (2.0, 1)])
    assert d == float("inf") and unpaired


def test_spectrum_symmetries():
    mus = np.linspace(-2, 2, 21)
    aps = ProblemSpec(BoundaryCondition.APS_MINUS, AngularSector(3.5, 0.5), 1.0)
    phi = sweep_branches(aps, mus, n_bulk=2, types=[SpinorType.PHI])
    psi = sweep_branches(aps, mus, n_bulk=2, types=[SpinorType.PSI])
    assert check_spectrum_symmetries(phi, psi, "aps").passed
    ch = ProblemSpec(BoundaryCondition.CHIRAL_BAG, AngularSector(3.5, 0.5), 1.0, 0.1)
    a = sweep_branches(ch, mus, n_bulk=2)
    b = sweep_branches(ch.with_lambda(-0.1), mus, n_bulk=2)
    assert check_spectrum_symmetries(a, b, "chiral").passed
    own = check_spectrum_symmetries(a, a, "chiral", use_p=False)
    assert not own.passed and own.residual > 1e-3


@settings(max_examples=1000, deadline=None)
@given(k=st.lists(st.floats(-10, 10), min_size=3, max_size=3), mu=st.floats(-10, 10))
def test_k_identities_property(k, mu):
    for c in check_k_symmetries(k, mu):
        assert c.residual <= 1e-13, c


@settings(max_examples=100, deadline=None)
@given(tj=st.integers(0, 6), mu=st.floats(-5, 5), R=st.floats(0.2, 5))
def test_boundary_identities_property(tj, mu, R):
    for c in check_boundary_symmetries(AngularSector(tj + 0.5, 0.5), mu, R):
        assert c.residual <= 1e-13, c
