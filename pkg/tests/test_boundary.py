import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diracband.angular import AngularSector, SpinorType
from diracband.boundary import (GAMMA_R_BLOCK, aps_boundary_eigen, block_independent_of_m,
                                boundary_block, boundary_current, chiral_bag_block,
                                chiral_condition_vector, gamma_r_exchange_check,
                                harmonic_pair_orthogonality)


def test_eigenvalues_closed_form():
    sec = AngularSector(3.5, 0.5)
    e = aps_boundary_eigen(sec, 1.0, 1.0)
    s = math.hypot(4, 1)
    assert e.lambda_plus == pytest.approx(1 + s, rel=1e-15)
    assert e.lambda_minus == pytest.approx(1 - s, rel=1e-15)
    # the PsiType block has the same spectrum
    w = np.linalg.eigvalsh(boundary_block(sec.with_type(SpinorType.PSI), 1.0, 1.0))
    assert np.allclose(w, [1 - s, 1 + s], atol=1e-14)


def test_eigenvectors_at_mu_zero():
    for t in SpinorType:
        e = aps_boundary_eigen(AngularSector(1.5, 0.5, t), 0.0, 2.0)
        b = boundary_block(e.sector, 0.0, 2.0)
        for lam, v in ((e.lambda_plus, e.coeff_plus), (e.lambda_minus, e.coeff_minus)):
            assert np.linalg.norm(v) == pytest.approx(1.0)
            assert np.max(np.abs(b @ v - lam * v)) <= 1e-14


def test_gamma_r_exchange():
    for t in SpinorType:
        rep = gamma_r_exchange_check(AngularSector(2.5, -0.5, t), 0.7, 1.3)
        assert rep.passed, rep


def test_m_independence():
    assert block_independent_of_m(3.5, 1.2, 0.8)


def test_harmonics_orthogonal():
    assert harmonic_pair_orthogonality(AngularSector(3.5, 1.5)) <= 1e-13


def test_chiral_block():
    lam = 0.1
    c = chiral_bag_block(lam)
    v = np.array([math.exp(-lam), 1.0])
    assert np.allclose(c @ v, v)
    assert abs(chiral_condition_vector(lam) @ v) <= 1e-16
    # the condition is an involution on the boundary pair
    assert np.allclose(c @ c, np.eye(2), atol=1e-15)


def test_current_of_eigenvectors_vanishes():
    sec = AngularSector(3.5, 0.5)
    e = aps_boundary_eigen(sec, 1.5, 1.0)
    assert abs(boundary_current(sec, *e.coeff_minus)) <= 1e-14
    assert abs(boundary_current(sec, *e.coeff_plus)) <= 1e-14
    # a generic combination carries current
    assert abs(boundary_current(sec, 1.0, 1j)) > 0.1


@settings(max_examples=100, deadline=None)
@given(tj=st.integers(0, 8), mu=st.floats(-5, 5), R=st.floats(0.1, 10))
def test_block_symmetric_and_anticommutes(tj, mu, R):
    for t in SpinorType:
        b = boundary_block(AngularSector(tj + 0.5, 0.5, t), mu, R)
        assert np.array_equal(b, b.T)
        anti = b @ GAMMA_R_BLOCK + GAMMA_R_BLOCK @ b - (2.0 / R) * GAMMA_R_BLOCK
        assert np.max(np.abs(anti)) <= 1e-12 * max(1.0, 1.0 / R)
