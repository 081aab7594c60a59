import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diracband.semiq import (I2, I4, DegreeMethod, DegenerateOriginError, ExceptionalPointError,
                             Gauge, GridTooCoarseError, NonConvergenceError, UndefinedDegreeError,
                             degree_analytic, degree_quadrature, degree_trace_form,
                             eigen_multiplicities, eigenspace_crossing_check, eigenvectors,
                             jumps, k_dot_sigma, k_hamiltonian, map_h, map_q, offdiag_blocks,
                             pullback_density, q_limit_direction, random_su2, su2_of,
                             su2_rotation, trace_form_density, transition_matrix)

vec = st.lists(st.floats(-5, 5), min_size=3, max_size=3).map(np.array)
nonzero_mu = st.floats(-3, 3).filter(lambda m: abs(m) > 1e-2)


def test_eigen_structure():
    st_ = k_hamiltonian([0.3, -0.7, 1.1], 0.8)
    assert eigen_multiplicities(st_) == (2, 2)
    assert st_.lambda_plus == pytest.approx(math.sqrt(0.09 + 0.49 + 1.21 + 0.64))


def test_transition_matrices():
    s = k_hamiltonian([0.3, -0.7, 1.1], 0.8)
    ks = k_dot_sigma(s.k) / s.knorm
    assert np.max(np.abs(transition_matrix(s, 1) + 1j * ks)) <= 1e-14
    assert np.max(np.abs(transition_matrix(s, -1) - 1j * ks)) <= 1e-14


@pytest.mark.parametrize("sign,gauge,mu", [(1, Gauge.UP, 1.0), (1, Gauge.DOWN, -1.0),
                                           (-1, Gauge.UP, -1.0), (-1, Gauge.DOWN, 1.0)])
def test_exceptional_points(sign, gauge, mu):
    with pytest.raises(ExceptionalPointError):
        eigenvectors(k_hamiltonian(np.zeros(3), mu), sign, gauge)
    # the other gauge is regular there
    other = Gauge.DOWN if gauge is Gauge.UP else Gauge.UP
    eigenvectors(k_hamiltonian(np.zeros(3), mu), sign, other)


def test_degenerate_origin():
    with pytest.raises(DegenerateOriginError):
        map_q(1, np.zeros(3), 0.0)


def test_offdiag_block_is_q_plus():
    k, mu = np.array([0.3, 0.2, -0.5]), 0.7
    ur, ll, diag = offdiag_blocks(k_hamiltonian(k, mu), 1)
    assert diag <= 1e-15
    rho = math.sqrt(k @ k + mu * mu)
    assert np.max(np.abs(su2_of(map_q(1, k, mu)) - ur)) <= 1e-15
    assert np.max(np.abs(ur - (mu * I2 + 1j * k_dot_sigma(k)) / rho)) <= 1e-15
    # the literal h_+ has determinant -1 and is i times the lower-left block
    assert np.linalg.det(map_h(1, k, mu)) == pytest.approx(-1.0)
    assert np.max(np.abs(map_h(1, k, mu) - 1j * ll)) <= 1e-15


def test_q_limit_independent_of_direction_sign_of_mu():
    a = q_limit_direction(1, [0, 0, 1], 1.0)
    assert a.norm() == pytest.approx(1.0)
    assert np.allclose(a.x, [0, 0, 1, 0], atol=1e-11)


def test_degrees_at_mu_one():
    assert degree_analytic(1, 1.0).value == 0.5
    assert degree_analytic(-1, 1.0).value == -0.5
    assert degree_analytic(1, -2.0).value == -0.5
    q = degree_quadrature(1, 1.0)
    assert q.value == pytest.approx(0.5, abs=1e-4)
    assert q.integral == pytest.approx(math.pi ** 2, abs=1e-3)
    t = degree_quadrature(-1, 1.0, method="truncate")
    assert t.value == pytest.approx(-0.5, abs=1e-4)


def test_trace_form_sign_conventions():
    k = [0.5, 0.3, -0.2]
    ref = 12 / (0.38 + 1) ** 2
    assert trace_form_density(k, 1.0, 1e-3) == pytest.approx(ref, rel=1e-5)
    assert trace_form_density(k, 1.0, 1e-3, target="h") == pytest.approx(-ref, rel=1e-5)
    r = degree_trace_form(2.5, n=32, k_max=50)
    assert r.method is DegreeMethod.TRACE_FORM
    assert r.value == pytest.approx(0.5, abs=1e-2)


def test_pullback_density_closed_form():
    k, mu = np.array([0.4, -1.2, 0.3]), 0.8
    assert pullback_density(1, k, mu) == pytest.approx(mu / (k @ k + mu * mu) ** 2, rel=1e-10)


def test_errors():
    with pytest.raises(UndefinedDegreeError):
        degree_analytic(1, 0.0)
    with pytest.raises(GridTooCoarseError):
        degree_trace_form(1.0, n=4)
    with pytest.raises(ValueError):
        degree_quadrature(1, 1.0, method="truncate", k_max=2.0)
    with pytest.raises(ValueError):
        degree_quadrature(1, 1.0, method="simpson")


def test_tan_rule_is_exact_in_t():
    # after k = |mu| tan t the radial integrand is a trigonometric polynomial
    r = degree_quadrature(1, 0.3, n_radial=4, n_angular=2)
    assert r.value == pytest.approx(0.5, abs=1e-14)
    assert isinstance(NonConvergenceError("x"), ArithmeticError)


def test_jumps():
    jp, jm = jumps()
    assert jp == pytest.approx(1.0, abs=1e-8) and jm == pytest.approx(-1.0, abs=1e-8)


def test_eigenspaces_exchange_across_mu_zero():
    assert eigenspace_crossing_check([-1, -1e-6, 1e-6, 1]).passed


@settings(max_examples=200, deadline=None)
@given(k=vec, mu=nonzero_mu)
def test_projector_invariants(k, mu):
    s = k_hamiltonian(k, mu)
    P, M = s.projector_plus, s.projector_minus
    assert np.max(np.abs(s.matrix - s.matrix.conj().T)) <= 1e-14
    assert np.max(np.abs(P @ P - P)) <= 1e-13
    assert abs(np.trace(P) - 2) <= 1e-13
    assert np.max(np.abs(P + M - I4)) <= 1e-14
    assert np.max(np.abs(s.lambda_plus * P + s.lambda_minus * M - s.matrix)) <= 1e-13


@settings(max_examples=100, deadline=None)
@given(k=vec, mu=nonzero_mu, sign=st.sampled_from([1, -1]))
def test_maps_land_on_sphere(k, mu, sign):
    assert map_q(sign, k, mu).norm() == pytest.approx(1.0, abs=1e-14)
    h = map_h(sign, k, mu)
    assert np.max(np.abs(h @ h.conj().T - I2)) <= 1e-14


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 10 ** 6))
def test_su2_rotation_property(seed):
    g = random_su2(np.random.default_rng(seed))
    G = su2_rotation(g)
    assert np.max(np.abs(G @ G.T - np.eye(3))) <= 1e-13
    assert np.linalg.det(G) == pytest.approx(1.0, abs=1e-13)
