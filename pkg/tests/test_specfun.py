import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special

from diracband import specfun
from diracband.specfun import HalfIntOrder

# first zeros of J_{9/2}, from scipy.special.jv + brentq
J92_ZEROS = [8.182561452571242, 11.70490715457039, 15.03966470761652]


@pytest.mark.parametrize("k", range(0, 12))
@pytest.mark.parametrize("x", [1e-3, 0.3, 2.0, 7.5, 25.0, 80.0])
def test_j_matches_scipy(k, x):
    ref = special.jv(k + 0.5, x)
    got = specfun.bessel_J(k + 0.5, x)
    assert abs(got - ref) <= 1e-12 * max(abs(ref), 1e-300) + 1e-15


@pytest.mark.parametrize("k", range(0, 12))
@pytest.mark.parametrize("x", [1e-3, 0.3, 2.0, 7.5, 25.0, 300.0])
def test_i_scaled_matches_scipy(k, x):
    ref = special.ive(k + 0.5, x)
    assert specfun.bessel_I_scaled(k + 0.5, x) == pytest.approx(ref, rel=1e-12, abs=1e-300)


def test_closed_form_half_order():
    for x in np.linspace(0.01, 40, 97):
        assert abs(specfun.bessel_J(0.5, x) - math.sqrt(2 / (math.pi * x)) * math.sin(x)) <= 1e-13
        assert abs(specfun.bessel_I_scaled(0.5, x)
                   - math.sqrt(2 / (math.pi * x)) * math.sinh(x) * math.exp(-x)) <= 1e-13


def test_zeros_frozen():
    z = specfun.bessel_zeros(4.5, 3)
    assert np.allclose(z, J92_ZEROS, rtol=0, atol=1e-11)


def test_order_validation():
    with pytest.raises(ValueError):
        HalfIntOrder(4)
    with pytest.raises(ValueError):
        HalfIntOrder.of(1.0)
    with pytest.raises(ValueError):
        specfun.bessel_J(0.5, 0.0)


def test_overflow_reported():
    with pytest.raises(OverflowError):
        specfun.bessel_I(0.5, 800.0)


def test_gamma_half():
    for two_a in (1, 3, 5, 9, 21):
        assert specfun.gamma_half(two_a) == pytest.approx(math.gamma(two_a / 2), rel=1e-15)


def test_ratio_matches_values():
    for l in (0, 3, 8):
        for x in (0.05, 1.0, 30.0, 400.0):
            ref = special.ive(l + 1.5, x) / special.ive(l + 0.5, x)
            assert specfun.bessel_I_ratio(l, x) == pytest.approx(ref, rel=1e-12)


def test_regularized_series():
    for nu in (0.5, 3.5, 7.5):
        for z in (0.0, 0.5, 3.0, 20.0):
            ref_j = special.jv(nu, z) / (z / 2) ** nu if z else 1 / math.gamma(nu + 1)
            ref_i = special.iv(nu, z) / (z / 2) ** nu if z else 1 / math.gamma(nu + 1)
            assert specfun.bessel_JP(nu, z) == pytest.approx(ref_j, rel=1e-11, abs=1e-16)
            assert specfun.bessel_IP(nu, z) == pytest.approx(ref_i, rel=1e-12)


@settings(max_examples=200, deadline=None)
@given(k=st.integers(1, 20), x=st.floats(0.05, 60.0))
def test_recurrence_property(k, x):
    j = specfun.bessel_J_array(k + 1, x)
    nu = k + 0.5
    lhs = j[k - 1] + j[k + 1]
    rhs = 2 * nu / x * j[k]
    assert abs(lhs - rhs) <= 1e-11 * max(1.0, abs(j[k - 1]), abs(j[k + 1]), abs(rhs))


@settings(max_examples=100, deadline=None)
@given(k=st.integers(0, 9))
def test_interlacing_property(k):
    a = specfun.bessel_zeros(k + 0.5, 5)
    b = specfun.bessel_zeros(k + 1.5, 5)
    for i in range(4):
        assert a[i] < b[i] < a[i + 1]
