import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special

from diracband.angular import (AngularSector, HarmonicBranch, SpinorType, antipode, apply_J3,
                               apply_sigma_dot_L, apply_sigma_r, four_spinor_parity,
                               harmonic_parity, sigma_dot_L_eigenvalue, sphere_grid,
                               sphere_inner, spherical_harmonic, spinor_harmonic)

rng = np.random.default_rng(7)
TH = rng.uniform(0.1, math.pi - 0.1, 25)
PH = rng.uniform(0, 2 * math.pi, 25)


@pytest.mark.parametrize("l", [0, 1, 3, 6])
def test_ylm_against_scipy(l):
    for m in range(-l, l + 1):
        ref = special.sph_harm_y(l, m, TH, PH)
        assert np.max(np.abs(spherical_harmonic(l, m, TH, PH) - ref)) <= 1e-13


def test_sector_validation():
    with pytest.raises(ValueError):
        AngularSector(1.0, 0.5)
    with pytest.raises(ValueError):
        AngularSector(1.5, 2.5)
    s = AngularSector(3.5, -1.5, SpinorType.PSI)
    assert s.l == 3 and s.p_sign == -1
    assert AngularSector(3.5, 0.5).p_eigenvalue == 4.0


@pytest.mark.parametrize("j", [0.5, 1.5, 3.5])
def test_sigma_dot_L_and_J3(j):
    for tm in range(-int(2 * j), int(2 * j) + 1, 2):
        sec = AngularSector(j, tm / 2)
        for br in HarmonicBranch:
            h = spinor_harmonic(sec, br, TH, PH)
            lam = sigma_dot_L_eigenvalue(sec, br)
            assert apply_sigma_dot_L(sec, br, TH, PH).max_distance(h.scaled(lam)) <= 1e-9
            assert apply_J3(sec, br, TH, PH).max_distance(h.scaled(tm / 2)) <= 1e-9


def test_orthonormal_pair():
    t, p, w = sphere_grid(40, 40)
    sec = AngularSector(2.5, 0.5)
    a = spinor_harmonic(sec, HarmonicBranch.PLUS, t, p)
    b = spinor_harmonic(sec, HarmonicBranch.MINUS, t, p)
    assert abs(sphere_inner(a, a, w) - 1) <= 1e-12
    assert abs(sphere_inner(b, b, w) - 1) <= 1e-12
    assert abs(sphere_inner(a, b, w)) <= 1e-12


@pytest.mark.parametrize("j,m", [(0.5, 0.5), (2.5, -1.5), (3.5, 3.5)])
def test_sigma_r_exchanges(j, m):
    sec = AngularSector(j, m)
    rp = apply_sigma_r(sec, HarmonicBranch.PLUS, TH, PH)
    hm = spinor_harmonic(sec, HarmonicBranch.MINUS, TH, PH)
    assert min(rp.max_distance(hm), rp.max_distance(hm.scaled(-1))) <= 1e-12


def test_parities():
    sec = AngularSector(3.5, 0.5)
    ta, pa = antipode(TH, PH)
    for br in HarmonicBranch:
        h = spinor_harmonic(sec, br, TH, PH)
        g = spinor_harmonic(sec, br, ta, pa)
        assert g.max_distance(h.scaled(harmonic_parity(sec, br))) <= 1e-12
    assert harmonic_parity(sec, HarmonicBranch.PLUS) == -harmonic_parity(sec, HarmonicBranch.MINUS)
    assert four_spinor_parity(sec) == -four_spinor_parity(sec.with_type(SpinorType.PSI))


def test_pole_warning():
    with pytest.warns(RuntimeWarning):
        apply_sigma_dot_L(AngularSector(1.5, 0.5), HarmonicBranch.PLUS, np.array([0.0]), np.array([0.3]))


@settings(max_examples=60, deadline=None)
@given(tj=st.integers(0, 5), data=st.data())
def test_density_rotation_invariant_in_phi(tj, data):
    j = tj + 0.5
    tm = data.draw(st.sampled_from(range(-2 * tj - 1, 2 * tj + 2, 2)))
    sec = AngularSector(j, tm / 2)
    shift = data.draw(st.floats(0, 2 * math.pi))
    a = spinor_harmonic(sec, HarmonicBranch.PLUS, TH, PH).density()
    b = spinor_harmonic(sec, HarmonicBranch.PLUS, TH, PH + shift).density()
    assert np.max(np.abs(a - b)) <= 1e-12
