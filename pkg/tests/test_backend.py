import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diracband import _backend, _pybessel, _pyshoot

compiled = pytest.importorskip("diracband._cbessel")
cshoot = pytest.importorskip("diracband._cshoot")


def test_compiled_selected_by_default():
    if os.environ.get("DIRACBAND_PURE_PYTHON", "") in ("", "0"):
        assert _backend.COMPILED


def test_env_forces_fallback():
    code = "from diracband import _backend; print(_backend.BESSEL_COMPILED, _backend.SHOOT_COMPILED)"
    env = dict(os.environ, DIRACBAND_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["False", "False"]


@settings(max_examples=200, deadline=None)
@given(n=st.integers(0, 15), x=st.floats(1e-3, 200.0))
def test_bessel_kernels_agree(n, x):
    a, b = np.empty(n + 1), np.empty(n + 1)
    compiled.j_half_array(n, x, a)
    _pybessel.j_half_array(n, x, b)
    assert np.allclose(a, b, rtol=1e-13, atol=1e-300)
    compiled.i_half_scaled_array(n, x, a)
    _pybessel.i_half_scaled_array(n, x, b)
    assert np.allclose(a, b, rtol=1e-13, atol=1e-300)


@settings(max_examples=200, deadline=None)
@given(l=st.integers(0, 10), w=st.floats(-400.0, 400.0))
def test_regular_pair_agrees(l, w):
    a = compiled.regular_pair(l, w)
    b = _pybessel.regular_pair(l, w)
    assert np.allclose(a, b, rtol=1e-12, atol=0)


@pytest.mark.parametrize("psi", [False, True])
def test_shooting_kernels_agree(psi):
    args = (3, psi, 2.5, 0.7, 1e-5, 1.0, 1.0, 1e-6, 1e-12, 200000)
    a = cshoot.integrate_radial(*args)
    b = _pyshoot.integrate_radial(*args)
    assert np.allclose(a[:2], b[:2], rtol=1e-12)
