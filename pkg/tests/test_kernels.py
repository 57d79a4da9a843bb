"""The compiled and pure-Python kernels must agree; both are checked against oracles."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from conftest import BACKENDS, ball_points, unit_vectors
from lameball import _backend, _pykernels

pytestmark = pytest.mark.skipif("cython" not in BACKENDS, reason="extension not built")


def _ck():
    from lameball import _ckernels

    return _ckernels


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), L=st.integers(0, 30), n=st.integers(1, 20))
def test_solid_harmonics_agree(seed, L, n):
    x = ball_points(np.random.default_rng(seed), n, 1.0)
    v_py, g_py = _pykernels.solid_harmonics(x, L)
    v_c, g_c = _ck().solid_harmonics(x, L)
    assert_allclose(v_c, v_py, rtol=1e-13, atol=1e-14)
    assert_allclose(g_c, g_py, rtol=1e-13, atol=1e-13)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_poisson_hessian_agree(seed):
    rng = np.random.default_rng(seed)
    x, eta = ball_points(rng, 8, 0.95), unit_vectors(rng, 8)
    assert_allclose(_ck().poisson_hessian(x, eta), _pykernels.poisson_hessian(x, eta),
                    rtol=1e-12, atol=1e-12)


def test_hessian_moment_agree(rng):
    x = ball_points(rng, 1, 0.9)[0]
    eta = unit_vectors(rng, 30)
    t, w = np.polynomial.legendre.leggauss(40)
    t, w = 0.5 * (t + 1), 0.5 * w
    a = _ck().hessian_moment(x, eta, t, w)
    b = _pykernels.hessian_moment(x, eta, t, w)
    assert_allclose(a, b, rtol=1e-12, atol=1e-12)
    # oracle: explicit sum of Hessians along the ray
    ref = sum(wi * _pykernels.poisson_hessian(np.tile(ti * x, (30, 1)), eta)
              for ti, wi in zip(t, w))
    assert_allclose(b, ref, rtol=1e-12, atol=1e-12)


def test_readonly_inputs_accepted(rng):
    x = ball_points(rng, 5, 0.9)
    x.flags.writeable = False
    _ck().solid_harmonics(x, 4)


def test_backend_name():
    assert _backend.BACKEND in ("cython", "python")
