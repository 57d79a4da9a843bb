import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose
from scipy.special import sph_harm_y

from conftest import ball_points, unit_vectors
from lameball import (
    DomainError,
    HarmonicIndex,
    build_grid,
    eval_scalar_harmonic,
    eval_solid_gradient,
    eval_solid_harmonic,
    eval_surface_gradient,
    integrate,
)
from lameball.elastic import fd_laplacian
from lameball.sphharm import (
    degrees,
    flat_index,
    iter_indices,
    num_coeffs,
    orders,
    solid_harmonics,
    surface_harmonics,
)

C10 = np.sqrt(3 / (4 * np.pi))
Y00 = 1 / (2 * np.sqrt(np.pi))


def scipy_real_harmonics(eta, L):
    """Real orthonormal harmonics from scipy's complex ones, CS phase removed."""
    theta = np.arccos(np.clip(eta[:, 2], -1, 1))
    phi = np.arctan2(eta[:, 1], eta[:, 0])
    out = np.empty((len(eta), num_coeffs(L)))
    for l in range(L + 1):
        for m in range(-l, l + 1):
            y = sph_harm_y(l, abs(m), theta, phi) * (-1) ** abs(m)
            if m > 0:
                v = np.sqrt(2) * y.real
            elif m < 0:
                v = np.sqrt(2) * y.imag
            else:
                v = y.real
            out[:, flat_index(l, m)] = v
    return out


unit_vec = st.tuples(*[st.floats(-1, 1)] * 3).filter(
    lambda v: np.linalg.norm(v) > 0.1
).map(lambda v: np.array(v) / np.linalg.norm(v))


class TestIndex:
    def test_flat_layout(self):
        assert [i.flat for i in iter_indices(2)] == list(range(9))
        assert_allclose(degrees(2), [0, 1, 1, 1, 2, 2, 2, 2, 2])
        assert_allclose(orders(1), [0, -1, 0, 1])

    @pytest.mark.parametrize("l,m", [(1, 2), (0, -1), (-1, 0)])
    def test_invalid(self, l, m):
        with pytest.raises(DomainError):
            HarmonicIndex(l, m)
        with pytest.raises(DomainError):
            eval_scalar_harmonic((l, m), np.array([0.0, 0.0, 1.0]))


class TestExamples:
    def test_constant(self, rng):
        assert_allclose(eval_scalar_harmonic((0, 0), unit_vectors(rng, 5)), Y00, rtol=1e-15)

    def test_y10(self):
        assert_allclose(eval_scalar_harmonic((1, 0), np.array([0.0, 0.0, 1.0])), 0.4886025119,
                        rtol=1e-9)
        assert abs(eval_scalar_harmonic((1, 0), np.array([1.0, 0.0, 0.0]))) < 1e-16

    def test_solid(self):
        assert_allclose(eval_solid_harmonic((1, 0), np.array([0, 0, 0.5])), 0.5 * C10)
        assert_allclose(eval_solid_harmonic((0, 0), np.zeros(3)), Y00)
        for m in range(-2, 3):
            assert eval_solid_harmonic((2, m), np.zeros(3)) == 0.0

    def test_solid_gradient(self, rng):
        x = ball_points(rng, 4, 1.0)
        assert_allclose(eval_solid_gradient((0, 0), x), 0.0, atol=0)
        assert_allclose(eval_solid_gradient((1, 0), x), np.tile([0, 0, C10], (4, 1)),
                        atol=1e-15)

    def test_surface_gradient(self, rng):
        assert_allclose(eval_surface_gradient((0, 0), unit_vectors(rng, 3)), 0.0, atol=1e-15)
        assert_allclose(eval_surface_gradient((1, 0), np.array([1.0, 0, 0])), [0, 0, C10],
                        atol=1e-15)
        assert_allclose(eval_surface_gradient((1, 0), np.array([0, 0, 1.0])), 0.0, atol=1e-15)

    def test_surface_requires_unit(self):
        with pytest.raises(DomainError):
            eval_scalar_harmonic((1, 0), np.array([0, 0, 2.0]))


class TestOracle:
    @pytest.mark.parametrize("L", [3, 12, 50])
    def test_matches_scipy(self, rng, backend, L):
        eta = unit_vectors(rng, 40)
        vals, _ = surface_harmonics(eta, L)
        assert_allclose(vals, scipy_real_harmonics(eta, L), atol=1e-12)

    def test_poles(self, backend):
        eta = np.array([[0, 0, 1.0], [0, 0, -1.0]])
        vals, grads = surface_harmonics(eta, 10)
        assert np.all(np.isfinite(vals)) and np.all(np.isfinite(grads))
        assert_allclose(vals, scipy_real_harmonics(eta, 10), atol=1e-12)

    def test_gradient_by_finite_differences(self, rng, backend):
        L, h = 6, 1e-5
        x = ball_points(rng, 10, 0.9)
        _, grads = solid_harmonics(x, L)
        for c in range(3):
            e = np.zeros(3)
            e[c] = h
            fd = (solid_harmonics(x + e, L)[0] - solid_harmonics(x - e, L)[0]) / (2 * h)
            assert_allclose(grads[:, :, c], fd, atol=1e-8)


class TestInvariants:
    def test_orthonormality(self):
        L = 10
        grid = build_grid(L)
        Y, _ = surface_harmonics(grid.nodes, L)
        gram = integrate(grid, Y[:, :, None] * Y[:, None, :])
        assert_allclose(gram, np.eye(num_coeffs(L)), atol=1e-12)

    def test_eigenfunction(self):
        L = 8
        grid = build_grid(L + 1)
        _, G = surface_harmonics(grid.nodes, L)
        ell = degrees(L)
        assert_allclose(integrate(grid, np.einsum("nkc,nkc->nk", G, G)), ell * (ell + 1),
                        atol=1e-10)

    def test_tangency(self):
        grid = build_grid(9)
        _, G = surface_harmonics(grid.nodes, 8)
        assert np.abs(np.einsum("nkc,nc->nk", G, grid.nodes)).max() < 1e-12

    def test_harmonicity(self, rng):
        L = 6
        x = ball_points(rng, 10, 0.9)
        for k in range(num_coeffs(L)):
            lap = fd_laplacian(lambda y: solid_harmonics(y, L)[0][:, [k]], x)
            scale = np.abs(solid_harmonics(x, L)[0][:, k]).max() + 1.0
            assert np.abs(lap).max() / scale < 1e-6

    @settings(max_examples=60, deadline=None)
    @given(eta=unit_vec, l=st.integers(0, 20), data=st.data())
    def test_homogeneity(self, eta, l, data):
        m = data.draw(st.integers(-l, l))
        r = data.draw(st.floats(0.05, 1.0))
        assert_allclose(eval_solid_harmonic((l, m), r * eta),
                        r**l * eval_scalar_harmonic((l, m), eta), atol=1e-12)

    @settings(max_examples=60, deadline=None)
    @given(eta=unit_vec)
    def test_addition_theorem(self, eta):
        # sum_m Y_lm(eta)^2 = (2l+1) / (4 pi), independent of eta
        L = 15
        vals, _ = surface_harmonics(eta, L)
        sums = np.bincount(degrees(L), weights=vals**2)
        assert_allclose(sums, (2 * np.arange(L + 1) + 1) / (4 * np.pi), rtol=1e-12)
