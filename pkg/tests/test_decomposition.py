import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from lameball import (
    DomainError,
    ScalarExpansion,
    UsageError,
    VshExpansion,
    analyze_field,
    analyze_scalar,
    apply_zonal_multiplier,
    build_grid,
    integrate,
    lp_norm,
    op_L_minus,
    op_L_plus,
    op_L_zero,
    potential_of,
    project,
    synthesize,
    synthesize_scalar,
)
from lameball.fields import random_expansion
from lameball.sphharm import degrees, flat_index, num_coeffs, surface_harmonics
from lameball.vsh import FAMILIES, VshFamily, eval_vsh

SQRT_PI = np.sqrt(np.pi)
PLUS, MINUS, ZERO = FAMILIES


def only(exp, key, value, atol):
    """exp has ``value`` at ``key`` = (family, l, m) and nothing else."""
    ref = VshExpansion.from_entries(exp.band_limit, {key: value})
    return exp.allclose(ref, atol=atol)


def random_scalar(rng, L):
    return ScalarExpansion(L, rng.standard_normal(num_coeffs(L)))


class TestAnalyzeScalar:
    def test_constant(self):
        g = build_grid(4)
        a = analyze_scalar(g, np.ones(len(g)), 4)
        assert_allclose(a.coeffs, np.eye(25)[0] * 2 * SQRT_PI, atol=1e-13)

    def test_single_harmonic(self):
        g = build_grid(4)
        Y, _ = surface_harmonics(g.nodes, 4)
        a = analyze_scalar(g, Y[:, flat_index(3, 2)], 4)
        assert_allclose(a.coeffs, np.eye(25)[flat_index(3, 2)], atol=1e-12)

    def test_eta3(self):
        g = build_grid(3)
        a = analyze_scalar(g, g.nodes[:, 2], 3)
        assert_allclose(a.coeffs, np.eye(16)[2] * np.sqrt(4 * np.pi / 3), atol=1e-13)

    def test_insufficient_exactness(self):
        with pytest.raises(UsageError):
            analyze_scalar(build_grid(3), np.ones(len(build_grid(3))), 4)


class TestAnalyzeField:
    def test_identity(self):
        g = build_grid(3)
        assert only(analyze_field(g, g.nodes, 2), (PLUS, 0, 0), 2 * SQRT_PI, 1e-13)

    def test_constant_e3(self):
        g = build_grid(3)
        f = np.tile([0, 0, 1.0], (len(g), 1))
        assert only(analyze_field(g, f, 2), (MINUS, 1, 0), np.sqrt(4 * np.pi / 3), 1e-13)

    def test_single_field(self):
        g = build_grid(4)
        assert only(analyze_field(g, eval_vsh("0", (2, 1), g.nodes), 3), (ZERO, 2, 1), 1.0, 1e-10)

    def test_exactness_and_shape(self):
        g = build_grid(3)
        with pytest.raises(UsageError):
            analyze_field(g, g.nodes, 3)
        with pytest.raises(UsageError):
            analyze_field(g, g.nodes[:, :2], 2)

    def test_roundtrip(self, rng):
        L = 6
        b = random_expansion(L, rng)
        g = build_grid(L + 1)
        assert analyze_field(g, synthesize(b, g.nodes), L).allclose(b, atol=1e-11)


class TestSynthesize:
    def test_identity(self, rng):
        eta = rng.standard_normal((5, 3))
        eta /= np.linalg.norm(eta, axis=1)[:, None]
        b = VshExpansion.from_entries(0, {(PLUS, 0, 0): 2 * SQRT_PI})
        assert_allclose(synthesize(b, eta), eta, atol=1e-15)

    def test_empty(self):
        assert_allclose(synthesize(VshExpansion.zeros(3), np.array([0, 1.0, 0])), 0.0)


class TestProject:
    def test_idempotent_and_partition(self, rng):
        b = random_expansion(4, rng)
        for f in FAMILIES:
            assert project(project(b, f), f).allclose(project(b, f), atol=0)
        total = project(b, "+") + project(b, "-") + project(b, "0")
        assert total.allclose(b, atol=0)

    def test_identity_has_no_tangential_part(self):
        g = build_grid(3)
        b = analyze_field(g, g.nodes, 2)
        assert project(b, "-").allclose(VshExpansion.zeros(2), atol=1e-13)
        assert project(b, "0").allclose(VshExpansion.zeros(2), atol=1e-13)


class TestZonal:
    def test_identity(self, rng):
        g = random_scalar(rng, 4)
        assert apply_zonal_multiplier(g, lambda l: 1.0).allclose(g, atol=0)

    def test_laplacian(self):
        g = ScalarExpansion.from_entries(3, {(2, 1): 1.0})
        out = apply_zonal_multiplier(g, lambda l: l * (l + 1))
        assert out.allclose(ScalarExpansion.from_entries(3, {(2, 1): 6.0}), atol=0)

    def test_kills_constants(self):
        g = ScalarExpansion.from_entries(2, {(0, 0): 4.0})
        assert apply_zonal_multiplier(g, np.arange(3.0)).allclose(ScalarExpansion.zeros(2))

    def test_bad_sequences(self):
        g = ScalarExpansion.zeros(3)
        with pytest.raises(UsageError):
            apply_zonal_multiplier(g, [1.0, 2.0])
        with pytest.raises(DomainError):
            apply_zonal_multiplier(g, [1.0, np.inf, 1.0, 1.0])


class TestOperators:
    def test_minus_examples(self):
        y10 = ScalarExpansion.from_entries(1, {(1, 0): 1.0})
        assert only(op_L_minus(y10), (MINUS, 1, 0), 1.0, 0)
        assert op_L_minus(ScalarExpansion.from_entries(2, {(0, 0): 7.0})).is_empty()
        g = ScalarExpansion.from_entries(2, {(2, 1): 3.0, (0, 0): 5.0 * 2 * SQRT_PI})
        assert only(op_L_minus(g), (MINUS, 2, 1), 3.0, 0)

    def test_zero_examples(self, rng):
        y10 = ScalarExpansion.from_entries(1, {(1, 0): 1.0})
        assert only(op_L_zero(y10), (ZERO, 1, 0), 1.0, 0)
        eta = np.array([[0.6, 0.0, 0.8], [0.0, 1.0, 0.0]])
        _, G = surface_harmonics(eta, 1)
        assert_allclose(synthesize(op_L_zero(y10), eta), np.cross(eta, G[:, 2]), atol=1e-15)
        assert op_L_zero(ScalarExpansion.from_entries(1, {(0, 0): 1.0})).is_empty()
        g = build_grid(5)
        v = synthesize(op_L_zero(random_scalar(rng, 4)), g.nodes)
        assert np.abs(np.einsum("nc,nc->n", v, g.nodes)).max() < 1e-12

    def test_plus_examples(self):
        y00 = ScalarExpansion.from_entries(0, {(0, 0): 1.0})
        assert only(op_L_plus(y00), (PLUS, 0, 0), 1.0, 0)
        eta = np.array([0.0, 0.6, 0.8])
        assert_allclose(synthesize(op_L_plus(y00), eta), eta / (2 * SQRT_PI), atol=1e-15)
        assert only(op_L_plus(ScalarExpansion.from_entries(2, {(2, -1): 1.0})),
                    (PLUS, 2, -1), 1.0, 0)
        a = ScalarExpansion.from_entries(1, {(0, 0): 2.0, (1, 1): 1.0})
        assert op_L_plus(a).allclose(2.0 * op_L_plus(y00) + op_L_plus(
            ScalarExpansion.from_entries(1, {(1, 1): 1.0})), atol=0)

    def test_definitions_pointwise(self, rng):
        # L- g = (l g) eta + grad_s g,  L+ g = ((l+1) g) eta - grad_s g
        L = 5
        g = random_scalar(rng, L)
        grid = build_grid(L + 1)
        Y, G = surface_harmonics(grid.nodes, L)
        ell = degrees(L)
        grad = np.einsum("nkc,k->nc", G, g.coeffs)
        lg = Y @ (ell * g.coeffs)
        l1g = Y @ ((ell + 1) * g.coeffs)
        eta = grid.nodes
        assert_allclose(synthesize(op_L_minus(g), eta), lg[:, None] * eta + grad, atol=1e-11)
        assert_allclose(synthesize(op_L_plus(g), eta), l1g[:, None] * eta - grad, atol=1e-11)
        # normal and tangential parts are orthogonal at every node
        assert np.abs(np.einsum("nc,nc->n", lg[:, None] * eta, grad)).max() < 1e-11

    def test_sum_relation(self, rng):
        L = 5
        g = random_scalar(rng, L)
        grid = build_grid(L + 1)
        Y, _ = surface_harmonics(grid.nodes, L)
        ref = (Y @ ((2 * degrees(L) + 1) * g.coeffs))[:, None] * grid.nodes
        both = synthesize(op_L_minus(g), grid.nodes) + synthesize(op_L_plus(g), grid.nodes)
        # L- drops degree 0, where its normal part l*g vanishes anyway
        assert_allclose(both, ref, atol=1e-10)


class TestPotential:
    def test_plus_roundtrip(self, rng):
        g = random_scalar(rng, 4)
        assert potential_of(op_L_plus(g), "+").allclose(g, atol=0)

    @pytest.mark.parametrize("op,fam", [(op_L_minus, "-"), (op_L_zero, "0")])
    def test_mean_removed(self, rng, op, fam):
        g = random_scalar(rng, 4)
        back = potential_of(op(g), fam)
        assert back.allclose(g - ScalarExpansion.from_entries(4, {(0, 0): g[0, 0]}), atol=0)
        assert back.mean() == 0.0

    def test_mixed_rejected(self, rng):
        with pytest.raises(DomainError):
            potential_of(random_expansion(3, rng), "+")


class TestExpansionTypes:
    def test_degree_zero_guard(self):
        with pytest.raises(DomainError):
            VshExpansion(0, [0.0], [1.0], [0.0])
        with pytest.raises(DomainError):
            VshExpansion.from_entries(1, {("0", 0, 0): 1.0})

    def test_shape_guard(self):
        with pytest.raises(UsageError):
            ScalarExpansion(2, np.ones(4))

    def test_entries_ordered(self, rng):
        keys = [(f, l, m) for f, l, m, _ in random_expansion(3, rng).entries()]
        order = {f: i for i, f in enumerate(FAMILIES)}
        assert keys == sorted(keys, key=lambda k: (order[k[0]], k[1], k[2]))

    def test_immutable(self, rng):
        b = random_expansion(2, rng)
        with pytest.raises(ValueError):
            b.plus[0] = 1.0

    def test_synthesize_scalar(self):
        g = ScalarExpansion.from_entries(1, {(1, 0): 1.0})
        assert_allclose(synthesize_scalar(g, np.array([[0, 0, 1.0]])), [np.sqrt(3 / (4 * np.pi))])


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), L=st.integers(1, 7))
def test_parseval_and_orthogonality(seed, L):
    b = random_expansion(L, np.random.default_rng(seed))
    grid = build_grid(L + 1)
    f = synthesize(b, grid.nodes)
    energy = sum(b.energies().values())
    assert_allclose(lp_norm(grid, f, 2) ** 2, energy, rtol=1e-10)
    parts = {fam: synthesize(project(b, fam), grid.nodes) for fam in FAMILIES}
    for i, a in enumerate(FAMILIES):
        for c in FAMILIES[i + 1:]:
            inner = integrate(grid, np.einsum("nc,nc->n", parts[a], parts[c]))
            assert abs(inner) < 1e-10 * max(1.0, energy)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), L=st.integers(0, 6),
       fam=st.sampled_from([VshFamily.PLUS, VshFamily.MINUS, VshFamily.ZERO]))
def test_potential_inverts_operator(seed, L, fam):
    g = random_scalar(np.random.default_rng(seed), L)
    op = {VshFamily.PLUS: op_L_plus, VshFamily.MINUS: op_L_minus, VshFamily.ZERO: op_L_zero}[fam]
    back = op(potential_of(op(g), fam))
    assert back.allclose(op(g), atol=0)
