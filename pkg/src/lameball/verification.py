"""Invariant checks reported by ``lameball verify``.

Each check measures an error and compares it with a fixed tolerance. The
``quick`` level uses small sweeps; ``full`` adds the oracle-equivalence and
radial-convergence sweeps at their production sizes.
"""

from dataclasses import dataclass

import numpy as np

from . import _fd
from .decomposition import (
    ScalarExpansion,
    analyze_field,
    op_L_minus,
    op_L_plus,
    op_L_zero,
    synthesize,
)
from .elastic import (
    LameParameters,
    basis_solutions,
    beta_ell,
    div_curl,
    elastic_kernel,
    elastic_poisson_apply,
    h_plus_representation,
    harmonic_plus_extension,
    harmonic_poisson_kernel,
    lame_residual,
    poisson_extend_field,
    solve_dirichlet,
)
from .errors import LameBallError
from .fields import random_expansion
from .hardy import DEFAULT_RADII, boundary_deviation
from .quadrature import build_grid, integrate
from .sphharm import degrees, solid_harmonics, surface_harmonics
from .vsh import FAMILIES, norm_sq_table, vsh_basis

TEST_PARAMS = ((1.0, 1.0), (2.0, 1.0), (-0.5, 1.0), (-1.0, 1.0))


@dataclass
class Check:
    name: str
    error: float
    tol: float
    detail: str = ""

    @property
    def passed(self):
        return bool(np.isfinite(self.error) and self.error <= self.tol)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        extra = f"  {self.detail}" if self.detail else ""
        return f"{status}  {self.name:<28} error={self.error:.3e}  tol={self.tol:.1e}{extra}"


def random_ball_points(rng, n, rmax):
    x = rng.standard_normal((n, 3))
    r = rmax * rng.uniform(0.0, 1.0, n) ** (1.0 / 3.0)
    return x * (r / np.linalg.norm(x, axis=1))[:, None]


def random_sphere_points(rng, n):
    x = rng.standard_normal((n, 3))
    return x / np.linalg.norm(x, axis=1)[:, None]


def relative_lame_residual(field, params, x, h=1e-3):
    """Residual norms divided by (mu + |lam + mu|) times the field's local scale.

    The scale is the largest of |u| and the Frobenius norm of its Hessian over
    the sample points, so affine fields (zero Hessian) are measured against |u|.
    """
    res = np.linalg.norm(lame_residual(field, params, x, h), axis=-1)
    D = _fd.hessian(field, x, h)
    u = np.asarray(field(np.atleast_2d(x)))
    scale = max(np.linalg.norm(D.reshape(len(u), -1), axis=1).max(),
                np.linalg.norm(u, axis=1).max())
    return res / ((params.mu + abs(params.lam + params.mu)) * scale)


def check_sh_orthonormality(L=8):
    grid = build_grid(L)
    Y, _ = solid_harmonics(grid.nodes, L)
    gram = integrate(grid, Y[:, :, None] * Y[:, None, :])
    return Check(f"sh-orthonormality L={L}", np.abs(gram - np.eye(gram.shape[0])).max(), 1e-12)


def check_sh_surface(L=8):
    grid = build_grid(L + 1)
    _, G = surface_harmonics(grid.nodes, L)
    tang = np.abs(np.einsum("nkc,nc->nk", G, grid.nodes)).max()
    ell = degrees(L)
    eig = np.abs(integrate(grid, np.einsum("nkc,nkc->nk", G, G)) - ell * (ell + 1)).max()
    return [
        Check(f"sh-tangency L={L}", tang, 1e-12),
        Check(f"sh-eigenvalue L={L}", eig, 1e-10),
    ]


def check_vsh_gram(L):
    grid = build_grid(L + 1)
    B = vsh_basis(grid.nodes, L)
    cols, norms = [], []
    for f in FAMILIES:
        nsq = norm_sq_table(f, L)
        keep = nsq > 0
        cols.append(B[f][:, keep, :])
        norms.append(nsq[keep])
    A = np.concatenate(cols, axis=1)
    gram = integrate(grid, np.einsum("nac,nbc->nab", A, A))
    err = np.abs(gram - np.diag(np.concatenate(norms))).max()
    return Check(f"vsh-gram L={L} ({A.shape[1]} fields)", err, 1e-10)


def check_roundtrip(rng, L=5):
    b = random_expansion(L, rng)
    grid = build_grid(L + 1)
    f = synthesize(b, grid.nodes)
    back = synthesize(analyze_field(grid, f, L), grid.nodes)
    return Check(f"analyze/synthesize L={L}", np.abs(back - f).max(), 1e-10)


def check_boundary_restriction(rng, L, n=200):
    eta = random_sphere_points(rng, n)
    worst = 0.0
    for lam, mu in TEST_PARAMS:
        sols = basis_solutions(eta, L, LameParameters(lam, mu))
        B = vsh_basis(eta, L)
        worst = max(worst, max(np.abs(sols[f] - B[f]).max() for f in FAMILIES))
    return Check(f"boundary-restriction L={L}", worst, 1e-12)


def check_kernel_origin(rng, n=20):
    worst = 0.0
    for lam, mu in TEST_PARAMS:
        prm = LameParameters(lam, mu)
        for eta in random_sphere_points(rng, n):
            K = elastic_kernel(np.zeros(3), eta, prm)
            ref = (np.eye(3) + prm.beta / (2 - prm.alpha) * (-5 * np.eye(3) + 15 * np.outer(eta, eta))) / (4 * np.pi)
            worst = max(worst, np.abs(K - ref).max())
    return Check("kernel-origin-closed-form", worst, 1e-10)


def check_kernel_structure(rng, n):
    worst = 0.0
    params = [LameParameters(*p) for p in TEST_PARAMS]
    for i in range(n):
        prm = params[i % len(params)]
        x = random_ball_points(rng, 1, 0.95)[0]
        eta = random_sphere_points(rng, 1)[0]
        K = elastic_kernel(x, eta, prm)
        P = harmonic_poisson_kernel(x, eta)
        scale = max(1.0, np.abs(K).max())
        worst = max(worst, np.abs(K - K.T).max() / scale, abs(np.trace(K) - 3 * P) / scale)
    return Check(f"kernel-symmetry-trace n={n}", worst, 1e-8)


def check_degeneration(rng, L=4, n=20):
    prm = LameParameters(-1.0, 1.0)
    b = random_expansion(L, rng)
    x = random_ball_points(rng, n, 1.0)
    diff = np.abs(solve_dirichlet(b, prm)(x) - poisson_extend_field(b, x)).max()
    beta = np.abs(beta_ell(np.arange(51), prm)).max()
    return [
        Check("degeneration lam=-mu", diff, 1e-10),
        Check("beta_l == 0 for lam=-mu", beta, 1e-14),
    ]


def check_operator_identities(rng, L=4, n=20):
    g = ScalarExpansion(L, rng.standard_normal((L + 1) ** 2))
    x = random_ball_points(rng, n, 1.0)
    vals, grads = solid_harmonics(x, L)
    dPg = np.einsum("nkc,k->nc", grads, g.coeffs)
    checks = [
        Check("P(L-g) = grad Pg", np.abs(poisson_extend_field(op_L_minus(g), x) - dPg).max(), 1e-9),
        Check("P(L0g) = x cross grad Pg",
              np.abs(poisson_extend_field(op_L_zero(g), x) - np.cross(x, dPg)).max(), 1e-9),
        Check("P(L+g) closed form",
              np.abs(poisson_extend_field(op_L_plus(g), x) - harmonic_plus_extension(g, x)).max(), 1e-9),
    ]
    worst = 0.0
    for lam, mu in TEST_PARAMS:
        prm = LameParameters(lam, mu)
        worst = max(worst, np.abs(h_plus_representation(g, prm, x)
                                  - solve_dirichlet(op_L_plus(g), prm)(x)).max())
    checks.append(Check("h+ representation", worst, 1e-9))
    return checks


def _basis_field(family, k, L, prm):
    return lambda y: basis_solutions(y, L, prm)[family][:, k, :]


def check_lame_residual(rng, L, n, params):
    worst = 0.0
    clearance = _fd.stencil_reach(4) * 1e-3
    for lam, mu in params:
        prm = LameParameters(lam, mu)
        x = random_ball_points(rng, n, 1.0 - 2 * clearance)
        ell = degrees(L)
        for f in FAMILIES:
            for k in range((L + 1) ** 2):
                if f.value != "+" and ell[k] == 0:
                    continue
                rel = relative_lame_residual(_basis_field(f, k, L, prm), prm, x)
                worst = max(worst, rel.max())
    return Check(f"lame-residual L={L} n={n}", worst, 1e-5)


def check_riesz(rng, L, n=20):
    prm_a, prm_b = LameParameters(1.0, 1.0), LameParameters(2.0, 1.0)
    x = random_ball_points(rng, n, 0.95)
    dc, zdiv = 0.0, 0.0
    for k in range(1, (L + 1) ** 2):
        d, c = div_curl(_basis_field(FAMILIES[1], k, L, prm_a), x)
        dc = max(dc, np.abs(d).max(), np.abs(c).max())
        d, _ = div_curl(_basis_field(FAMILIES[2], k, L, prm_a), x)
        zdiv = max(zdiv, np.abs(d).max())
    a = basis_solutions(x, L, prm_a)
    b = basis_solutions(x, L, prm_b)
    indep = max(np.abs(a[f] - b[f]).max() for f in FAMILIES[1:])
    return [
        Check(f"minus div/curl L={L}", dc, 1e-8),
        Check(f"zero div L={L}", zdiv, 1e-8),
        Check("minus/zero params-independent", indep, 1e-12),
    ]


def check_div_identity(rng, L=4, n=20):
    g = ScalarExpansion(L, rng.standard_normal((L + 1) ** 2))
    x = random_ball_points(rng, n, 0.95)
    d, _ = div_curl(lambda y: harmonic_plus_extension(g, y), x)
    ell = degrees(L)
    vals, _ = solid_harmonics(x, L)
    ref = vals @ ((2 * ell**2 + 5 * ell + 3) * g.coeffs)
    return Check("div identity (2l^2+5l+3)", np.abs(d - ref).max(), 1e-6)


def check_oracle(rng, L, grid_L, n, params):
    grid = build_grid(grid_L)
    worst = 0.0
    for lam, mu in params:
        prm = LameParameters(lam, mu)
        b = random_expansion(L, rng)
        x = random_ball_points(rng, n, 0.7)
        kern = elastic_poisson_apply(grid, synthesize(b, grid.nodes), x, prm)
        worst = max(worst, np.abs(kern - solve_dirichlet(b, prm)(x)).max())
    return Check(f"kernel-vs-spectral grid L={grid_L}", worst, 1e-4)


def check_fatou(rng, L=4, fields=5):
    """Ratio of deviation to the fitted linear bound C (1 - r); must stay <= 1."""
    grid = build_grid(L + 1)
    radii = np.array(DEFAULT_RADII)
    worst, monotone = 0.0, True
    for _ in range(fields):
        b = random_expansion(L, rng)
        sol = solve_dirichlet(b, LameParameters(1.0, 1.0))
        f = synthesize(b, grid.nodes)
        dev = np.array([boundary_deviation(sol, f, r, 2, grid) for r in radii])
        monotone &= bool(np.all(np.diff(dev) < 0))
        C = max(dev[-1] / (1 - radii[-1]), dev[-2] / (1 - radii[-2]))
        worst = max(worst, (dev / (C * (1 - radii))).max())
    return Check("fatou radial C(1-r) bound", worst if monotone else np.inf, 1.0 + 1e-12,
                 "" if monotone else "deviation not monotone")


def check_coefficient_file(path, prm=None):
    from .io import read_coefficients

    prm = prm or LameParameters(1.0, 1.0)
    try:
        b = read_coefficients(path)
    except (OSError, LameBallError) as exc:
        return [Check("coefficient-file", np.inf, 0.0, str(exc))]
    if not hasattr(b, "plus"):
        return [Check("coefficient-file", np.inf, 0.0, "expected a vector expansion")]
    grid = build_grid(b.band_limit + 1)
    err = np.abs(solve_dirichlet(b, prm)(grid.nodes) - synthesize(b, grid.nodes)).max()
    scale = max(1.0, np.abs(synthesize(b, grid.nodes)).max())
    return [
        Check("coefficient-file", 0.0, 0.0),
        Check("coefficient-file boundary", err / scale, 1e-10),
    ]


def run(level="quick", coefficients=None, seed=0):
    rng = np.random.default_rng(seed)
    full = level == "full"
    checks = [check_sh_orthonormality(8)]
    checks += check_sh_surface(8)
    checks.append(check_vsh_gram(8 if full else 4))
    checks.append(check_roundtrip(rng))
    checks.append(check_boundary_restriction(rng, 5 if full else 3))
    checks.append(check_kernel_origin(rng))
    checks.append(check_kernel_structure(rng, 100 if full else 12))
    checks += check_degeneration(rng)
    checks += check_operator_identities(rng)
    if full:
        checks.append(check_lame_residual(rng, 5, 50, TEST_PARAMS))
    else:
        checks.append(check_lame_residual(rng, 3, 10, TEST_PARAMS[:2]))
    checks += check_riesz(rng, 5 if full else 3)
    checks.append(check_div_identity(rng))
    if full:
        checks.append(check_oracle(rng, 4, 24, 20, TEST_PARAMS[:2]))
        checks.append(check_fatou(rng))
    else:
        checks.append(check_oracle(rng, 2, 16, 4, TEST_PARAMS[:1]))
    if coefficients is not None:
        checks += check_coefficient_file(coefficients)
    return checks
