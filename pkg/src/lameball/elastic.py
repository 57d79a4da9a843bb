"""Lamé Dirichlet problem in the unit ball.

Two independent routes to the interior displacement:

* spectral: expand the boundary field in E+/E-/E0 and sum closed-form
  polynomial solutions mode by mode (``solve_dirichlet``);
* kernel: integrate the boundary samples against the matrix-valued elastic
  Poisson kernel ``P I + beta (1 - |x|^2) Hess Phi`` (``elastic_poisson_apply``).

The second route exists to check the first.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

from . import _fd
from ._backend import kernels
from .decomposition import (
    VshExpansion,
    analyze_scalar,
    apply_zonal_multiplier,
    synthesize,
)
from .errors import DomainError, NumericalError, ParameterError, UsageError
from .quadrature import build_grid
from .sphharm import as_index, degrees, solid_harmonics
from .vsh import FAMILIES, VshFamily

INV_4PI = 1.0 / (4.0 * np.pi)
BOUNDARY_TOL = 1e-12
KERNEL_APPLY_MAX_RADIUS = 0.9


@dataclass(frozen=True)
class LameParameters:
    """Lamé constants; eligible when mu > 0 and 2 mu + lambda > 0."""

    lam: float
    mu: float

    def __post_init__(self):
        if not self.mu > 0:
            raise ParameterError(f"Lamé constants must satisfy μ>0 (got mu={self.mu})")
        if not 2 * self.mu + self.lam > 0:
            raise ParameterError(
                f"Lamé constants must satisfy 2μ+λ>0 (got 2*{self.mu}+{self.lam})"
            )

    @property
    def tau(self):
        return (self.lam + self.mu) / self.mu

    @property
    def alpha(self):
        return (self.lam + 2 * self.mu) / (self.lam + 3 * self.mu)

    @property
    def beta(self):
        return (self.lam + self.mu) / (2 * self.lam + 6 * self.mu)


def alpha_ell(l, params):
    """-((l+3) tau + 2) / (2 (l (tau+2) + 1)); accepts scalar or array degrees."""
    tau = params.tau
    l = np.asarray(l, dtype=np.float64)
    out = -((l + 3.0) * tau + 2.0) / (2.0 * (l * (tau + 2.0) + 1.0))
    return float(out) if out.ndim == 0 else out


def beta_ell(l, params):
    """(2l+1) alpha_l + 1, the multiplier separating elastic from harmonic E+ extensions."""
    l = np.asarray(l, dtype=np.float64)
    out = (2.0 * l + 1.0) * alpha_ell(l, params) + 1.0
    return float(out) if np.ndim(out) == 0 else out


def _as_points(x, max_radius=None):
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    pts = np.atleast_2d(x)
    if pts.shape[-1] != 3:
        raise DomainError(f"points must have 3 components, got shape {x.shape}")
    if max_radius is not None:
        r = np.linalg.norm(pts, axis=1)
        if np.any(r > max_radius):
            raise DomainError(f"point outside the closed ball (|x| = {r.max():.6g})")
    return pts, single


def basis_solutions(x, L, params):
    """Interior solutions for every E^#_lm boundary datum with l <= L.

    Returns a dict family -> (n, (L+1)**2, 3). With R the solid harmonic:

        u+ = (2l+1) (R x + alpha_l (|x|^2 - 1) grad R) - grad R
        u- = grad R
        u0 = x cross grad R
    """
    pts, _ = _as_points(x)
    vals, grads = solid_harmonics(pts, L)
    ell = degrees(L).astype(float)
    r2m1 = np.einsum("ni,ni->n", pts, pts) - 1.0
    a = alpha_ell(ell, params)
    plus = (2 * ell + 1)[None, :, None] * (
        vals[:, :, None] * pts[:, None, :]
        + (a[None, :] * r2m1[:, None])[:, :, None] * grads
    ) - grads
    return {
        VshFamily.PLUS: plus,
        VshFamily.MINUS: grads,
        VshFamily.ZERO: np.cross(pts[:, None, :], grads),
    }


def eval_basis_solution(family, idx, params, x):
    family = VshFamily.parse(family)
    idx = as_index(idx)
    if family is not VshFamily.PLUS and idx.l == 0:
        raise DomainError(f"family {family.value} has no degree-0 elements")
    pts, single = _as_points(x, 1.0 + BOUNDARY_TOL)
    out = basis_solutions(pts, idx.l, params)[family][:, idx.flat, :]
    return out[0] if single else out


@dataclass(frozen=True, eq=False)
class ElasticSolution:
    """Interior Lamé solution with boundary values ``boundary``."""

    params: LameParameters
    boundary: VshExpansion

    def __call__(self, x):
        return eval_solution(self, x)

    @property
    def band_limit(self):
        return self.boundary.band_limit


def solve_dirichlet(boundary, params):
    return ElasticSolution(params, boundary)


def eval_solution(sol, x):
    """Displacement at point(s) x with |x| <= 1."""
    pts, single = _as_points(x, 1.0 + BOUNDARY_TOL)
    basis = basis_solutions(pts, sol.boundary.band_limit, sol.params)
    out = sum(np.einsum("nkc,k->nc", basis[f], sol.boundary.family(f)) for f in FAMILIES)
    return out[0] if single else out


# -- scalar Poisson machinery ------------------------------------------------


def harmonic_poisson_kernel(x, eta):
    """(1 - |x|^2) / (4 pi |x - eta|^3); broadcasts over rows."""
    x = np.asarray(x, dtype=np.float64)
    eta = np.asarray(eta, dtype=np.float64)
    if np.any(np.linalg.norm(np.atleast_2d(x), axis=-1) >= 1.0):
        raise DomainError("Poisson kernel needs |x| < 1")
    d = np.linalg.norm(x - eta, axis=-1)
    return INV_4PI * (1.0 - np.sum(x * x, axis=-1)) / d**3


def poisson_extend(g, x):
    """Harmonic extension Pg(x) = sum a_lm r^l Y_lm(x/r)."""
    pts, single = _as_points(x, 1.0 + BOUNDARY_TOL)
    vals, _ = solid_harmonics(pts, g.band_limit)
    out = vals @ g.coeffs
    return out[0] if single else out


def poisson_gradient(g, x):
    """Cartesian gradient of Pg."""
    pts, single = _as_points(x, 1.0 + BOUNDARY_TOL)
    _, grads = solid_harmonics(pts, g.band_limit)
    out = np.einsum("nkc,k->nc", grads, g.coeffs)
    return out[0] if single else out


def poisson_extend_field(expansion, x, grid=None):
    """Componentwise harmonic extension of a VSH-expanded boundary field.

    Goes through scalar analysis of each Cartesian component on a grid, so it
    does not reuse any of the per-family closed forms.
    """
    L = expansion.band_limit + 1
    grid = grid if grid is not None else build_grid(L)
    samples = synthesize(expansion, grid.nodes)
    pts, single = _as_points(x, 1.0 + BOUNDARY_TOL)
    vals, _ = solid_harmonics(pts, L)
    out = np.stack(
        [vals @ analyze_scalar(grid, samples[:, c], L).coeffs for c in range(3)], axis=1
    )
    return out[0] if single else out


def poisson_hessian(x, eta):
    """Hessian in x of the harmonic Poisson kernel (symmetric, trace-free)."""
    x = np.asarray(x, dtype=np.float64)
    eta = np.asarray(eta, dtype=np.float64)
    single = x.ndim == 1 and eta.ndim == 1
    xs, es = np.broadcast_arrays(np.atleast_2d(x), np.atleast_2d(eta))
    if np.any(np.linalg.norm(xs, axis=1) >= 1.0):
        raise DomainError("Poisson kernel needs |x| < 1")
    out = kernels.poisson_hessian(np.ascontiguousarray(xs), np.ascontiguousarray(es))
    return out[0] if single else out


# -- elastic Poisson kernel --------------------------------------------------


@lru_cache(maxsize=64)
def _t_rule(n, alpha):
    """Nodes/weights on [0, 1] for the weight t**(1 - alpha) (Gauss-Jacobi)."""
    x, w = roots_jacobi(n, 0.0, 1.0 - alpha)
    t = 0.5 * (1.0 + x)
    w = w / 2.0 ** (2.0 - alpha)
    t.flags.writeable = False
    w.flags.writeable = False
    return t, w


def phi_hessian(x, eta, params, rtol=1e-10, n_start=32, n_max=512):
    """Hessian of Phi in x: integral over t in [0,1] of Hess P(t x, eta) t**(1-alpha).

    The node count doubles from ``n_start`` until two successive values agree
    to ``rtol`` relative; reaching ``n_max`` without agreement raises.
    """
    x = np.asarray(x, dtype=np.float64).reshape(3)
    eta = np.atleast_2d(np.asarray(eta, dtype=np.float64))
    n = n_start
    prev = kernels.hessian_moment(x, eta, *_t_rule(n, params.alpha))
    while True:
        n *= 2
        if n > n_max:
            raise NumericalError(
                f"t-integral did not converge to rtol={rtol:g} within {n_max} nodes"
            )
        cur = kernels.hessian_moment(x, eta, *_t_rule(n, params.alpha))
        scale = max(np.abs(cur).max(), np.finfo(float).tiny)
        if np.abs(cur - prev).max() <= rtol * scale:
            return cur
        prev = cur


def elastic_kernel(x, eta, params):
    """Elastic Poisson kernel P(x,eta) I + beta (1-|x|^2) Hess Phi(x,eta).

    ``eta`` may be a single unit vector or an (m, 3) array; the result is
    (3, 3) or (m, 3, 3).
    """
    x = np.asarray(x, dtype=np.float64).reshape(3)
    if np.linalg.norm(x) >= 1.0:
        raise DomainError("elastic kernel needs |x| < 1")
    eta = np.asarray(eta, dtype=np.float64)
    single = eta.ndim == 1
    eta = np.atleast_2d(eta)
    P = harmonic_poisson_kernel(x[None, :], eta)
    K = P[:, None, None] * np.eye(3)
    if params.beta != 0.0:
        K = K + params.beta * (1.0 - x @ x) * phi_hessian(x, eta, params)
    return K[0] if single else K


def elastic_poisson_apply(grid, f, x, params):
    """Quadrature of the elastic Poisson integral of boundary samples ``f`` at x.

    Restricted to |x| <= 0.9: closer to the sphere the kernel is too peaked
    for a fixed grid and the spectral route should be used instead.
    """
    f = np.asarray(f, dtype=np.float64)
    if f.shape != (len(grid), 3):
        raise UsageError(f"field samples must have shape ({len(grid)}, 3)")
    pts, single = _as_points(x)
    if np.any(np.linalg.norm(pts, axis=1) > KERNEL_APPLY_MAX_RADIUS):
        raise UsageError(
            f"kernel quadrature is only trusted for |x| <= {KERNEL_APPLY_MAX_RADIUS}; "
            "use solve_dirichlet for points nearer the boundary"
        )
    out = np.empty((pts.shape[0], 3))
    for i, p in enumerate(pts):
        K = elastic_kernel(p, grid.nodes, params)
        out[i] = np.einsum("n,nij,nj->i", grid.weights, K, f)
    return out[0] if single else out


# -- representation formulas -------------------------------------------------


def harmonic_plus_extension(g, x):
    """P(L+ g)(x) = [2 x.grad(Pg) + Pg] x - |x|^2 grad(Pg)."""
    pts, single = _as_points(x, 1.0 + BOUNDARY_TOL)
    vals, grads = solid_harmonics(pts, g.band_limit)
    Pg = vals @ g.coeffs
    dPg = np.einsum("nkc,k->nc", grads, g.coeffs)
    r2 = np.einsum("ni,ni->n", pts, pts)
    radial = 2.0 * np.einsum("ni,ni->n", pts, dPg) + Pg
    out = radial[:, None] * pts - r2[:, None] * dPg
    return out[0] if single else out


def h_plus_representation(g, params, x):
    """P(L+ g)(x) + (|x|^2 - 1) grad P(M_beta g)(x), the elastic extension of L+ g."""
    pts, single = _as_points(x, 1.0 + BOUNDARY_TOL)
    Mg = apply_zonal_multiplier(g, lambda l: beta_ell(l, params))
    r2m1 = np.einsum("ni,ni->n", pts, pts) - 1.0
    out = harmonic_plus_extension(g, pts) + r2m1[:, None] * poisson_gradient(Mg, pts)
    return out[0] if single else out


# -- finite-difference PDE checks --------------------------------------------


def lame_residual(field, params, x, h=1e-3, order=4):
    """Central-difference mu Lap u + (lambda + mu) grad div u at x."""
    _fd.check_clearance(x, h, order)
    D = _fd.hessian(field, x, h, order)
    lap = np.trace(D, axis1=-2, axis2=-1)
    grad_div = np.einsum("...jij->...i", D)
    return params.mu * lap + (params.lam + params.mu) * grad_div


def div_curl(field, x, h=1e-4, order=4):
    """Central-difference divergence and curl at x."""
    _fd.check_clearance(x, h, order)
    J = _fd.jacobian(field, x, h, order)
    div = np.trace(J, axis1=-2, axis2=-1)
    curl = np.stack(
        [J[..., 2, 1] - J[..., 1, 2], J[..., 0, 2] - J[..., 2, 0], J[..., 1, 0] - J[..., 0, 1]],
        axis=-1,
    )
    return div, curl


def fd_laplacian(field, x, h=1e-3, order=4):
    """Componentwise central-difference Laplacian."""
    _fd.check_clearance(x, h, order)
    return np.trace(_fd.hessian(field, x, h, order), axis1=-2, axis2=-1)
