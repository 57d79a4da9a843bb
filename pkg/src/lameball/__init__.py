"""Spectral Lamé solver in the unit ball with an elastic Poisson-kernel oracle."""

from ._backend import BACKEND
from .decomposition import (
    ScalarExpansion,
    VshExpansion,
    analyze_field,
    analyze_scalar,
    apply_zonal_multiplier,
    op_L_minus,
    op_L_plus,
    op_L_zero,
    potential_of,
    project,
    synthesize,
    synthesize_scalar,
)
from .elastic import (
    ElasticSolution,
    LameParameters,
    alpha_ell,
    beta_ell,
    div_curl,
    elastic_kernel,
    elastic_poisson_apply,
    eval_basis_solution,
    eval_solution,
    h_plus_representation,
    harmonic_poisson_kernel,
    lame_residual,
    poisson_extend,
    poisson_gradient,
    poisson_hessian,
    solve_dirichlet,
)
from .errors import DomainError, NumericalError, ParameterError, UsageError
from .hardy import boundary_deviation, hardy_norm, sphere_norm
from .quadrature import SphereGrid, build_grid, integrate, lp_norm
from .sphharm import (
    HarmonicIndex,
    eval_scalar_harmonic,
    eval_solid_gradient,
    eval_solid_harmonic,
    eval_surface_gradient,
)
from .vsh import VshFamily, eval_vsh, vsh_norm_sq

__version__ = "0.1.0"
