"""Hardy-norm profiles over concentric spheres and radial boundary convergence."""

import numpy as np

from .errors import DomainError, UsageError
from .quadrature import build_grid, lp_norm

DEFAULT_RADII = tuple(1.0 - 2.0 ** -k for k in range(1, 13))


def default_grid(sol, p):
    # |u|^2 is a polynomial of degree 2(L+1); other p only need a fine enough grid
    L = sol.band_limit + 1
    return build_grid(L if p == 2 else 2 * L + 8)


def sphere_norm(sol, r, p, grid=None):
    """L^p norm of u(r .) over the unit sphere."""
    if not 0.0 <= r < 1.0:
        raise DomainError(f"radius must lie in [0, 1), got {r}")
    grid = grid if grid is not None else default_grid(sol, p)
    return lp_norm(grid, sol(r * grid.nodes), p)


def hardy_norm(sol, p, radii=DEFAULT_RADII, grid=None):
    """Max of ``sphere_norm`` over ``radii``: a lower bound for the sup over r < 1."""
    radii = list(radii)
    if not radii:
        raise UsageError("hardy_norm needs at least one radius")
    grid = grid if grid is not None else default_grid(sol, p)
    return max(sphere_norm(sol, r, p, grid) for r in radii)


def radial_profile(sol, p, radii=DEFAULT_RADII, grid=None):
    """(radii, norms) with radii strictly increasing in [0, 1)."""
    radii = np.asarray(radii, dtype=np.float64)
    if radii.size == 0 or np.any(np.diff(radii) <= 0) or radii[0] < 0 or radii[-1] >= 1:
        raise UsageError("radii must be strictly increasing within [0, 1)")
    grid = grid if grid is not None else default_grid(sol, p)
    return radii, np.array([sphere_norm(sol, r, p, grid) for r in radii])


def boundary_deviation(sol, f, r, p, grid):
    """L^p distance between u(r .) and the boundary samples ``f`` on ``grid``."""
    f = np.asarray(f, dtype=np.float64)
    if f.shape != (len(grid), 3):
        raise UsageError(f"boundary samples must have shape ({len(grid)}, 3), got {f.shape}")
    if not 0.0 <= r < 1.0:
        raise DomainError(f"radius must lie in [0, 1), got {r}")
    return lp_norm(grid, sol(r * grid.nodes) - f, p)
