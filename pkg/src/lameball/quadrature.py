"""Product Gauss-Legendre x uniform-azimuth quadrature on the unit sphere."""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UsageError


@dataclass(frozen=True, eq=False)
class SphereGrid:
    """Quadrature nodes and weights on the unit sphere.

    Attributes
    ----------
    nodes : (n, 3) array of unit vectors
    weights : (n,) array of positive weights summing to 4 pi
    exactness_degree : int
        Products of spherical harmonics of total degree up to this value are
        integrated exactly.
    """

    nodes: np.ndarray
    weights: np.ndarray
    exactness_degree: int

    def __post_init__(self):
        nodes = np.ascontiguousarray(self.nodes, dtype=np.float64)
        weights = np.ascontiguousarray(self.weights, dtype=np.float64)
        if nodes.ndim != 2 or nodes.shape[1] != 3 or weights.shape != (nodes.shape[0],):
            raise UsageError("nodes must be (n, 3) and weights (n,)")
        if np.any(weights <= 0):
            raise UsageError("quadrature weights must be positive")
        nodes.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return self.weights.shape[0]

    @property
    def band_limit(self):
        """Largest L for which degree-L scalar analysis is exact."""
        return self.exactness_degree // 2


def build_grid(L):
    """Grid with L+1 Gauss-Legendre nodes in cos(theta) and 2L+1 azimuths.

    Exact for spherical polynomials of degree <= 2L.
    """
    L = int(L)
    if L < 0:
        raise DomainError("band limit must be non-negative")
    z, wz = np.polynomial.legendre.leggauss(L + 1)
    nphi = 2 * L + 1
    phi = 2.0 * np.pi * np.arange(nphi) / nphi
    sin_t = np.sqrt(1.0 - z * z)
    nodes = np.stack(
        [
            np.outer(sin_t, np.cos(phi)).ravel(),
            np.outer(sin_t, np.sin(phi)).ravel(),
            np.repeat(z, nphi),
        ],
        axis=1,
    )
    weights = np.repeat(wz, nphi) * (2.0 * np.pi / nphi)
    return SphereGrid(nodes, weights, 2 * L)


def integrate(grid, values):
    """Quadrature sum over the first axis of ``values``."""
    values = np.asarray(values, dtype=np.float64)
    if values.shape[0] != len(grid):
        raise UsageError(f"{values.shape[0]} samples for a grid of {len(grid)} nodes")
    return np.tensordot(grid.weights, values, axes=(0, 0))


def lp_norm(grid, f, p):
    """L^p norm of scalar or vector samples; ``p = inf`` gives the node maximum.

    The node maximum is only a lower bound for the true supremum, and for p not
    an even integer the result is a quadrature approximation.
    """
    f = np.asarray(f, dtype=np.float64)
    if f.shape[0] != len(grid):
        raise UsageError(f"{f.shape[0]} samples for a grid of {len(grid)} nodes")
    p = float(p)
    if not p >= 1.0:
        raise DomainError(f"L^p norm needs p >= 1, got {p}")
    mag = np.abs(f) if f.ndim == 1 else np.linalg.norm(f.reshape(len(grid), -1), axis=1)
    if np.isinf(p):
        return float(mag.max())
    if p == 2.0:
        return float(np.sqrt(grid.weights @ (mag * mag)))
    return float((grid.weights @ mag**p) ** (1.0 / p))
