"""Real orthonormal spherical harmonics and their solid extensions.

Convention: Y_lm is real, fully normalized against the unnormalized surface
measure (the integral of Y_lm**2 over the sphere is 1), built from cos(m phi)
for m > 0 and sin(|m| phi) for m < 0, without the Condon-Shortley phase.

Everything is evaluated in Cartesian form through the solid harmonic
r**l Y_lm(x/r), which is a homogeneous polynomial, so nothing is singular at
the poles. Coefficient arrays use the flat index ``l*l + l + m``.
"""

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import DomainError

UNIT_TOL = 1e-12


@dataclass(frozen=True, order=True)
class HarmonicIndex:
    """Degree/order pair addressing Y_lm."""

    l: int
    m: int

    def __post_init__(self):
        if self.l < 0 or abs(self.m) > self.l:
            raise DomainError(f"invalid harmonic index (l={self.l}, m={self.m})")

    @property
    def flat(self):
        return flat_index(self.l, self.m)


def as_index(idx):
    if isinstance(idx, HarmonicIndex):
        return idx
    l, m = idx
    return HarmonicIndex(int(l), int(m))


def flat_index(l, m):
    return l * l + l + m


def num_coeffs(L):
    return (L + 1) ** 2


def degrees(L):
    """Degree l of every flat index up to band limit L."""
    return np.repeat(np.arange(L + 1), 2 * np.arange(L + 1) + 1)


def orders(L):
    return np.concatenate([np.arange(-l, l + 1) for l in range(L + 1)])


def iter_indices(L, lmin=0):
    for l in range(lmin, L + 1):
        for m in range(-l, l + 1):
            yield HarmonicIndex(l, m)


def _as_points(x):
    pts = np.asarray(x, dtype=np.float64)
    single = pts.ndim == 1
    pts = np.atleast_2d(pts)
    if pts.shape[-1] != 3:
        raise DomainError(f"points must have 3 components, got shape {pts.shape}")
    return pts, single


def check_unit(eta, tol=UNIT_TOL):
    pts, _ = _as_points(eta)
    err = np.abs(np.linalg.norm(pts, axis=1) - 1.0)
    if np.any(err > tol):
        raise DomainError(f"points are not unit vectors (max |norm-1| = {err.max():.3e})")


def solid_harmonics(x, L):
    """All solid harmonics of degree <= L and their gradients at ``x``.

    Returns ``(vals, grads)`` with shapes (n, K) and (n, K, 3), K = (L+1)**2;
    the leading axis is dropped when ``x`` is a single point.
    """
    pts, single = _as_points(x)
    vals, grads = kernels.solid_harmonics(pts, int(L))
    if single:
        return vals[0], grads[0]
    return vals, grads


def surface_harmonics(eta, L):
    """Values and surface gradients of every Y_lm, l <= L, at unit points.

    The surface gradient is the Cartesian gradient of the solid harmonic minus
    its normal part l*Y*eta.
    """
    pts, single = _as_points(eta)
    vals, grads = kernels.solid_harmonics(pts, int(L))
    ell = degrees(L).astype(float)
    sgrads = grads - (ell * vals)[:, :, None] * pts[:, None, :]
    if single:
        return vals[0], sgrads[0]
    return vals, sgrads


def eval_scalar_harmonic(idx, eta):
    """Y_lm at unit vector(s) ``eta``."""
    idx = as_index(idx)
    check_unit(eta)
    vals, _ = solid_harmonics(eta, idx.l)
    return vals[..., idx.flat]


def eval_solid_harmonic(idx, x):
    """r**l Y_lm(x/r); well defined at the origin."""
    idx = as_index(idx)
    vals, _ = solid_harmonics(x, idx.l)
    return vals[..., idx.flat]


def eval_solid_gradient(idx, x):
    idx = as_index(idx)
    _, grads = solid_harmonics(x, idx.l)
    return grads[..., idx.flat, :]


def eval_surface_gradient(idx, eta):
    idx = as_index(idx)
    check_unit(eta)
    _, sgrads = surface_harmonics(eta, idx.l)
    return sgrads[..., idx.flat, :]
