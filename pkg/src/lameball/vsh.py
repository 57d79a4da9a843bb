"""Vector spherical harmonic families E+, E-, E0.

For a degree-l harmonic Y with surface gradient G at eta:

    E+ = (l+1) Y eta - G
    E- = l Y eta + G
    E0 = eta x G

The fields are left unnormalized; ``vsh_norm_sq`` gives their squared L2 norms.
"""

import enum

import numpy as np

from .errors import DomainError
from .sphharm import as_index, check_unit, degrees, surface_harmonics


class VshFamily(str, enum.Enum):
    PLUS = "+"
    MINUS = "-"
    ZERO = "0"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        aliases = {"plus": "+", "minus": "-", "zero": "0"}
        value = aliases.get(str(value).lower(), str(value))
        try:
            return cls(value)
        except ValueError:
            raise DomainError(f"unknown VSH family {value!r}") from None


FAMILIES = (VshFamily.PLUS, VshFamily.MINUS, VshFamily.ZERO)


def _check_compatible(family, l):
    if family is not VshFamily.PLUS and l == 0:
        raise DomainError(f"family {family.value} has no degree-0 elements")


def vsh_norm_sq(family, l):
    family = VshFamily.parse(family)
    _check_compatible(family, l)
    if family is VshFamily.PLUS:
        return float((l + 1) * (2 * l + 1))
    if family is VshFamily.MINUS:
        return float(l * (2 * l + 1))
    return float(l * (l + 1))


def norm_sq_table(family, L):
    """vsh_norm_sq over every flat index up to L; zero where the family is empty."""
    family = VshFamily.parse(family)
    ell = degrees(L).astype(float)
    if family is VshFamily.PLUS:
        return (ell + 1) * (2 * ell + 1)
    if family is VshFamily.MINUS:
        return ell * (2 * ell + 1)
    return ell * (ell + 1)


def vsh_basis(eta, L):
    """Every E^#_lm with l <= L at the unit points ``eta``.

    Returns a dict family -> array of shape (n, (L+1)**2, 3). Minus and Zero
    columns at l = 0 are identically zero.
    """
    pts = np.atleast_2d(np.asarray(eta, dtype=np.float64))
    vals, sgrads = surface_harmonics(pts, L)
    ell = degrees(L).astype(float)
    radial = vals[:, :, None] * pts[:, None, :]
    return {
        VshFamily.PLUS: (ell + 1)[None, :, None] * radial - sgrads,
        VshFamily.MINUS: ell[None, :, None] * radial + sgrads,
        VshFamily.ZERO: np.cross(pts[:, None, :], sgrads),
    }


def eval_vsh(family, idx, eta):
    """E^family_{l,m} at unit vector(s) ``eta``."""
    family = VshFamily.parse(family)
    idx = as_index(idx)
    _check_compatible(family, idx.l)
    check_unit(eta)
    single = np.asarray(eta).ndim == 1
    out = vsh_basis(eta, idx.l)[family][:, idx.flat, :]
    return out[0] if single else out
