"""Named boundary fields for the command line and the verification suite.

Names: ``identity`` (f = eta), ``constant-e3``, ``zero``,
``vsh:<family>:<l>:<m>`` (a single basis field) and ``random:<L>:<seed>``
(Gaussian coefficients in all three families up to degree L).
"""

import numpy as np

from .decomposition import VshExpansion, synthesize
from .errors import UsageError
from .sphharm import num_coeffs
from .vsh import VshFamily


def random_expansion(L, rng):
    K = num_coeffs(L)
    mask = np.ones(K)
    mask[0] = 0.0
    return VshExpansion(L, rng.standard_normal(K), rng.standard_normal(K) * mask,
                        rng.standard_normal(K) * mask)


def named_expansion(name):
    """Exact expansion of a named field, or None for fields given pointwise."""
    parts = name.split(":")
    if parts[0] == "vsh" and len(parts) == 4:
        try:
            family = VshFamily.parse(parts[1])
            l, m = int(parts[2]), int(parts[3])
        except ValueError:
            raise UsageError(f"bad field name {name!r}; expected vsh:<+|-|0>:<l>:<m>") from None
        return VshExpansion.from_entries(l, {(family, l, m): 1.0})
    if parts[0] == "random" and len(parts) == 3:
        try:
            L, seed = int(parts[1]), int(parts[2])
        except ValueError:
            raise UsageError(f"bad field name {name!r}; expected random:<L>:<seed>") from None
        return random_expansion(L, np.random.default_rng(seed))
    if name in ("identity", "constant-e3", "zero"):
        return None
    raise UsageError(f"unknown field {name!r}")


def field_degree(name):
    """Componentwise polynomial degree of the named field."""
    if name in ("identity",):
        return 1
    if name in ("constant-e3", "zero"):
        return 0
    return named_expansion(name).band_limit + 1


def sample_field(name, eta):
    """Evaluate the named field at unit points ``eta`` of shape (n, 3)."""
    eta = np.asarray(eta, dtype=np.float64)
    if name == "identity":
        return eta.copy()
    if name == "constant-e3":
        return np.tile([0.0, 0.0, 1.0], (eta.shape[0], 1))
    if name == "zero":
        return np.zeros_like(eta)
    return synthesize(named_expansion(name), eta)
