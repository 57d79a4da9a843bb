"""Scalar and vector spherical-harmonic expansions on the sphere.

Vector fields are expanded in the unnormalized E+/E-/E0 families, so a
coefficient is an inner product divided by ``vsh_norm_sq``. The operators
L-, L0, L+ that send a scalar potential g to E-/E0/E+ fields act on
coefficients as relabelings, which is how they are implemented here.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UsageError
from .quadrature import integrate
from .sphharm import degrees, flat_index, num_coeffs, solid_harmonics
from .vsh import FAMILIES, VshFamily, norm_sq_table, vsh_basis


def _frozen(arr):
    arr = np.array(arr, dtype=np.float64)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class ScalarExpansion:
    """Band-limited real spherical-harmonic series sum a_lm Y_lm."""

    band_limit: int
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = _frozen(self.coeffs)
        if coeffs.shape != (num_coeffs(self.band_limit),):
            raise UsageError(
                f"expected {num_coeffs(self.band_limit)} coefficients for L={self.band_limit}, "
                f"got shape {coeffs.shape}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zeros(cls, L):
        return cls(L, np.zeros(num_coeffs(L)))

    @classmethod
    def from_entries(cls, L, entries):
        """Build from a mapping ``{(l, m): value}``."""
        c = np.zeros(num_coeffs(L))
        for (l, m), value in entries.items():
            if l > L or abs(m) > l:
                raise DomainError(f"index (l={l}, m={m}) outside band limit {L}")
            c[flat_index(l, m)] += value
        return cls(L, c)

    def __getitem__(self, lm):
        l, m = lm
        if l > self.band_limit:
            return 0.0
        return float(self.coeffs[flat_index(l, m)])

    def resized(self, L):
        c = np.zeros(num_coeffs(L))
        n = min(num_coeffs(L), self.coeffs.size)
        c[:n] = self.coeffs[:n]
        return ScalarExpansion(L, c)

    def __add__(self, other):
        L = max(self.band_limit, other.band_limit)
        return ScalarExpansion(L, self.resized(L).coeffs + other.resized(L).coeffs)

    def __sub__(self, other):
        return self + (-1.0) * other

    def __rmul__(self, scale):
        return ScalarExpansion(self.band_limit, scale * self.coeffs)

    def allclose(self, other, atol=1e-12):
        L = max(self.band_limit, other.band_limit)
        return np.allclose(self.resized(L).coeffs, other.resized(L).coeffs, rtol=0, atol=atol)

    def mean(self):
        """Average over the sphere, a_00 * Y_00."""
        return self.coeffs[0] / (2.0 * np.sqrt(np.pi))


@dataclass(frozen=True, eq=False)
class VshExpansion:
    """Band-limited series over the E+, E-, E0 families.

    Each family holds (L+1)**2 coefficients on the flat index; the l = 0
    entries of the Minus and Zero families are always zero.
    """

    band_limit: int
    plus: np.ndarray
    minus: np.ndarray
    zero: np.ndarray

    def __post_init__(self):
        K = num_coeffs(self.band_limit)
        for name in ("plus", "minus", "zero"):
            arr = _frozen(getattr(self, name))
            if arr.shape != (K,):
                raise UsageError(f"{name} coefficients must have shape ({K},), got {arr.shape}")
            object.__setattr__(self, name, arr)
        if self.minus[0] != 0.0 or self.zero[0] != 0.0:
            raise DomainError("Minus and Zero families have no degree-0 coefficient")

    @classmethod
    def zeros(cls, L):
        K = num_coeffs(L)
        return cls(L, np.zeros(K), np.zeros(K), np.zeros(K))

    @classmethod
    def from_entries(cls, L, entries):
        """Build from a mapping ``{(family, l, m): value}``."""
        arrs = {f: np.zeros(num_coeffs(L)) for f in FAMILIES}
        for (family, l, m), value in entries.items():
            family = VshFamily.parse(family)
            if l > L or abs(m) > l or l < 0:
                raise DomainError(f"index (l={l}, m={m}) outside band limit {L}")
            if family is not VshFamily.PLUS and l == 0:
                raise DomainError(f"family {family.value} has no degree-0 elements")
            arrs[family][flat_index(l, m)] += value
        return cls.from_families(L, arrs)

    @classmethod
    def from_families(cls, L, arrs):
        K = num_coeffs(L)
        get = lambda f: arrs.get(f, np.zeros(K))  # noqa: E731
        return cls(L, get(VshFamily.PLUS), get(VshFamily.MINUS), get(VshFamily.ZERO))

    def family(self, family):
        family = VshFamily.parse(family)
        return {VshFamily.PLUS: self.plus, VshFamily.MINUS: self.minus, VshFamily.ZERO: self.zero}[
            family
        ]

    def __getitem__(self, key):
        family, l, m = key
        if l > self.band_limit:
            return 0.0
        return float(self.family(family)[flat_index(l, m)])

    def entries(self):
        """Nonzero coefficients as ``(family, l, m, value)``, ordered by (family, l, m)."""
        out = []
        ell = degrees(self.band_limit)
        for family in FAMILIES:
            arr = self.family(family)
            for k in np.flatnonzero(arr):
                l = int(ell[k])
                out.append((family, l, int(k - l * l - l), float(arr[k])))
        return out

    def resized(self, L):
        n = min(num_coeffs(L), num_coeffs(self.band_limit))
        arrs = {}
        for f in FAMILIES:
            c = np.zeros(num_coeffs(L))
            c[:n] = self.family(f)[:n]
            arrs[f] = c
        return VshExpansion.from_families(L, arrs)

    def _combine(self, other, op):
        L = max(self.band_limit, other.band_limit)
        a, b = self.resized(L), other.resized(L)
        return VshExpansion.from_families(L, {f: op(a.family(f), b.family(f)) for f in FAMILIES})

    def __add__(self, other):
        return self._combine(other, np.add)

    def __sub__(self, other):
        return self._combine(other, np.subtract)

    def __rmul__(self, scale):
        return VshExpansion.from_families(
            self.band_limit, {f: scale * self.family(f) for f in FAMILIES}
        )

    def allclose(self, other, atol=1e-12):
        diff = self - other
        return all(np.allclose(diff.family(f), 0.0, rtol=0, atol=atol) for f in FAMILIES)

    def energies(self):
        """Squared L2 norm carried by each family (Parseval)."""
        return {
            f: float(np.sum(self.family(f) ** 2 * norm_sq_table(f, self.band_limit)))
            for f in FAMILIES
        }

    def is_empty(self):
        return not any(np.any(self.family(f)) for f in FAMILIES)


def _require_exactness(grid, degree):
    if grid.exactness_degree < degree:
        raise UsageError(
            f"grid is exact to degree {grid.exactness_degree}, need at least {degree}"
        )


def analyze_scalar(grid, samples, L):
    """Coefficients a_lm = sum_i w_i f(eta_i) Y_lm(eta_i), l <= L."""
    _require_exactness(grid, 2 * L)
    vals, _ = solid_harmonics(grid.nodes, L)
    return ScalarExpansion(L, integrate(grid, np.asarray(samples)[:, None] * vals))


def analyze_field(grid, f, L):
    """Project sampled vector field ``f`` onto E+/E-/E0 up to degree L."""
    _require_exactness(grid, 2 * (L + 1))
    f = np.asarray(f, dtype=np.float64)
    if f.shape != (len(grid), 3):
        raise UsageError(f"field samples must have shape ({len(grid)}, 3), got {f.shape}")
    basis = vsh_basis(grid.nodes, L)
    arrs = {}
    for family in FAMILIES:
        inner = integrate(grid, np.einsum("nkc,nc->nk", basis[family], f))
        nsq = norm_sq_table(family, L)
        arrs[family] = np.divide(inner, nsq, out=np.zeros_like(inner), where=nsq > 0)
    return VshExpansion.from_families(L, arrs)


def synthesize(expansion, eta):
    """Evaluate sum a^#_lm E^#_lm at unit point(s) ``eta``."""
    eta = np.asarray(eta, dtype=np.float64)
    single = eta.ndim == 1
    basis = vsh_basis(eta, expansion.band_limit)
    out = sum(np.einsum("nkc,k->nc", basis[f], expansion.family(f)) for f in FAMILIES)
    return out[0] if single else out


def synthesize_scalar(g, eta):
    eta = np.asarray(eta, dtype=np.float64)
    vals, _ = solid_harmonics(eta, g.band_limit)
    return vals @ g.coeffs


def project(expansion, family):
    """Keep only the requested family (orthogonal projection at p = 2)."""
    family = VshFamily.parse(family)
    return VshExpansion.from_families(expansion.band_limit, {family: expansion.family(family)})


def zonal_sequence(beta, L):
    """Materialize a zonal sequence as an array of length L+1."""
    if callable(beta):
        beta = [beta(l) for l in range(L + 1)]
    beta = np.asarray(beta, dtype=np.float64)
    if beta.ndim != 1 or beta.size < L + 1:
        raise UsageError(f"zonal sequence must cover degrees 0..{L}")
    if not np.all(np.isfinite(beta[: L + 1])):
        raise DomainError("zonal sequence has non-finite entries")
    return beta[: L + 1]


def apply_zonal_multiplier(g, beta):
    """Scale each degree-l block of ``g`` by beta_l."""
    b = zonal_sequence(beta, g.band_limit)
    return ScalarExpansion(g.band_limit, b[degrees(g.band_limit)] * g.coeffs)


def _drop_degree_zero(c):
    c = np.array(c)
    c[0] = 0.0
    return c


def op_L_minus(g):
    """L- g = (l g)^v + grad_s g; sends Y_lm to E-_lm and kills constants."""
    return VshExpansion.from_families(g.band_limit, {VshFamily.MINUS: _drop_degree_zero(g.coeffs)})


def op_L_zero(g):
    """L0 g = eta x grad_s g; sends Y_lm to E0_lm and kills constants."""
    return VshExpansion.from_families(g.band_limit, {VshFamily.ZERO: _drop_degree_zero(g.coeffs)})


def op_L_plus(g):
    """L+ g = ((l+1) g)^v - grad_s g; sends Y_lm to E+_lm, an isomorphism."""
    return VshExpansion.from_families(g.band_limit, {VshFamily.PLUS: np.array(g.coeffs)})


def potential_of(expansion, family):
    """Scalar g with L_family(g) = expansion; mean fixed to zero for Minus/Zero."""
    family = VshFamily.parse(family)
    for other in FAMILIES:
        if other is not family and np.any(expansion.family(other)):
            raise DomainError(
                f"expansion has {other.value} coefficients; potential_of({family.value}) "
                "requires a single-family expansion"
            )
    return ScalarExpansion(expansion.band_limit, np.array(expansion.family(family)))
