"""Coefficient files (JSON) and sample files (CSV).

Coefficient file::

    {
      "convention": "real-orthonormal-4pi",
      "kind": "vector",
      "band_limit": 2,
      "coefficients": [
        {"family": "+", "l": 0, "m": 0, "value": 3.5449077018110318}
      ]
    }

Scalar files use ``"kind": "scalar"`` and omit ``family``. Records are written
in (family, l, m) order with 17 significant digits.

Sample file: comma-separated rows ``eta1,eta2,eta3,weight[,f1,f2,f3]`` with an
optional header line and ``#`` comments.
"""

import json

import numpy as np

from .decomposition import ScalarExpansion, VshExpansion
from .errors import UsageError
from .quadrature import SphereGrid
from .sphharm import flat_index
from .vsh import FAMILIES, VshFamily

CONVENTION = "real-orthonormal-4pi"
SAMPLE_HEADER = ("eta1", "eta2", "eta3", "weight", "f1", "f2", "f3")
NODE_TOL = 1e-9


class FormatError(UsageError):
    """Malformed coefficient or sample file."""


def _num(x):
    return format(float(x), ".17g")


def dumps_coefficients(expansion):
    lines = ["{", f'  "convention": "{CONVENTION}",']
    records = []
    if isinstance(expansion, VshExpansion):
        lines.append('  "kind": "vector",')
        for family, l, m, value in expansion.entries():
            records.append(
                f'    {{"family": "{family.value}", "l": {l}, "m": {m}, "value": {_num(value)}}}'
            )
    else:
        lines.append('  "kind": "scalar",')
        L = expansion.band_limit
        for l in range(L + 1):
            for m in range(-l, l + 1):
                value = expansion.coeffs[flat_index(l, m)]
                if value != 0.0:
                    records.append(f'    {{"l": {l}, "m": {m}, "value": {_num(value)}}}')
    lines.append(f'  "band_limit": {expansion.band_limit},')
    if records:
        lines.append('  "coefficients": [')
        lines.append(",\n".join(records))
        lines.append("  ]")
    else:
        lines.append('  "coefficients": []')
    lines.append("}")
    return "\n".join(lines) + "\n"


def loads_coefficients(text):
    """Parse a coefficient document into a VshExpansion or ScalarExpansion."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"coefficient file is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError("coefficient file must be a JSON object")
    if doc.get("convention") != CONVENTION:
        raise FormatError(
            f"unsupported basis convention {doc.get('convention')!r}; expected {CONVENTION!r}"
        )
    kind = doc.get("kind", "vector")
    if kind not in ("vector", "scalar"):
        raise FormatError(f"unknown kind {kind!r}; expected 'vector' or 'scalar'")
    L = doc.get("band_limit")
    if not isinstance(L, int) or isinstance(L, bool) or L < 0:
        raise FormatError("band_limit must be a non-negative integer")
    records = doc.get("coefficients")
    if not isinstance(records, list):
        raise FormatError("coefficients must be a list")
    seen = set()
    entries = {}
    for rec in records:
        if not isinstance(rec, dict):
            raise FormatError(f"bad record {rec!r}")
        try:
            l, m, value = rec["l"], rec["m"], float(rec["value"])
        except (KeyError, TypeError, ValueError):
            raise FormatError(f"bad record {rec!r}") from None
        if not (isinstance(l, int) and isinstance(m, int)) or l < 0 or abs(m) > l:
            raise FormatError(f"invalid index in record {rec!r}")
        if l > L:
            raise FormatError(f"record {rec!r} exceeds band limit {L}")
        if not np.isfinite(value):
            raise FormatError(f"non-finite value in record {rec!r}")
        if kind == "vector":
            try:
                family = VshFamily(rec.get("family"))
            except ValueError:
                raise FormatError(f"invalid family in record {rec!r}") from None
            if family is not VshFamily.PLUS and l == 0:
                raise FormatError(f"family {family.value} has no degree-0 element: {rec!r}")
            key = (family, l, m)
        else:
            key = (l, m)
        if key in seen:
            raise FormatError(f"duplicate coefficient {key!r}")
        seen.add(key)
        entries[key] = value
    if kind == "vector":
        return VshExpansion.from_entries(L, entries)
    return ScalarExpansion.from_entries(L, entries)


def read_coefficients(path):
    with open(path, encoding="utf-8") as fh:
        return loads_coefficients(fh.read())


def write_coefficients(path, expansion):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_coefficients(expansion))


def _parse_rows(lines, what):
    rows = []
    first = True
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([float(p) for p in line.split(",")])
        except ValueError:
            if not first:
                raise FormatError(f"{what}: non-numeric row {lineno}: {line!r}") from None
        first = False
    return rows


def read_samples(path):
    """Read a sample file; returns (grid, f or None)."""
    with open(path, encoding="utf-8") as fh:
        rows = _parse_rows(fh, "sample file")
    if not rows:
        raise FormatError(f"sample file {path} has no data rows")
    widths = {len(r) for r in rows}
    if widths not in ({4}, {7}):
        raise FormatError("sample rows must have 4 or 7 columns (eta1..3, weight[, f1..3])")
    data = np.array(rows)
    nodes = data[:, :3]
    err = np.abs(np.linalg.norm(nodes, axis=1) - 1.0)
    if np.any(err > NODE_TOL):
        raise FormatError(f"sample nodes are not unit vectors (max |norm-1| = {err.max():.2e})")
    if np.any(data[:, 3] <= 0):
        raise FormatError("sample weights must be positive")
    nodes = nodes / np.linalg.norm(nodes, axis=1)[:, None]
    # exactness is unknown for external grids; callers check it against a band limit
    grid = SphereGrid(nodes, data[:, 3], exactness_degree=0)
    f = data[:, 4:7] if data.shape[1] == 7 else None
    return grid, f


def format_samples(grid, f=None):
    out = [",".join(SAMPLE_HEADER if f is not None else SAMPLE_HEADER[:4])]
    for i in range(len(grid)):
        cols = list(grid.nodes[i]) + [grid.weights[i]]
        if f is not None:
            cols += list(f[i])
        out.append(",".join(_num(c) for c in cols))
    return "\n".join(out) + "\n"


def write_samples(path, grid, f=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_samples(grid, f))


def read_points(path):
    with open(path, encoding="utf-8") as fh:
        rows = _parse_rows(fh, "points file")
    if not rows or {len(r) for r in rows} != {3}:
        raise FormatError("points file needs rows of three comma-separated numbers")
    return np.array(rows)


def parse_point(text):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise FormatError(f"cannot parse point {text!r}; expected 'x,y,z'") from None
    if len(vals) != 3:
        raise FormatError(f"point {text!r} must have three components")
    return np.array(vals)


__all__ = [
    "CONVENTION",
    "FAMILIES",
    "FormatError",
    "dumps_coefficients",
    "format_samples",
    "loads_coefficients",
    "parse_point",
    "read_coefficients",
    "read_points",
    "read_samples",
    "write_coefficients",
    "write_samples",
]
