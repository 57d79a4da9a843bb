"""Central finite-difference Jacobians and Hessians of vector fields.

``field`` is any callable mapping an (n, 3) array of points to (n, 3) values.
All stencil points for all evaluation points go through one batched call.
"""

import numpy as np

from .errors import UsageError

# offsets -> weights (before dividing by h or h**2)
_FIRST = {
    2: ((-1, -0.5), (1, 0.5)),
    4: ((-2, 1 / 12), (-1, -8 / 12), (1, 8 / 12), (2, -1 / 12)),
}
_SECOND = {
    2: ((-1, 1.0), (0, -2.0), (1, 1.0)),
    4: ((-2, -1 / 12), (-1, 16 / 12), (0, -30 / 12), (1, 16 / 12), (2, -1 / 12)),
}


def stencil_reach(order):
    """Largest distance (in units of h) that a Hessian stencil reaches."""
    return max(_FIRST[order][-1][0] * np.sqrt(2.0), 2.0)


def _points(x):
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    return np.atleast_2d(x), single


def check_clearance(x, h, order, radius=1.0):
    pts, _ = _points(x)
    if order not in _FIRST:
        raise UsageError(f"unsupported stencil order {order}; use 2 or 4")
    gap = radius - np.linalg.norm(pts, axis=1)
    need = stencil_reach(order) * h
    if np.any(gap <= need):
        raise UsageError(
            f"step h={h:g} too large: some point lies within {need:g} of the boundary"
        )


def _eval_offsets(field, pts, offsets):
    """field at pts + offset for each offset; returns (n_off, n, 3)."""
    n = pts.shape[0]
    shifted = (pts[None, :, :] + offsets[:, None, :]).reshape(-1, 3)
    vals = np.asarray(field(shifted), dtype=np.float64)
    return vals.reshape(len(offsets), n, -1)


def jacobian(field, x, h, order=4):
    """J[..., i, j] = d u_i / d x_j."""
    pts, single = _points(x)
    eye = np.eye(3)
    offs, wts = [], []
    for j in range(3):
        for a, w in _FIRST[order]:
            offs.append(a * h * eye[j])
            wts.append((j, w / h))
    vals = _eval_offsets(field, pts, np.array(offs))
    J = np.zeros((pts.shape[0], vals.shape[2], 3))
    for (j, w), v in zip(wts, vals):
        J[:, :, j] += w * v
    return J[0] if single else J


def hessian(field, x, h, order=4):
    """D[..., i, j, k] = d^2 u_i / dx_j dx_k."""
    pts, single = _points(x)
    eye = np.eye(3)
    offs, terms = [], []
    for j in range(3):
        for a, w in _SECOND[order]:
            offs.append(a * h * eye[j])
            terms.append(((j, j), w / h**2))
    for j in range(3):
        for k in range(j + 1, 3):
            for a, wa in _FIRST[order]:
                for b, wb in _FIRST[order]:
                    offs.append(h * (a * eye[j] + b * eye[k]))
                    terms.append(((j, k), wa * wb / h**2))
    vals = _eval_offsets(field, pts, np.array(offs))
    D = np.zeros((pts.shape[0], vals.shape[2], 3, 3))
    for ((j, k), w), v in zip(terms, vals):
        D[:, :, j, k] += w * v
        if j != k:
            D[:, :, k, j] += w * v
    return D[0] if single else D
