"""Pure-numpy implementations of the hot kernels.

Used when the compiled extension is unavailable, or when forced through the
``LAMEBALL_BACKEND=python`` environment variable. Signatures and output
layouts match ``lameball._ckernels`` exactly.
"""

import numpy as np

INV_4PI = 1.0 / (4.0 * np.pi)


def _recurrence_coefficients(L):
    a = np.zeros((L + 1, L + 1))
    b = np.zeros((L + 1, L + 1))
    for m in range(L + 1):
        for l in range(m + 2, L + 1):
            a[l, m] = np.sqrt((4.0 * l * l - 1.0) / (l * l - m * m))
            b[l, m] = np.sqrt(
                (2.0 * l + 1.0) * ((l - 1.0) ** 2 - m * m)
                / ((2.0 * l - 3.0) * (l * l - m * m))
            )
    return a, b


def solid_harmonics(points, L):
    """Real solid harmonics r^l Y_lm(x/r) and their Cartesian gradients.

    Parameters
    ----------
    points : (n, 3) float array
    L : int
        Maximum degree.

    Returns
    -------
    vals : (n, (L+1)**2) array
        Column ``l*l + l + m`` holds the (l, m) solid harmonic.
    grads : (n, (L+1)**2, 3) array
    """
    pts = np.ascontiguousarray(points, dtype=np.float64)
    n = pts.shape[0]
    K = (L + 1) ** 2
    vals = np.zeros((n, K))
    grads = np.zeros((n, K, 3))
    x, y, z = pts[:, 0], pts[:, 1], pts[:, 2]
    s = x * x + y * y + z * z
    a, b = _recurrence_coefficients(L)

    # (x + iy)^m split into cos/sin parts, with derivative helpers
    C = np.zeros((L + 1, n))
    S = np.zeros((L + 1, n))
    C[0] = 1.0
    for m in range(1, L + 1):
        C[m] = x * C[m - 1] - y * S[m - 1]
        S[m] = x * S[m - 1] + y * C[m - 1]

    sqrt2 = np.sqrt(2.0)
    qmm = np.full(n, np.sqrt(INV_4PI))
    for m in range(L + 1):
        if m > 0:
            qmm = qmm * np.sqrt((2.0 * m + 1.0) / (2.0 * m))
        # q(z, s) and its partials in z and s, for l = m .. L
        q_prev2 = q_prev = None
        for l in range(m, L + 1):
            if l == m:
                q = qmm.copy()
                qz = np.zeros(n)
                qs = np.zeros(n)
            elif l == m + 1:
                c = np.sqrt(2.0 * m + 3.0)
                q = c * z * q_prev[0]
                qz = c * q_prev[0]
                qs = np.zeros(n)
            else:
                p1, p2 = q_prev, q_prev2
                q = a[l, m] * z * p1[0] - b[l, m] * s * p2[0]
                qz = a[l, m] * (p1[0] + z * p1[1]) - b[l, m] * s * p2[1]
                qs = a[l, m] * z * p1[2] - b[l, m] * (p2[0] + s * p2[2])
            q_prev2, q_prev = q_prev, (q, qz, qs)

            dqx = 2.0 * x * qs
            dqy = 2.0 * y * qs
            dqz = qz + 2.0 * z * qs
            if m == 0:
                k = l * l + l
                vals[:, k] = q
                grads[:, k, 0] = dqx
                grads[:, k, 1] = dqy
                grads[:, k, 2] = dqz
                continue
            # d/dx C_m = m C_{m-1}, d/dy C_m = -m S_{m-1}
            # d/dx S_m = m S_{m-1}, d/dy S_m =  m C_{m-1}
            kc = l * l + l + m
            vals[:, kc] = sqrt2 * q * C[m]
            grads[:, kc, 0] = sqrt2 * (dqx * C[m] + q * m * C[m - 1])
            grads[:, kc, 1] = sqrt2 * (dqy * C[m] - q * m * S[m - 1])
            grads[:, kc, 2] = sqrt2 * dqz * C[m]
            ks = l * l + l - m
            vals[:, ks] = sqrt2 * q * S[m]
            grads[:, ks, 0] = sqrt2 * (dqx * S[m] + q * m * S[m - 1])
            grads[:, ks, 1] = sqrt2 * (dqy * S[m] + q * m * C[m - 1])
            grads[:, ks, 2] = sqrt2 * dqz * S[m]
    return vals, grads


def poisson_hessian(x, eta):
    """Hessian in x of the harmonic Poisson kernel, row-wise over (n, 3) inputs."""
    x = np.asarray(x, dtype=np.float64)
    eta = np.asarray(eta, dtype=np.float64)
    v = x - eta
    d2 = np.einsum("ni,ni->n", v, v)
    one_minus = 1.0 - np.einsum("ni,ni->n", x, x)
    d3 = d2 ** -1.5
    d5 = d3 / d2
    d7 = d5 / d2
    eye = np.eye(3)
    H = (
        (-2.0 * d3 - 3.0 * one_minus * d5)[:, None, None] * eye
        + 6.0 * d5[:, None, None]
        * (x[:, :, None] * v[:, None, :] + v[:, :, None] * x[:, None, :])
        + (15.0 * one_minus * d7)[:, None, None] * v[:, :, None] * v[:, None, :]
    )
    return INV_4PI * H


def hessian_moment(x, eta, t_nodes, t_weights):
    """Weighted sum over t of the Poisson-kernel Hessian at (t x, eta).

    Returns an (m, 3, 3) array: sum_q w_q H(t_q x, eta_k) for each row of eta.
    """
    x = np.asarray(x, dtype=np.float64)
    eta = np.atleast_2d(np.asarray(eta, dtype=np.float64))
    m = eta.shape[0]
    out = np.zeros((m, 3, 3))
    for t, w in zip(t_nodes, t_weights):
        tx = np.broadcast_to(t * x, (m, 3))
        out += w * poisson_hessian(tx, eta)
    return out
