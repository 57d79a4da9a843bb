# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: solid harmonics with gradients, Poisson-kernel Hessians.

Mirrors ``lameball._pykernels`` one for one.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, M_PI

cnp.import_array()

cdef double INV_4PI = 1.0 / (4.0 * M_PI)


def _recurrence_coefficients(int L):
    cdef cnp.ndarray[double, ndim=2] a = np.zeros((L + 1, L + 1))
    cdef cnp.ndarray[double, ndim=2] b = np.zeros((L + 1, L + 1))
    cdef int l, m
    for m in range(L + 1):
        for l in range(m + 2, L + 1):
            a[l, m] = sqrt((4.0 * l * l - 1.0) / (l * l - m * m))
            b[l, m] = sqrt(
                (2.0 * l + 1.0) * ((l - 1.0) * (l - 1.0) - m * m)
                / ((2.0 * l - 3.0) * (l * l - m * m))
            )
    return a, b


def solid_harmonics(points, int L):
    cdef const double[:, ::1] pts = np.ascontiguousarray(points, dtype=np.float64)
    cdef Py_ssize_t n = pts.shape[0]
    cdef int K = (L + 1) * (L + 1)
    vals_arr = np.zeros((n, K))
    grads_arr = np.zeros((n, K, 3))
    cdef double[:, ::1] vals = vals_arr
    cdef double[:, :, ::1] grads = grads_arr
    a_arr, b_arr = _recurrence_coefficients(L)
    cdef double[:, ::1] a = a_arr
    cdef double[:, ::1] b = b_arr
    cdef double[::1] C = np.zeros(L + 1)
    cdef double[::1] S = np.zeros(L + 1)
    cdef double sqrt2 = sqrt(2.0)
    cdef double x, y, z, s, qmm, q, qz, qs, p0, p1z, p1s, r0, r1z, r1s
    cdef double dqx, dqy, dqz, c
    cdef Py_ssize_t i
    cdef int l, m, kc, ks
    for i in range(n):
        x = pts[i, 0]
        y = pts[i, 1]
        z = pts[i, 2]
        s = x * x + y * y + z * z
        C[0] = 1.0
        S[0] = 0.0
        for m in range(1, L + 1):
            C[m] = x * C[m - 1] - y * S[m - 1]
            S[m] = x * S[m - 1] + y * C[m - 1]
        qmm = sqrt(INV_4PI)
        for m in range(L + 1):
            if m > 0:
                qmm = qmm * sqrt((2.0 * m + 1.0) / (2.0 * m))
            # (p0, p1z, p1s): degree l-1 values; (r0, r1z, r1s): degree l-2
            p0 = p1z = p1s = 0.0
            r0 = r1z = r1s = 0.0
            for l in range(m, L + 1):
                if l == m:
                    q = qmm
                    qz = 0.0
                    qs = 0.0
                elif l == m + 1:
                    c = sqrt(2.0 * m + 3.0)
                    q = c * z * p0
                    qz = c * p0
                    qs = 0.0
                else:
                    q = a[l, m] * z * p0 - b[l, m] * s * r0
                    qz = a[l, m] * (p0 + z * p1z) - b[l, m] * s * r1z
                    qs = a[l, m] * z * p1s - b[l, m] * (r0 + s * r1s)
                r0, r1z, r1s = p0, p1z, p1s
                p0, p1z, p1s = q, qz, qs

                dqx = 2.0 * x * qs
                dqy = 2.0 * y * qs
                dqz = qz + 2.0 * z * qs
                if m == 0:
                    kc = l * l + l
                    vals[i, kc] = q
                    grads[i, kc, 0] = dqx
                    grads[i, kc, 1] = dqy
                    grads[i, kc, 2] = dqz
                    continue
                kc = l * l + l + m
                vals[i, kc] = sqrt2 * q * C[m]
                grads[i, kc, 0] = sqrt2 * (dqx * C[m] + q * m * C[m - 1])
                grads[i, kc, 1] = sqrt2 * (dqy * C[m] - q * m * S[m - 1])
                grads[i, kc, 2] = sqrt2 * dqz * C[m]
                ks = l * l + l - m
                vals[i, ks] = sqrt2 * q * S[m]
                grads[i, ks, 0] = sqrt2 * (dqx * S[m] + q * m * S[m - 1])
                grads[i, ks, 1] = sqrt2 * (dqy * S[m] + q * m * C[m - 1])
                grads[i, ks, 2] = sqrt2 * dqz * S[m]
    return vals_arr, grads_arr


cdef inline void _hessian_into(double x0, double x1, double x2,
                               double e0, double e1, double e2,
                               double w, double* out) noexcept nogil:
    # out[3*i + j] += w * d_i d_j P(x, eta)
    cdef double xv[3]
    cdef double v[3]
    cdef double d2, one_minus, d3, d5, d7, diag
    cdef int i, j
    xv[0] = x0
    xv[1] = x1
    xv[2] = x2
    v[0] = x0 - e0
    v[1] = x1 - e1
    v[2] = x2 - e2
    d2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2]
    one_minus = 1.0 - (x0 * x0 + x1 * x1 + x2 * x2)
    d3 = 1.0 / (d2 * sqrt(d2))
    d5 = d3 / d2
    d7 = d5 / d2
    diag = -2.0 * d3 - 3.0 * one_minus * d5
    for i in range(3):
        for j in range(3):
            out[3 * i + j] += w * INV_4PI * (
                (diag if i == j else 0.0)
                + 6.0 * d5 * (xv[i] * v[j] + v[i] * xv[j])
                + 15.0 * one_minus * d7 * v[i] * v[j]
            )


def poisson_hessian(x, eta):
    cdef const double[:, ::1] xs = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[:, ::1] es = np.ascontiguousarray(eta, dtype=np.float64)
    cdef Py_ssize_t n = xs.shape[0], k
    out_arr = np.zeros((n, 3, 3))
    cdef double[:, :, ::1] out = out_arr
    for k in range(n):
        _hessian_into(xs[k, 0], xs[k, 1], xs[k, 2],
                      es[k, 0], es[k, 1], es[k, 2], 1.0, &out[k, 0, 0])
    return out_arr


def hessian_moment(x, eta, t_nodes, t_weights):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64).reshape(3)
    cdef const double[:, ::1] es = np.ascontiguousarray(
        np.atleast_2d(eta), dtype=np.float64)
    cdef const double[::1] tn = np.ascontiguousarray(t_nodes, dtype=np.float64)
    cdef const double[::1] tw = np.ascontiguousarray(t_weights, dtype=np.float64)
    cdef Py_ssize_t m = es.shape[0], nq = tn.shape[0], k, q
    out_arr = np.zeros((m, 3, 3))
    cdef double[:, :, ::1] out = out_arr
    cdef double t
    with nogil:
        for k in range(m):
            for q in range(nq):
                t = tn[q]
                _hessian_into(t * xv[0], t * xv[1], t * xv[2],
                              es[k, 0], es[k, 1], es[k, 2], tw[q], &out[k, 0, 0])
    return out_arr
