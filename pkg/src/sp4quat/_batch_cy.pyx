# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled batch polar kernel.

Same arithmetic as the scalar Python path: Gram coefficients by quarter
Frobenius products against the shared tensor basis table, branch on the d
coefficient, one scalar quadratic, one symmetric 2x2 solve, assembly of H
from the basis table, and U = X H^(-1) with the block-transposition inverse.
"""

from libc.math cimport fabs, sqrt

import numpy as np

from .errors import NotSymplecticError, SingularGuardError
from .hh_rep import BASIS as _BASIS_PY, J4 as _J4_PY

# Shared tables, bound once at import so both backends use the exact same
# basis matrices (copied because the Python-side arrays are locked read-only).
cdef double[:, :, :, ::1] BASIS = np.array(_BASIS_PY, dtype=np.float64, order="C")
cdef double[:, ::1] J4C = np.array(_J4_PY, dtype=np.float64, order="C")

DEF TAU_D = 1e-8
DEF TAU_GAP = 1e-12

cdef int _polar_one(const double[:, ::1] x, double[:, ::1] u_out,
                    double[:, ::1] h_out, double tol) noexcept nogil:
    """Returns 0 on success, 2 when not symplectic, 3 on a numeric guard."""
    cdef double y[4][4]
    cdef double t1[4][4]
    cdef double coef[4][4]
    cdef double c[3]
    cdef double d[3]
    cdef double e[3]
    cdef double p[3]
    cdef double r[3]
    cdef double q[3]
    cdef double hinv[4][4]
    cdef double acc, xmax, resid, b, dd, cc, ee, ce
    cdef double half_sum, disc, guard, root_hi, root_lo, root, a
    cdef double gap, pp, rr, pr, alpha, beta, gamma, det, qq
    cdef int i, j, k, m, attempt
    cdef bint ok

    # y = x^T x and the symplectic residual x^T J4 x - J4
    xmax = 0.0
    for i in range(4):
        for j in range(4):
            if fabs(x[i, j]) > xmax:
                xmax = fabs(x[i, j])
            acc = 0.0
            for k in range(4):
                acc += x[k, i] * x[k, j]
            y[i][j] = acc
    # symplectic residual in two steps: t1 = J4 @ x, then x^T @ t1 - J4
    for i in range(4):
        for j in range(4):
            acc = 0.0
            for k in range(4):
                acc += J4C[i, k] * x[k, j]
            t1[i][j] = acc
    resid = 0.0
    for i in range(4):
        for j in range(4):
            acc = -J4C[i, j]
            for k in range(4):
                acc += x[k, i] * t1[k][j]
            if fabs(acc) > resid:
                resid = fabs(acc)
    if resid > tol * (1.0 + xmax * xmax):
        return 2

    # Gram coefficients: quarter Frobenius inner products with the basis
    for i in range(4):
        for j in range(4):
            acc = 0.0
            for k in range(4):
                for m in range(4):
                    acc += BASIS[i, j, k, m] * y[k][m]
            coef[i][j] = 0.25 * acc
    b = coef[0][0]
    if b <= 0.0:
        return 3
    for i in range(3):
        c[i] = coef[i + 1][1]
        d[i] = coef[i + 1][2]
        e[i] = coef[i + 1][3]
    dd = d[0] * d[0] + d[1] * d[1] + d[2] * d[2]
    cc = c[0] * c[0] + c[1] * c[1] + c[2] * c[2]
    ee = e[0] * e[0] + e[1] * e[1] + e[2] * e[2]
    ce = c[0] * e[0] + c[1] * e[1] + c[2] * e[2]

    if sqrt(dd) <= TAU_D * (1.0 + b):
        a = sqrt(0.5 * (b + 1.0))
        for i in range(3):
            q[i] = 0.0
            p[i] = c[i] / (2.0 * a)
            r[i] = e[i] / (2.0 * a)
    else:
        half_sum = 0.5 * (b + 1.0)
        disc = 0.25 * (b + 1.0) * (b + 1.0) - 0.25 * dd
        guard = 1e-12 * (half_sum * half_sum if half_sum * half_sum > 1.0 else 1.0)
        if disc < -guard:
            return 3
        if disc < 0.0:
            disc = 0.0
        root_hi = 0.25 * (b + 1.0) + 0.5 * sqrt(disc)
        root_lo = (dd / 16.0) / root_hi if root_hi > 0.0 else 0.0
        ok = False
        for attempt in range(2):
            root = root_hi if attempt == 0 else root_lo
            if root <= 0.0:
                continue
            a = sqrt(root)
            for i in range(3):
                q[i] = d[i] / (4.0 * a)
            qq = q[0] * q[0] + q[1] * q[1] + q[2] * q[2]
            gap = a * a - qq
            if fabs(gap) <= TAU_GAP * (1.0 + b):
                return 3
            pp = 0.5 * (0.5 * (b - 1.0) + (cc - ee) / (4.0 * gap))
            rr = 0.5 * (0.5 * (b - 1.0) - (cc - ee) / (4.0 * gap))
            pr = ce / (4.0 * gap)
            alpha = 2.0 * a + 2.0 * rr / a
            beta = -2.0 * pr / a
            gamma = 2.0 * a + 2.0 * pp / a
            det = alpha * gamma - beta * beta
            if det <= 0.0:
                return 3
            for i in range(3):
                p[i] = (gamma * c[i] - beta * e[i]) / det
                r[i] = (alpha * e[i] - beta * c[i]) / det
            # positive definiteness certificate: a > 0, 2a^2 - 2 q.q + 1 > 0
            if a > 0.0 and 2.0 * a * a - 2.0 * qq + 1.0 > 0.0:
                ok = True
                break
        if not ok:
            return 3

    # H = a B[0,0] + sum_m p[m] B[m+1,1] + q[m] B[m+1,2] + r[m] B[m+1,3]
    for i in range(4):
        for j in range(4):
            acc = a * BASIS[0, 0, i, j]
            for m in range(3):
                acc += p[m] * BASIS[m + 1, 1, i, j]
                acc += q[m] * BASIS[m + 1, 2, i, j]
                acc += r[m] * BASIS[m + 1, 3, i, j]
            h_out[i, j] = acc

    # block-transposition inverse of H
    for i in range(2):
        for j in range(2):
            hinv[i][j] = h_out[2 + j, 2 + i]
            hinv[i][2 + j] = -h_out[j, 2 + i]
            hinv[2 + i][j] = -h_out[2 + j, i]
            hinv[2 + i][2 + j] = h_out[j, i]
    for i in range(4):
        for j in range(4):
            acc = 0.0
            for k in range(4):
                acc += x[i, k] * hinv[k][j]
            u_out[i, j] = acc
    return 0


NAME = "compiled"


def polar_batch(xs, double tol=1e-9):
    """Polar factors (U, H) for a stack of symplectic matrices, shape (n, 4, 4)."""
    arr = np.ascontiguousarray(xs, dtype=np.float64)
    if arr.ndim != 3 or arr.shape[1] != 4 or arr.shape[2] != 4:
        raise ValueError(f"expected shape (n, 4, 4), got {arr.shape}")
    cdef Py_ssize_t n = arr.shape[0]
    us = np.empty_like(arr)
    hs = np.empty_like(arr)
    cdef double[:, :, ::1] xv = arr
    cdef double[:, :, ::1] uv = us
    cdef double[:, :, ::1] hv = hs
    cdef Py_ssize_t i
    cdef int status
    for i in range(n):
        status = _polar_one(xv[i], uv[i], hv[i], tol)
        if status == 2:
            raise NotSymplecticError(f"matrix {i} is not symplectic")
        if status == 3:
            raise SingularGuardError(f"numeric guard tripped on matrix {i}")
    return us, hs
