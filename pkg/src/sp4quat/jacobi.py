"""Cyclic Jacobi eigendecomposition for small symmetric matrices.

Deliberately free of any library eigensolver so it can serve as the
independent spectral route against which the closed-form square root is
checked, and as the verified fallback inside the Euler-Cartan factorization.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import NotPositiveDefiniteError


def jacobi_eigh(m: np.ndarray, tol: float = 1e-13, max_sweeps: int = 60):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (eigenvalues, V) with m = V @ diag(eigenvalues) @ V.T, iterating
    until the off-diagonal Frobenius mass is below tol relative to the full
    Frobenius norm. Eigenvalues are in diagonal (not sorted) order.
    """
    a = np.array(m, dtype=float, copy=True)
    n = a.shape[0]
    v = np.eye(n)
    fro = math.sqrt(float(np.sum(a * a)))
    threshold = tol * max(fro, 1.0)
    for _ in range(max_sweeps):
        off = math.sqrt(2.0 * sum(a[p, q] ** 2 for p in range(n) for q in range(p + 1, n)))
        if off <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                app, aqq = a[p, p], a[q, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = a[q, p] = 0.0
                for k in range(n):
                    if k != p and k != q:
                        akp, akq = a[k, p], a[k, q]
                        a[k, p] = a[p, k] = c * akp - s * akq
                        a[k, q] = a[q, k] = s * akp + c * akq
                for k in range(n):
                    vkp, vkq = v[k, p], v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return np.diag(a).copy(), v


def jacobi_sqrt(y: np.ndarray, tol: float = 1e-13) -> np.ndarray:
    """Unique positive definite square root via the Jacobi route.

    Diagonalize y = V D V^T, then return V D^(1/2) V^T. Raises
    NotPositiveDefiniteError when any eigenvalue is not strictly positive.
    """
    eigvals, v = jacobi_eigh(y, tol)
    if np.min(eigvals) <= 0.0:
        raise NotPositiveDefiniteError(
            f"matrix has a non-positive eigenvalue: {np.min(eigvals):.3e}")
    return (v * np.sqrt(eigvals)) @ v.T
