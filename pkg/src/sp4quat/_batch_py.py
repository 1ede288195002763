"""Pure-Python batch polar kernel: the fallback when the compiled core is absent."""

from __future__ import annotations

import numpy as np

from .errors import NotSymplecticError
from .polar import _polar_uh
from .symplectic import DEFAULT_TOL, is_symplectic

NAME = "python"


def polar_batch(xs: np.ndarray, tol: float = DEFAULT_TOL):
    """Polar factors (U, H) for a stack of symplectic matrices, shape (n, 4, 4)."""
    xs = np.ascontiguousarray(xs, dtype=float)
    if xs.ndim != 3 or xs.shape[1:] != (4, 4):
        raise ValueError(f"expected shape (n, 4, 4), got {xs.shape}")
    n = xs.shape[0]
    us = np.empty_like(xs)
    hs = np.empty_like(xs)
    for i in range(n):
        x = xs[i]
        if not is_symplectic(x, tol):
            raise NotSymplecticError(f"matrix {i} is not symplectic")
        us[i], hs[i], _, _ = _polar_uh(x, tol)
    return us, hs
