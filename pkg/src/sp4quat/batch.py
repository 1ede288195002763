"""Batch polar decomposition with backend selection at import time.

The compiled Cython kernel is used when its extension module is importable;
otherwise the pure-Python fallback runs the same arithmetic. Both backends
are exposed so the benchmark (and the equivalence tests) can compare them.
"""

from __future__ import annotations

from . import _batch_py

try:
    from . import _batch_cy
except ImportError:
    _batch_cy = None

_impl = _batch_cy if _batch_cy is not None else _batch_py

#: Name of the backend selected at import: "compiled" or "python".
BACKEND = _impl.NAME


def polar_batch(xs, tol: float = 1e-9):
    """Polar factors (U, H) for a stack of symplectic matrices, shape (n, 4, 4)."""
    return _impl.polar_batch(xs, tol)


def backends() -> dict:
    """Mapping of available backend names to their polar_batch callables."""
    out = {"python": _batch_py.polar_batch}
    if _batch_cy is not None:
        out["compiled"] = _batch_cy.polar_batch
    return out
