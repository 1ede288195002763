"""Symplectic predicates, cheap inverses, and determinant-free characteristic polynomials.

Membership tests are residual checks against the defining relations, scaled
by input magnitude. The characteristic polynomial of a symplectic matrix is
palindromic, so it is pinned down by two scalars (c3, c2); for symmetric
symplectic matrices these are closed forms in the tensor coefficients, and
for a general symplectic matrix they are closed forms in the quaternion-pair
parameters. A Faddeev-LeVerrier recursion serves as the independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidFormError, NotSymplecticError
from .hh_rep import J4, OrthoSymplecticQuat, TensorRep, matrix_of_rep, rep_of_matrix
from .quat import ZERO3, cross, dot

#: Default membership tolerance; spectral-free arithmetic accumulates only a
#: handful of rounding steps, so 1e-9 scaled by input magnitude is generous.
DEFAULT_TOL = 1e-9

#: Below this (scaled) trace threshold the reduced two-condition symmetric
#: symplectic test is not valid and the full condition set is checked.
TRACE_ZERO_TOL = 1e-10


def _maxabs(m: np.ndarray) -> float:
    return float(np.max(np.abs(m)))


def is_symplectic(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True iff m^T J4 m = J4 within tol scaled by 1 + max|m|^2."""
    residual = _maxabs(m.T @ J4 @ m - J4)
    return residual <= tol * (1.0 + _maxabs(m) ** 2)


def symplectic_residual(m: np.ndarray) -> float:
    """Scaled residual used by is_symplectic, exposed for reporting."""
    return _maxabs(m.T @ J4 @ m - J4) / (1.0 + _maxabs(m) ** 2)


def is_hamiltonian(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True iff m^T J4 + J4 m = 0 within tol scaled by 1 + max|m|."""
    residual = _maxabs(m.T @ J4 + J4 @ m)
    return residual <= tol * (1.0 + _maxabs(m))


def hamiltonian_residual(m: np.ndarray) -> float:
    return _maxabs(m.T @ J4 + J4 @ m) / (1.0 + _maxabs(m))


def block_transpose_inverse(m: np.ndarray) -> np.ndarray:
    """-J4 m^T J4 assembled by block transposition, no arithmetic inversion.

    For m = [[A, B], [C, D]] this is [[D^T, -B^T], [-C^T, A^T]]; it is the
    inverse exactly when m is symplectic.
    """
    out = np.empty((4, 4))
    out[:2, :2] = m[2:, 2:].T
    out[:2, 2:] = -m[:2, 2:].T
    out[2:, :2] = -m[2:, :2].T
    out[2:, 2:] = m[:2, :2].T
    return out


def symplectic_inverse(m: np.ndarray, tol: float = DEFAULT_TOL, *, check: bool = True) -> np.ndarray:
    """Inverse of a symplectic matrix via block transposition.

    Raises NotSymplecticError when the membership check fails (skippable for
    matrices already known to be symplectic by construction).
    """
    if check and not is_symplectic(m, tol):
        raise NotSymplecticError("symplectic_inverse requires a symplectic matrix")
    return block_transpose_inverse(m)


@dataclass(frozen=True, eq=False)
class SymSymplecticRep:
    """Tensor coefficients (a, p, q, r) of a symmetric symplectic matrix.

    Constraints: a*q = r x p, a^2 - p.p + q.q - r.r = 1, and q orthogonal to
    both p and r. a is a quarter of the trace.
    """

    a: float
    p: np.ndarray = field(default_factory=lambda: ZERO3.copy())
    q: np.ndarray = field(default_factory=lambda: ZERO3.copy())
    r: np.ndarray = field(default_factory=lambda: ZERO3.copy())

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        for name in ("p", "q", "r"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))

    def to_matrix(self) -> np.ndarray:
        return matrix_of_rep(TensorRep(a=self.a, p=self.p, q=self.q, r=self.r))

    def scale_norm(self) -> float:
        return math.sqrt(self.a ** 2 + dot(self.p, self.p)
                         + dot(self.q, self.q) + dot(self.r, self.r))

    def __neg__(self) -> "SymSymplecticRep":
        return SymSymplecticRep(-self.a, -self.p, -self.q, -self.r)


def sym_rep_of_matrix(m: np.ndarray) -> SymSymplecticRep:
    """Symmetric-part coefficients of m as a SymSymplecticRep (s, t dropped)."""
    rep = rep_of_matrix(m)
    return SymSymplecticRep(a=rep.a, p=rep.p, q=rep.q, r=rep.r)


def check_sym_symplectic(rep: SymSymplecticRep, tol: float = DEFAULT_TOL) -> bool:
    """Symplectic membership test on symmetric-part coefficients.

    When |a| is above the scaled trace-zero threshold, the two conditions
    a*q = r x p and a^2 - p.p + q.q - r.r = 1 are necessary and sufficient.
    Near a = 0 that reduction is not available and the orthogonality
    conditions p.q = r.q = 0 are required as well.
    """
    a, p, q, r = rep.a, rep.p, rep.q, rep.r
    scale = 1.0 + rep.scale_norm() ** 2
    ok = (abs(a * q[0] - (r[1] * p[2] - r[2] * p[1])) <= tol * scale
          and abs(a * q[1] - (r[2] * p[0] - r[0] * p[2])) <= tol * scale
          and abs(a * q[2] - (r[0] * p[1] - r[1] * p[0])) <= tol * scale
          and abs(a * a - dot(p, p) + dot(q, q) - dot(r, r) - 1.0) <= tol * scale)
    if not ok:
        return False
    if abs(a) <= TRACE_ZERO_TOL * (1.0 + rep.scale_norm()):
        ok = (abs(dot(p, q)) <= tol * scale and abs(dot(r, q)) <= tol * scale)
    return ok


def is_pd_symplectic(rep: SymSymplecticRep) -> bool:
    """Positive definiteness certificate for a symmetric symplectic matrix.

    Strict inequalities with no tolerance slack: a > 0 and
    2a^2 - 2 q.q + 1 > 0. Boundary cases within rounding are reported False;
    use pd_certificate for the margins and a boundary flag.
    """
    return rep.a > 0.0 and 2.0 * rep.a ** 2 - 2.0 * dot(rep.q, rep.q) + 1.0 > 0.0


@dataclass(frozen=True)
class PdCertificate:
    positive_definite: bool
    trace_margin: float        # a
    quadratic_margin: float    # 2a^2 - 2 q.q + 1
    boundary: bool             # either margin within the rounding band


def pd_certificate(rep: SymSymplecticRep, band: float = 1e-10) -> PdCertificate:
    """is_pd_symplectic with margins and a boundary diagnostic flag."""
    qmargin = 2.0 * rep.a ** 2 - 2.0 * dot(rep.q, rep.q) + 1.0
    scale = 1.0 + rep.scale_norm() ** 2
    boundary = abs(rep.a) <= band * scale or abs(qmargin) <= band * scale
    return PdCertificate(
        positive_definite=is_pd_symplectic(rep),
        trace_margin=rep.a,
        quadratic_margin=qmargin,
        boundary=boundary,
    )


@dataclass(frozen=True)
class CharPoly:
    """Monic palindromic quartic x^4 + c3 x^3 + c2 x^2 + c3 x + 1."""

    c3: float
    c2: float

    def coefficients(self) -> tuple[float, float, float, float, float]:
        """Coefficients in descending degree."""
        return (1.0, self.c3, self.c2, self.c3, 1.0)

    def __call__(self, x: float) -> float:
        return ((((x + self.c3) * x + self.c2) * x) + self.c3) * x + 1.0


def charpoly_sym_symplectic(rep: SymSymplecticRep) -> CharPoly:
    """Characteristic polynomial of a symmetric symplectic matrix.

    c3 = -4a and c2 = 4a^2 - 4 q.q + 2; no matrix product is formed.
    """
    return CharPoly(c3=-4.0 * rep.a,
                    c2=4.0 * rep.a ** 2 - 4.0 * dot(rep.q, rep.q) + 2.0)


def product_tensor_rep(ortho: OrthoSymplecticQuat, sym: SymSymplecticRep) -> TensorRep:
    """Tensor coefficients of the product matrix(ortho) @ matrix(sym), in closed form.

    Expanding [u (x) (v0 + v2 j)] [a 1(x)1 + p(x)i + q(x)j + r(x)k] over the
    basis gives the six coefficients below; w denotes the imaginary part of u.
    """
    u, v0, v2 = ortho.u, ortho.v0, ortho.v2
    a, p, q, r = sym.a, sym.p, sym.q, sym.r
    u0 = u.w
    w = u.vector
    alpha = a * u0 * v0 + dot(w, q) * v2
    beta = u0 * v0 * p + v0 * cross(w, p) + u0 * v2 * r + v2 * cross(w, r)
    gamma = u0 * v0 * q + v0 * cross(w, q) + a * v2 * w
    delta = -u0 * v2 * p - v2 * cross(w, p) + u0 * v0 * r + v0 * cross(w, r)
    s = a * v0 * w - u0 * v2 * q - v2 * cross(w, q)
    t = np.array([
        -(v0 * dot(w, p) + v2 * dot(w, r)),
        a * u0 * v2 - v0 * dot(w, q),
        v2 * dot(w, p) - v0 * dot(w, r),
    ])
    return TensorRep(a=alpha, p=beta, q=gamma, r=delta, s=s, t=t)


def validate_form(ortho: OrthoSymplecticQuat, sym: SymSymplecticRep,
                  tol: float = DEFAULT_TOL) -> None:
    """Raise InvalidFormError unless the quaternion-form constraints hold."""
    if abs(ortho.u.norm2() - 1.0) > tol * (1.0 + ortho.u.norm2()):
        raise InvalidFormError("u is not a unit quaternion")
    if abs(ortho.v0 ** 2 + ortho.v2 ** 2 - 1.0) > tol:
        raise InvalidFormError("(v0, v2) is not on the unit circle")
    if not check_sym_symplectic(sym, tol):
        raise InvalidFormError("symmetric part violates the symplectic constraints")


def charpoly_symplectic(ortho: OrthoSymplecticQuat, sym: SymSymplecticRep,
                        tol: float = DEFAULT_TOL) -> CharPoly:
    """Characteristic polynomial of the symplectic matrix with the given form.

    Works entirely in the parameters (u, v0, v2, a, p, q, r); no matrix or
    trace of a matrix product is computed.
    """
    validate_form(ortho, sym, tol)
    u, v0, v2 = ortho.u, ortho.v0, ortho.v2
    a, p, q, r = sym.a, sym.p, sym.q, sym.r
    u0 = u.w
    w = u.vector
    wq = dot(w, q)
    alpha = a * u0 * v0 + wq * v2
    c3 = -4.0 * alpha
    c2 = (8.0 * a ** 2 * u0 ** 2 * v0 ** 2
          + 8.0 * v2 ** 2 * wq ** 2
          + 2.0 * (v2 ** 2 - v0 ** 2)
          * (dot(q, q) + (u0 ** 2 - dot(w, w)) * a ** 2 - 2.0 * wq ** 2)
          - 2.0 * (dot(p, p) + dot(r, r))
          + 4.0 * (dot(w, p) ** 2 + dot(w, r) ** 2))
    return CharPoly(c3=c3, c2=c2)


def charpoly_oracle(m: np.ndarray) -> np.ndarray:
    """Characteristic polynomial coefficients by the Faddeev-LeVerrier recursion.

    Returns the five coefficients in descending degree, with no palindromic
    assumption; serves as the independent check on the closed forms.
    """
    n = m.shape[0]
    coeffs = np.empty(n + 1)
    coeffs[0] = 1.0
    mk = np.eye(n)
    for k in range(1, n + 1):
        mk = m @ mk
        ck = -np.trace(mk) / k
        coeffs[k] = ck
        mk = mk + ck * np.eye(n)
    return coeffs
