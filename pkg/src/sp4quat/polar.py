"""Spectral-free polar decomposition of 4x4 real symplectic matrices.

The positive definite factor H of X = U H is the unique positive definite
square root of the Gram matrix X^T X. Writing the Gram matrix in tensor
coefficients b 1(x)1 + c(x)i + d(x)j + e(x)k, the coefficients (a, p, q, r)
of H come out of one scalar quadratic and one symmetric 2x2 linear solve:

    a^4 - (b+1)/2 a^2 + d.d/16 = 0        (quadratic in a^2)
    q = d / (4a)
    c = alpha p + beta r,  e = beta p + gamma r

with alpha = 2a + 2 r.r/a, beta = -2 p.r/a, gamma = 2a + 2 p.p/a, where
p.p, r.r, p.r are themselves scalar closed forms in (b, c, d, e). No
eigenvalue or singular value computation is involved. The orthogonal factor
U = X H^(-1) costs only a block transposition and one matrix product, and its
quaternion pair (u, v0 + v2 j) falls out of a rank-one factorization of its
tensor coefficient matrix.

Both roots of the quadratic give symmetric symplectic square roots with
positive trace; the larger one is the positive definite factor. Composing H
with +/-1(x)1 and +/-(q/|q|)(x)j enumerates all nonzero-trace symmetric
symplectic square roots of the Gram matrix: four when d != 0, two when d = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    NegativeDiscriminantError,
    NotDecomposableError,
    NotPositiveDefiniteError,
    NotSymplecticError,
    NotSymplecticOrthogonalError,
    Sp4QuatError,
    SingularGuardError,
)
from .hh_rep import (
    J4,
    OrthoSymplecticQuat,
    coeff_matrix,
    matrix_of_tensor,
    rep_of_matrix,
)
from .jacobi import jacobi_eigh
from .quat import Quaternion, ZERO3, cross, dot, norm3
from .symplectic import (
    DEFAULT_TOL,
    SymSymplecticRep,
    block_transpose_inverse,
    check_sym_symplectic,
    is_pd_symplectic,
    is_symplectic,
    sym_rep_of_matrix,
    validate_form,
)

#: Relative threshold under which the d coefficient of the Gram matrix is
#: treated as zero. The two square-root branches agree in the limit |d| -> 0
#: (smaller quadratic root -> 0, larger -> (b+1)/2), so outputs differ by
#: less than the working tolerance at the crossover.
TAU_D = 1e-8

#: Guard on |a^2 - q.q| (provably nonzero for valid input).
TAU_GAP = 1e-12

#: Relative spectral gap under which the Euler-Cartan factors are flagged as
#: degenerate (the diagonalizing frame is not unique).
CARTAN_DEGENERACY_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class GramRep:
    """Tensor coefficients (b, c, d, e) of a Gram matrix X^T X.

    b is a quarter of the trace (positive), c, d, e are pure quaternions with
    b^2 - c.c + d.d - e.e = 1 and d orthogonal to c and e.
    """

    b: float
    c: np.ndarray = field(default_factory=lambda: ZERO3.copy())
    d: np.ndarray = field(default_factory=lambda: ZERO3.copy())
    e: np.ndarray = field(default_factory=lambda: ZERO3.copy())

    def __post_init__(self):
        object.__setattr__(self, "b", float(self.b))
        for name in ("c", "d", "e"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))


def gram_rep_of(y: np.ndarray, tol: float = DEFAULT_TOL) -> GramRep:
    """Extract and validate the Gram-representation coefficients of y.

    Raises NotPositiveDefiniteError when y is not symmetric, has b <= 0, or
    violates the symmetric-symplectic coefficient invariants.
    """
    rep = rep_of_matrix(y)
    scale = 1.0 + float(np.max(np.abs(y)))
    if max(norm3(rep.s), norm3(rep.t)) > tol * scale:
        raise NotPositiveDefiniteError("Gram input is not symmetric")
    b, c, d, e = rep.a, rep.p, rep.q, rep.r
    if b <= 0.0:
        raise NotPositiveDefiniteError(f"Gram trace quarter must be positive, got {b:.3e}")
    qscale = 1.0 + b * b + dot(c, c) + dot(d, d) + dot(e, e)
    if abs(b * b - dot(c, c) + dot(d, d) - dot(e, e) - 1.0) > tol * qscale:
        raise NotPositiveDefiniteError("Gram coefficients violate the symplectic constraint")
    if abs(dot(c, d)) > tol * qscale or abs(dot(e, d)) > tol * qscale:
        raise NotPositiveDefiniteError("Gram coefficients violate d-orthogonality")
    return GramRep(b=b, c=c, d=d, e=e)


def solve_a_quadratic(b: float, dd: float) -> tuple[float, float]:
    """Both roots of x^2 - (b+1)/2 x + dd/16 = 0, descending.

    The discriminant is provably positive for valid inputs; within a scaled
    band of zero it is clamped, beyond that NegativeDiscriminantError is
    raised. The larger root is computed by the sign-matched quadratic
    formula and the smaller recovered from the product of roots, which avoids
    cancellation when dd is much smaller than (b+1)^2.
    """
    if b <= 0.0:
        raise NotPositiveDefiniteError(f"quadratic requires b > 0, got {b:.3e}")
    if dd < 0.0:
        raise ValueError(f"dd must be non-negative, got {dd:.3e}")
    half_sum = 0.5 * (b + 1.0)
    disc = 0.25 * (b + 1.0) ** 2 - 0.25 * dd
    guard = 1e-12 * max(1.0, half_sum * half_sum)
    if disc < -guard:
        raise NegativeDiscriminantError(
            f"discriminant {disc:.3e} negative beyond guard {guard:.3e}")
    if disc < 0.0:
        disc = 0.0
    root_hi = 0.25 * (b + 1.0) + 0.5 * math.sqrt(disc)
    root_lo = (dd / 16.0) / root_hi if root_hi > 0.0 else 0.0
    return root_hi, root_lo


def recover_pr(a: float, q: np.ndarray, gram: GramRep) -> tuple[np.ndarray, np.ndarray]:
    """Recover the p and r coefficients of a square root with given a and q.

    Scalar reductions give p.p - r.r, p.p + r.r and p.r in terms of the Gram
    coefficients, after which c = alpha p + beta r, e = beta p + gamma r is a
    symmetric 2x2 system with determinant at least 4a^2.

    Raises SingularGuardError when |a^2 - q.q| is inside its guard band,
    which cannot occur for exact symplectic data.
    """
    if a <= 0.0:
        raise SingularGuardError(f"recover_pr requires a > 0, got {a:.3e}")
    b, c, e = gram.b, gram.c, gram.e
    gap = a * a - dot(q, q)
    if abs(gap) <= TAU_GAP * (1.0 + b):
        raise SingularGuardError(f"a^2 - q.q = {gap:.3e} inside guard band")
    cc = dot(c, c)
    ee = dot(e, e)
    ce = dot(c, e)
    pp_minus_rr = (cc - ee) / (4.0 * gap)
    pp_plus_rr = 0.5 * (b - 1.0)
    pp = 0.5 * (pp_plus_rr + pp_minus_rr)
    rr = 0.5 * (pp_plus_rr - pp_minus_rr)
    pr = ce / (4.0 * gap)
    alpha = 2.0 * a + 2.0 * rr / a
    beta = -2.0 * pr / a
    gamma = 2.0 * a + 2.0 * pp / a
    det = alpha * gamma - beta * beta
    if det <= 0.0:
        raise SingularGuardError(f"linear system determinant {det:.3e} not positive")
    p = (gamma * c - beta * e) / det
    r = (alpha * e - beta * c) / det
    return p, r


@dataclass(frozen=True)
class SqrtInfo:
    """Diagnostics of the square-root branch decision."""

    b: float
    d_norm: float
    branch: str            # "zero_j", "larger" or "smaller"
    root_hi: float
    root_lo: float
    chosen_root: float


def _rep_from_root(root: float, gram: GramRep) -> SymSymplecticRep:
    a = math.sqrt(root)
    q = gram.d / (4.0 * a)
    p, r = recover_pr(a, q, gram)
    return SymSymplecticRep(a=a, p=p, q=q, r=r)


def _sqrt_from_gram(gram: GramRep, tol: float = DEFAULT_TOL) -> tuple[SymSymplecticRep, SqrtInfo]:
    d_norm = norm3(gram.d)
    if d_norm <= TAU_D * (1.0 + gram.b):
        a = math.sqrt(0.5 * (gram.b + 1.0))
        rep = SymSymplecticRep(a=a, p=gram.c / (2.0 * a), q=ZERO3.copy(),
                               r=gram.e / (2.0 * a))
        info = SqrtInfo(b=gram.b, d_norm=d_norm, branch="zero_j",
                        root_hi=0.5 * (gram.b + 1.0), root_lo=0.0,
                        chosen_root=0.5 * (gram.b + 1.0))
        return rep, info
    root_hi, root_lo = solve_a_quadratic(gram.b, dot(gram.d, gram.d))
    for root, branch in ((root_hi, "larger"), (root_lo, "smaller")):
        if root <= 0.0:
            continue
        rep = _rep_from_root(root, gram)
        if is_pd_symplectic(rep):
            info = SqrtInfo(b=gram.b, d_norm=d_norm, branch=branch,
                            root_hi=root_hi, root_lo=root_lo, chosen_root=root)
            return rep, info
    raise NotPositiveDefiniteError("no quadratic root yields a positive definite factor")


def sqrt_pd_symplectic(y: np.ndarray, tol: float = DEFAULT_TOL) -> SymSymplecticRep:
    """The unique positive definite symplectic H with H^2 = y, as coefficients.

    y must be positive definite and symplectic to tolerance (a Gram matrix of
    a symplectic X). The d = 0 branch takes a = sqrt((b+1)/2), q = 0,
    p = c/(2a), r = e/(2a); otherwise a is the positive square root of the
    larger quadratic root, q = d/(4a), and p, r come from recover_pr. If the
    larger root fails the positive definiteness certificate within rounding,
    the smaller root is used instead.
    """
    rep, _ = _sqrt_from_gram(gram_rep_of(np.asarray(y, dtype=float), tol), tol)
    return rep


def sqrt_root_candidates(y: np.ndarray, tol: float = DEFAULT_TOL) -> tuple[SymSymplecticRep, SymSymplecticRep]:
    """The two positive-trace square-root candidates (larger root, smaller root).

    Only defined for Gram matrices with d != 0, where both quadratic roots
    are strictly positive; exactly one candidate is positive definite.
    """
    gram = gram_rep_of(np.asarray(y, dtype=float), tol)
    if norm3(gram.d) <= TAU_D * (1.0 + gram.b):
        raise ValueError("root candidates require a Gram matrix with d != 0")
    root_hi, root_lo = solve_a_quadratic(gram.b, dot(gram.d, gram.d))
    return _rep_from_root(root_hi, gram), _rep_from_root(root_lo, gram)


def canonicalize_pair(u: Quaternion, v0: float, v2: float) -> tuple[Quaternion, float, float]:
    """Fix the sign ambiguity (u, v) ~ (-u, -v).

    The first component of u larger than 1e-12 in magnitude (scanning
    w, x, y, z) is made positive; u is assumed near unit norm.
    """
    for comp in (u.w, u.x, u.y, u.z):
        if abs(comp) > 1e-12:
            if comp < 0.0:
                return -u, -v0, -v2
            break
    return u, v0, v2


def so4_to_quaternion_pair(m: np.ndarray, tol: float = DEFAULT_TOL) -> OrthoSymplecticQuat:
    """Extract the quaternion pair of an orthogonal symplectic matrix.

    The tensor coefficient matrix of a decomposable matrix u (x) v is the
    outer product of the component vectors of u and v, so a rank-one
    factorization recovers the pair: take the column through the
    largest-magnitude entry as u, project for v, and verify the residual.

    Raises NotDecomposableError when the rank-one residual is above
    tolerance (m is not special orthogonal) and NotSymplecticOrthogonalError
    when v has components outside span{1, j}.
    """
    c = coeff_matrix(np.asarray(m, dtype=float))
    cmax = float(np.max(np.abs(c)))
    if cmax == 0.0:
        raise NotDecomposableError("zero matrix has no quaternion pair")
    j0 = int(np.argmax(np.abs(c))) % 4
    col = c[:, j0]
    u_arr = col / math.sqrt(float(col @ col))
    v_arr = c.T @ u_arr
    residual = float(np.max(np.abs(c - np.outer(u_arr, v_arr))))
    if residual > tol * (1.0 + cmax):
        raise NotDecomposableError(
            f"rank-one residual {residual:.3e} above tolerance; not in SO(4)")
    v_norm = math.sqrt(float(v_arr @ v_arr))
    if abs(v_norm - 1.0) > tol * (1.0 + cmax):
        raise NotDecomposableError(
            f"component norms {v_norm:.6f} != 1; matrix is not orthogonal")
    if max(abs(v_arr[1]), abs(v_arr[3])) > tol * (1.0 + cmax):
        raise NotSymplecticOrthogonalError(
            "right factor has i or k components; matrix is not symplectic")
    u = Quaternion.from_array(u_arr).normalize()
    u, v0, v2 = canonicalize_pair(u, v_arr[0] / v_norm, v_arr[2] / v_norm)
    return OrthoSymplecticQuat(u=u, v0=v0, v2=v2)


@dataclass(frozen=True, eq=False)
class PolarFactors:
    """Polar decomposition X = U @ H with quaternion parameters of both factors."""

    ortho: OrthoSymplecticQuat
    sym: SymSymplecticRep
    U: np.ndarray
    H: np.ndarray
    info: SqrtInfo


def _polar_uh(x: np.ndarray, tol: float = DEFAULT_TOL):
    """Factor matrices (U, H) plus coefficients; the scalar hot path."""
    y = x.T @ x
    gram = gram_rep_of(y, tol)
    sym, info = _sqrt_from_gram(gram, tol)
    h = sym.to_matrix()
    u = x @ block_transpose_inverse(h)
    return u, h, sym, info


def polar_decompose(x: np.ndarray, tol: float = DEFAULT_TOL) -> PolarFactors:
    """Polar decomposition of a symplectic matrix, entirely in closed form.

    H is assembled from sqrt_pd_symplectic of the Gram matrix, U = X H^(-1)
    uses the block-transposition inverse (no arithmetic inversion), and the
    quaternion pair of U comes from so4_to_quaternion_pair.
    """
    x = np.asarray(x, dtype=float)
    if not is_symplectic(x, tol):
        raise NotSymplecticError("polar_decompose requires a symplectic matrix")
    u, h, sym, info = _polar_uh(x, tol)
    ortho = so4_to_quaternion_pair(u, tol)
    return PolarFactors(ortho=ortho, sym=sym, U=u, H=h, info=info)


def full_quaternion_form(x: np.ndarray, tol: float = DEFAULT_TOL) -> tuple[OrthoSymplecticQuat, SymSymplecticRep]:
    """Quaternion parameters (u, v0, v2; a, p, q, r) of a symplectic matrix.

    X = [u (x) (v0 + v2 j)] [a 1(x)1 + p(x)i + q(x)j + r(x)k]; the defining
    constraints are re-verified on the result before returning.
    """
    factors = polar_decompose(x, tol)
    validate_form(factors.ortho, factors.sym, tol)
    if not is_pd_symplectic(factors.sym):
        raise NotPositiveDefiniteError("symmetric factor failed its certificate")
    return factors.ortho, factors.sym


def _verify_sqrt_candidate(rep: SymSymplecticRep, y: np.ndarray, tol: float) -> None:
    m = rep.to_matrix()
    scale = 1.0 + float(np.max(np.abs(y)))
    if float(np.max(np.abs(m @ m - y))) > tol * scale:
        raise Sp4QuatError("square-root candidate does not square to the Gram matrix")
    if not check_sym_symplectic(rep, tol):
        raise Sp4QuatError("square-root candidate is not symplectic")


def enumerate_sym_symplectic_sqrts(y: np.ndarray, tol: float = DEFAULT_TOL) -> list[SymSymplecticRep]:
    """All nonzero-trace symmetric symplectic square roots of a Gram matrix.

    When the d coefficient of y is nonzero there are exactly four (the
    positive definite H, H composed with (q/|q|) (x) j, and their negatives),
    two of which have positive trace. When d = 0 there are exactly two, +H
    and -H. Every returned candidate is verified to be symmetric, symplectic
    and to square to y.
    """
    y = np.asarray(y, dtype=float)
    gram = gram_rep_of(y, tol)
    rep, _ = _sqrt_from_gram(gram, tol)
    positive = [rep]
    if norm3(gram.d) > TAU_D * (1.0 + gram.b):
        q_unit = rep.q / norm3(rep.q)
        twist = matrix_of_tensor(Quaternion.from_vector(q_unit), Quaternion(0, 0, 1, 0))
        h2 = rep.to_matrix() @ twist
        skew = float(np.max(np.abs(h2 - h2.T)))
        if skew > tol * (1.0 + float(np.max(np.abs(h2)))):
            raise Sp4QuatError("twisted candidate is not symmetric")
        positive.append(sym_rep_of_matrix(h2))
    out = positive + [-cand for cand in positive]
    for cand in out:
        _verify_sqrt_candidate(cand, y, tol)
    return out


# ---------------------------------------------------------------------------
# Euler-Cartan factorization
# ---------------------------------------------------------------------------

def _rotation_from_quaternion(w: Quaternion) -> np.ndarray:
    """3x3 matrix of x -> w x conj(w) on pure quaternions, w unit."""
    a, b, c, d = w.w, w.x, w.y, w.z
    return np.array([
        [1 - 2 * (c * c + d * d), 2 * (b * c - a * d), 2 * (b * d + a * c)],
        [2 * (b * c + a * d), 1 - 2 * (b * b + d * d), 2 * (c * d - a * b)],
        [2 * (b * d - a * c), 2 * (c * d + a * b), 1 - 2 * (b * b + c * c)],
    ])


def _quaternion_from_rotation(rot: np.ndarray) -> Quaternion:
    """Unit quaternion w with _rotation_from_quaternion(w) = rot (Shepperd)."""
    tr = rot[0, 0] + rot[1, 1] + rot[2, 2]
    if tr > 0.0:
        s = 2.0 * math.sqrt(tr + 1.0)
        w = 0.25 * s
        x = (rot[2, 1] - rot[1, 2]) / s
        y = (rot[0, 2] - rot[2, 0]) / s
        z = (rot[1, 0] - rot[0, 1]) / s
    elif rot[0, 0] >= rot[1, 1] and rot[0, 0] >= rot[2, 2]:
        s = 2.0 * math.sqrt(1.0 + rot[0, 0] - rot[1, 1] - rot[2, 2])
        w = (rot[2, 1] - rot[1, 2]) / s
        x = 0.25 * s
        y = (rot[0, 1] + rot[1, 0]) / s
        z = (rot[0, 2] + rot[2, 0]) / s
    elif rot[1, 1] >= rot[2, 2]:
        s = 2.0 * math.sqrt(1.0 + rot[1, 1] - rot[0, 0] - rot[2, 2])
        w = (rot[0, 2] - rot[2, 0]) / s
        x = (rot[0, 1] + rot[1, 0]) / s
        y = 0.25 * s
        z = (rot[1, 2] + rot[2, 1]) / s
    else:
        s = 2.0 * math.sqrt(1.0 + rot[2, 2] - rot[0, 0] - rot[1, 1])
        w = (rot[1, 0] - rot[0, 1]) / s
        x = (rot[0, 2] + rot[2, 0]) / s
        y = (rot[1, 2] + rot[2, 1]) / s
        z = 0.25 * s
    return Quaternion(w, x, y, z).normalize()


def _unit_or_none(v: np.ndarray, scale: float):
    n = norm3(v)
    if n <= 1e-10 * scale:
        return None
    return v / n


def _orthonormal_frame(f1, f2, f3, scale: float):
    """Right-handed orthonormal rows mapping f1 -> e1, f2 -> e2, f3 -> e3.

    Any of the inputs may be numerically zero, in which case the frame is
    completed; returns None when the available directions are not mutually
    orthogonal to working accuracy.
    """
    units = [_unit_or_none(f1, scale), _unit_or_none(f2, scale), _unit_or_none(f3, scale)]
    present = [i for i, u in enumerate(units) if u is not None]
    for i in present:
        for j in present:
            if i < j and abs(dot(units[i], units[j])) > 1e-8:
                return None
    if len(present) == 3:
        if dot(units[0], cross(units[1], units[2])) < 0.0:
            units[1] = -units[1]
    elif len(present) == 2:
        k = ({0, 1, 2} - set(present)).pop()
        # complete the missing axis so the e1 x e2 = e3 relations hold
        if k == 0:
            units[0] = cross(units[1], units[2])
        elif k == 1:
            units[1] = cross(units[2], units[0])
        else:
            units[2] = cross(units[0], units[1])
    elif len(present) == 1:
        i = present[0]
        u = units[i]
        helper = np.array([1.0, 0.0, 0.0]) if abs(u[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
        second = helper - dot(helper, u) * u
        second = second / norm3(second)
        if i == 0:
            units = [u, second, cross(u, second)]
        elif i == 1:
            units = [cross(second, u), u, second]
        else:
            units = [second, cross(u, second), u]
    else:
        units = [np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0])]
    frame = np.array(units)
    if float(np.max(np.abs(frame @ frame.T - np.eye(3)))) > 1e-8:
        return None
    return frame


def _diag_via_quaternion(sym: SymSymplecticRep):
    """Diagonalizing V = u (x) (v0 + v2 j), symplectic orthogonal by construction.

    The conjugated coefficients are p -> R(cos(phi) p - sin(phi) r),
    r -> R(sin(phi) p + cos(phi) r), q -> R(q), with R the rotation of the
    u-conjugation and phi twice the circle angle of v. Choosing phi as the
    Jacobi angle of the 2x2 Gram matrix [[p.p, p.r], [p.r, r.r]] makes the
    mixed coefficients orthogonal, and R aligns them with the axes, which
    leaves a diagonal matrix.
    """
    p, q, r = sym.p, sym.q, sym.r
    pp, rr, pr = dot(p, p), dot(r, r), dot(p, r)
    scale = 1.0 + math.sqrt(max(pp + rr + dot(q, q), 0.0))
    if abs(pr) <= 1e-30 * scale:
        cphi, sphi = 1.0, 0.0
    else:
        theta = (rr - pp) / (2.0 * pr)
        t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
        cphi = 1.0 / math.sqrt(t * t + 1.0)
        sphi = t * cphi
    p_mix = cphi * p - sphi * r
    r_mix = sphi * p + cphi * r
    frame = _orthonormal_frame(p_mix, q, r_mix, scale)
    if frame is None:
        return None
    w = _quaternion_from_rotation(frame.T)
    v0 = math.sqrt(0.5 * (1.0 + cphi))
    v2 = sphi / (2.0 * v0)
    return matrix_of_tensor(w, Quaternion(v0, 0.0, v2, 0.0))


def _diag_via_jacobi(h: np.ndarray):
    """Fallback diagonalizer: Jacobi eigenvectors paired symplectically.

    If h v = lam v then h (-J4 v) = (1/lam)(-J4 v), so columns
    (v1, v2, -J4 v1, -J4 v2) with v2 projected off span{v1, -J4 v1} form an
    orthogonal symplectic V.
    """
    eigvals, vecs = jacobi_eigh(h)
    order = np.argsort(eigvals)[::-1]
    v1 = vecs[:, order[0]]
    w1 = -J4 @ v1
    v2 = None
    for idx in order[1:]:
        cand = vecs[:, idx]
        cand = cand - (cand @ v1) * v1 - (cand @ w1) * w1
        n = math.sqrt(float(cand @ cand))
        if n > 0.5:
            v2 = cand / n
            break
    if v2 is None:
        return None
    w2 = -J4 @ v2
    return np.column_stack([v1, v2, w1, w2])


# Symplectic orthogonal reorderings of a diagonal Cartan factor: a quarter
# turn in one (k, k+2) plane swaps the reciprocal pair, and swapping both
# modes at once permutes the two pairs.
_SWAP_PAIR_0 = np.array([
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
])
_SWAP_PAIR_1 = np.array([
    [1.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, -1.0, 0.0, 0.0],
])
_SWAP_MODES = np.array([
    [0.0, 1.0, 0.0, 0.0],
    [1.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
    [0.0, 0.0, 1.0, 0.0],
])


def _normalize_cartan_order(v: np.ndarray, d: np.ndarray):
    """Reorder so the diagonal is (l1, l2, 1/l1, 1/l2) with l1 >= l2 >= 1."""
    for swap, (i, j) in ((_SWAP_PAIR_0, (0, 2)), (_SWAP_PAIR_1, (1, 3))):
        if d[i, i] < d[j, j]:
            v = v @ swap
            d = swap.T @ d @ swap
    if d[0, 0] < d[1, 1]:
        v = v @ _SWAP_MODES
        d = _SWAP_MODES.T @ d @ _SWAP_MODES
    return v, d


@dataclass(frozen=True, eq=False)
class EulerCartan:
    """Factorization X = U1 @ D @ U2 with U1, U2 orthogonal symplectic."""

    U1: np.ndarray
    D: np.ndarray
    U2: np.ndarray
    degenerate: bool

    @property
    def singular_values(self) -> np.ndarray:
        return np.diag(self.D).copy()


def euler_cartan(x: np.ndarray, tol: float = DEFAULT_TOL) -> EulerCartan:
    """Euler-Cartan factorization built on the closed-form polar decomposition.

    The positive definite factor H is diagonalized by a symplectic orthogonal
    V (direct quaternion construction, with a Jacobi fallback when the frame
    is numerically unavailable); then U1 = U V, D = V^T H V, U2 = V^T. The
    degenerate flag marks a repeated leading singular value, where V is not
    unique.
    """
    factors = polar_decompose(x, tol)
    h = factors.H
    scale = 1.0 + float(np.max(np.abs(h)))
    v = _diag_via_quaternion(factors.sym)
    if v is not None:
        d = v.T @ h @ v
        if float(np.max(np.abs(d - np.diag(np.diag(d))))) > tol * scale:
            v = None
    if v is None:
        v = _diag_via_jacobi(h)
        if v is None:
            raise Sp4QuatError("no diagonalizing frame found")
        if not is_symplectic(v, tol) or float(np.max(np.abs(v.T @ v - np.eye(4)))) > tol:
            raise Sp4QuatError("fallback diagonalizer is not symplectic orthogonal")
        d = v.T @ h @ v
        if float(np.max(np.abs(d - np.diag(np.diag(d))))) > tol * scale:
            raise Sp4QuatError("diagonalization residual above tolerance")
    v, d = _normalize_cartan_order(v, d)
    d_clean = np.diag(np.diag(d))
    u1 = factors.U @ v
    u2 = v.T
    lam1, lam2 = d_clean[0, 0], d_clean[1, 1]
    degenerate = abs(lam1 - lam2) <= CARTAN_DEGENERACY_TOL * (1.0 + abs(lam1))
    return EulerCartan(U1=u1, D=d_clean, U2=u2, degenerate=degenerate)
