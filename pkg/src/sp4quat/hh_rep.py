"""The algebra isomorphism between quaternion pair tensors and real 4x4 matrices.

A product tensor p (x) q acts on H identified with R^4 (basis {1, i, j, k})
as x -> p * x * conj(q); `matrix_of_tensor` returns the matrix of that map.
Extended by bilinearity this is an algebra isomorphism onto all of M4(R):

    M[p1 (x) q1] @ M[p2 (x) q2] = M[(p1 p2) (x) (q1 q2)]

The sixteen matrices of basis-element pairs form a Frobenius-orthogonal basis
of M4(R), each with squared Frobenius norm 4, so the coefficients of any
matrix are quarter inner products against that basis (asserted once in the
test suite). A general matrix is written

    a 1(x)1 + p (x) i + q (x) j + r (x) k + s (x) 1 + 1 (x) t

with scalar a and pure quaternions p, q, r, s, t; the (a, p, q, r) summand is
the symmetric part of the matrix and (s, t) the skew part. 4a is the trace.
Conjugating both tensor legs transposes the matrix, so transposition fixes
(a, p, q, r) and negates (s, t).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .quat import QUAT_BASIS, Quaternion, ZERO3


def matrix_of_tensor(p: Quaternion, q: Quaternion) -> np.ndarray:
    """Matrix of x -> p * x * conj(q) in the basis {1, i, j, k}.

    Columns are the coordinate vectors of p*1*conj(q), p*i*conj(q),
    p*j*conj(q), p*k*conj(q).
    """
    qc = q.conj()
    m = np.empty((4, 4))
    for col, e in enumerate(QUAT_BASIS):
        m[:, col] = (p * e * qc).as_array()
    return m


_INDEX_OF = {0: 0, 1: 1, 2: 2, 3: 3, "1": 0, "i": 1, "j": 2, "k": 3}


def _basis_index(x) -> int:
    try:
        return _INDEX_OF[x]
    except KeyError:
        raise ValueError(f"basis index must be one of 0..3 or '1ijk', got {x!r}")


#: BASIS[x, y] is the matrix of e_x (x) e_y, x and y running over {1, i, j, k}.
BASIS = np.array(
    [[matrix_of_tensor(ex, ey) for ey in QUAT_BASIS] for ex in QUAT_BASIS]
)
BASIS.setflags(write=False)

#: The defining matrix of the symplectic form, equal to the 1 (x) j basis matrix.
J4 = BASIS[0, 2].copy()
J4.setflags(write=False)


def basis_matrix(x, y) -> np.ndarray:
    """Basis matrix for the tensor e_x (x) e_y; accepts indices 0..3 or '1ijk'."""
    return BASIS[_basis_index(x), _basis_index(y)].copy()


def coeff_matrix(m: np.ndarray) -> np.ndarray:
    """All sixteen tensor coefficients of m as a 4x4 array C[x, y].

    C[x, y] is the coefficient of e_x (x) e_y, computed as a quarter of the
    Frobenius inner product with the corresponding basis matrix.
    """
    return np.tensordot(BASIS, m, axes=([2, 3], [0, 1])) * 0.25


@dataclass(frozen=True, eq=False)
class TensorRep:
    """Coefficients of a matrix in the canonical tensor form.

    a, p, q, r make up the symmetric part, s and t the skew part.
    """

    a: float = 0.0
    p: np.ndarray = field(default_factory=lambda: ZERO3.copy())
    q: np.ndarray = field(default_factory=lambda: ZERO3.copy())
    r: np.ndarray = field(default_factory=lambda: ZERO3.copy())
    s: np.ndarray = field(default_factory=lambda: ZERO3.copy())
    t: np.ndarray = field(default_factory=lambda: ZERO3.copy())

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        for name in ("p", "q", "r", "s", "t"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))

    def coeffs(self) -> np.ndarray:
        """Pack back into the 4x4 coefficient array."""
        c = np.zeros((4, 4))
        c[0, 0] = self.a
        c[1:, 1] = self.p
        c[1:, 2] = self.q
        c[1:, 3] = self.r
        c[1:, 0] = self.s
        c[0, 1:] = self.t
        return c


def rep_of_matrix(m: np.ndarray) -> TensorRep:
    """The unique tensor coefficients with matrix_of_rep(rep) == m."""
    c = coeff_matrix(m)
    return TensorRep(a=c[0, 0], p=c[1:, 1], q=c[1:, 2], r=c[1:, 3],
                     s=c[1:, 0], t=c[0, 1:])


def matrix_of_rep(rep: TensorRep) -> np.ndarray:
    """Rebuild the matrix as the linear combination of basis matrices."""
    return np.tensordot(rep.coeffs(), BASIS, axes=([0, 1], [0, 1]))


def transpose_rep(rep: TensorRep) -> TensorRep:
    """Tensor coefficients of the transposed matrix: negate s and t."""
    return TensorRep(a=rep.a, p=rep.p, q=rep.q, r=rep.r, s=-rep.s, t=-rep.t)


@dataclass(frozen=True)
class OrthoSymplecticQuat:
    """Quaternion pair (u, v0 + v2*j) representing an orthogonal symplectic matrix.

    u is a unit quaternion and v0^2 + v2^2 = 1; the restriction of the right
    factor to span{1, j} is exactly what commuting with j (symplecticity)
    imposes on a special orthogonal matrix u (x) v.
    """

    u: Quaternion
    v0: float
    v2: float

    def __post_init__(self):
        object.__setattr__(self, "v0", float(self.v0))
        object.__setattr__(self, "v2", float(self.v2))

    @property
    def v(self) -> Quaternion:
        return Quaternion(self.v0, 0.0, self.v2, 0.0)

    def matrix(self) -> np.ndarray:
        return matrix_of_tensor(self.u, self.v)
