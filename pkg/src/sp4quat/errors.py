"""Exception hierarchy.

Structural errors mean the input does not satisfy a precondition (wrong kind
of matrix); numeric-guard errors mean a quantity that is provably nonzero or
nonnegative for exact inputs fell outside its guard band, i.e. the input data
is corrupted beyond the working tolerance.
"""


class Sp4QuatError(Exception):
    """Base class for all library errors."""


class ZeroQuaternionError(Sp4QuatError):
    """Normalization of a quaternion whose norm is below the zero threshold."""


class NotSymplecticError(Sp4QuatError):
    """Input matrix fails the symplectic membership test."""


class NotPositiveDefiniteError(Sp4QuatError):
    """Input fails positive definiteness or the Gram-representation invariants."""


class NegativeDiscriminantError(Sp4QuatError):
    """The square-root quadratic has negative discriminant beyond tolerance."""


class SingularGuardError(Sp4QuatError):
    """A provably nonzero pivot quantity is zero within tolerance."""


class NotDecomposableError(Sp4QuatError):
    """Coefficient matrix is not rank one: input is not in SO(4)."""


class NotSymplecticOrthogonalError(Sp4QuatError):
    """Right quaternion factor has components outside span{1, j}."""


class InvalidFormError(Sp4QuatError):
    """A quaternion-form parameter set violates its defining constraints."""


STRUCTURAL_ERRORS = (
    NotSymplecticError,
    NotPositiveDefiniteError,
    NotDecomposableError,
    NotSymplecticOrthogonalError,
    InvalidFormError,
)

NUMERIC_GUARD_ERRORS = (
    NegativeDiscriminantError,
    SingularGuardError,
    ZeroQuaternionError,
)
