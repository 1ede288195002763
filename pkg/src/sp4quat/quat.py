"""Quaternion arithmetic and the pure-quaternion / R^3 identification.

Components are ordered (w, x, y, z) along the basis {1, i, j, k}; every
serialization in the package uses this order. Pure quaternions (w = 0) are
handled as plain length-3 numpy vectors throughout, with `dot` and `cross`
below providing the Euclidean operations under that identification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ZeroQuaternionError

# Scale-aware zero threshold for normalization: guards denormal inputs.
ZERO_TOL = 1e-14


@dataclass(frozen=True)
class Quaternion:
    """An element of the quaternion algebra H."""

    w: float
    x: float
    y: float
    z: float

    def __post_init__(self):
        object.__setattr__(self, "w", float(self.w))
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        object.__setattr__(self, "z", float(self.z))

    @classmethod
    def from_vector(cls, v, w: float = 0.0) -> "Quaternion":
        """Lift an R^3 vector to a (pure, unless w is given) quaternion."""
        return cls(w, v[0], v[1], v[2])

    @classmethod
    def from_array(cls, a) -> "Quaternion":
        return cls(a[0], a[1], a[2], a[3])

    @property
    def vector(self) -> np.ndarray:
        """Imaginary part as an R^3 vector."""
        return np.array([self.x, self.y, self.z])

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        a, b = self, other
        return Quaternion(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w + other.w, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w - other.w, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def scale(self, c: float) -> "Quaternion":
        return Quaternion(c * self.w, c * self.x, c * self.y, c * self.z)

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def norm(self) -> float:
        return math.sqrt(self.norm2())

    def normalize(self) -> "Quaternion":
        """Unit quaternion parallel to self.

        Raises ZeroQuaternionError when the norm is below the scale-aware
        zero threshold.
        """
        n = self.norm()
        biggest = max(abs(self.w), abs(self.x), abs(self.y), abs(self.z))
        if n <= ZERO_TOL * (1.0 + biggest):
            raise ZeroQuaternionError("cannot normalize a zero quaternion")
        return self.scale(1.0 / n)

    def isclose(self, other: "Quaternion", tol: float = 1e-12) -> bool:
        return (self - other).norm() <= tol * (1.0 + self.norm() + other.norm())


ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)

#: Quaternion basis in the fixed order used by the matrix representation.
QUAT_BASIS = (ONE, I, J, K)


def dot(u, v) -> float:
    """Euclidean dot product of two R^3 vectors (pure quaternions)."""
    return float(u[0] * v[0] + u[1] * v[1] + u[2] * v[2])


def cross(u, v) -> np.ndarray:
    """Cross product of two R^3 vectors (pure quaternions)."""
    return np.array([
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ])


def norm3(u) -> float:
    return math.sqrt(dot(u, u))


ZERO3 = np.zeros(3)
