"""Seeded generators of structured test matrices and independent oracles.

Reproducibility contract: the generator stream is a fixed, documented
algorithm (xoshiro256++ over 64-bit integers, seeded through splitmix64) and
every derived sample uses only rejection sampling plus IEEE-754 arithmetic,
no transcendental library calls. Identical seeds therefore produce
bit-identical matrix streams across runs, and across platforms with compliant
double precision arithmetic.

Sampling recipes:

- unit quaternion: draw points uniformly in [-1, 1)^4 until one lands in the
  unit ball (away from zero), then normalize.
- unit circle pair (v0, v2): draw (x, y) uniformly in the unit disk the same
  way, then map through (v0, v2) = ((x^2 - y^2)/n, 2xy/n) with n = x^2 + y^2,
  which is exactly uniform on the circle.
- orthogonal symplectic: the matrix of u (x) (v0 + v2 j).
- positive definite symplectic: exp(S) for S a random symmetric Hamiltonian
  rescaled to Frobenius norm `spread`; the exponential is a Taylor series
  under scaling and squaring with truncation error below 1e-13. Draws whose
  squared spectral condition exceeds the cap are rejected and redrawn.
- symplectic: product of the previous two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hh_rep import J4, OrthoSymplecticQuat, matrix_of_tensor
from .jacobi import jacobi_eigh, jacobi_sqrt
from .quat import Quaternion

_MASK64 = (1 << 64) - 1

#: Largest allowed squared spectral condition number of X^T X in generated
#: symplectic matrices; keeps 1e-9 residual tolerances meaningful.
CONDITION_CAP = 1e6


def _splitmix64(state: int):
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, (z ^ (z >> 31)) & _MASK64


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


class Xoshiro256pp:
    """xoshiro256++ pseudo-random generator over 64-bit integers.

    State is four 64-bit words filled from the seed by splitmix64. Each step
    returns rotl(s0 + s3, 23) + s0 and advances the state with the standard
    xor-shift-rotate update (t = s1 << 17; s2 ^= s0; s3 ^= s1; s1 ^= s2;
    s0 ^= s3; s2 ^= t; s3 = rotl(s3, 45)). Doubles come from the top 53 bits.
    """

    def __init__(self, seed: int):
        state = int(seed) & _MASK64
        words = []
        for _ in range(4):
            state, word = _splitmix64(state)
            words.append(word)
        if not any(words):
            words[0] = 1  # the all-zero state is a fixed point
        self._s = words

    def next_u64(self) -> int:
        s = self._s
        result = (_rotl((s[0] + s[3]) & _MASK64, 23) + s[0]) & _MASK64
        t = (s[1] << 17) & _MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def uniform(self) -> float:
        """Uniform double in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform_signed(self) -> float:
        """Uniform double in [-1, 1)."""
        return 2.0 * self.uniform() - 1.0


@dataclass(frozen=True)
class GeneratorConfig:
    """Deterministic sampling plan: identical configs give identical streams."""

    seed: int
    spread: float = 1.0
    count: int = 1

    def __post_init__(self):
        if self.spread < 0.0:
            raise ValueError("spread must be non-negative")
        if self.count < 1:
            raise ValueError("count must be positive")


def random_unit_quaternion(rng: Xoshiro256pp) -> Quaternion:
    while True:
        comps = [rng.uniform_signed() for _ in range(4)]
        n2 = sum(c * c for c in comps)
        if 1e-6 < n2 <= 1.0:
            n = math.sqrt(n2)
            return Quaternion(*(c / n for c in comps))


def random_circle_point(rng: Xoshiro256pp) -> tuple[float, float]:
    while True:
        x = rng.uniform_signed()
        y = rng.uniform_signed()
        n = x * x + y * y
        if 1e-6 < n <= 1.0:
            return (x * x - y * y) / n, 2.0 * x * y / n


def random_ortho_symplectic(rng: Xoshiro256pp) -> np.ndarray:
    """Uniform orthogonal symplectic matrix u (x) (v0 + v2 j)."""
    u = random_unit_quaternion(rng)
    v0, v2 = random_circle_point(rng)
    return matrix_of_tensor(u, Quaternion(v0, 0.0, v2, 0.0))


def random_ortho_symplectic_pair(rng: Xoshiro256pp) -> OrthoSymplecticQuat:
    u = random_unit_quaternion(rng)
    v0, v2 = random_circle_point(rng)
    return OrthoSymplecticQuat(u=u, v0=v0, v2=v2)


def matrix_exp(m: np.ndarray, terms: int = 30) -> np.ndarray:
    """Matrix exponential by Taylor series under scaling and squaring.

    The argument is halved until its max-norm is at most 1/4, the series is
    summed until terms stop changing the result (truncation below 1e-13 for
    the scaled argument), then the result is squared back up.
    """
    norm = float(np.max(np.abs(m)))
    squarings = 0
    scaled = np.array(m, dtype=float, copy=True)
    while norm > 0.25:
        scaled *= 0.5
        norm *= 0.5
        squarings += 1
    out = np.eye(4)
    term = np.eye(4)
    for k in range(1, terms + 1):
        term = term @ scaled / k
        out = out + term
        if float(np.max(np.abs(term))) < 1e-18 * float(np.max(np.abs(out))):
            break
    for _ in range(squarings):
        out = out @ out
    return out


def random_symmetric_hamiltonian(rng: Xoshiro256pp, spread: float) -> np.ndarray:
    """Random element of the symmetric Hamiltonian matrices, Frobenius norm spread.

    A random symmetric matrix is pushed into the Hamiltonian algebra by
    multiplying with J4, then symmetrized (which stays Hamiltonian), then
    rescaled. spread = 0 returns the zero matrix.
    """
    sym = np.empty((4, 4))
    for i in range(4):
        for j in range(i, 4):
            sym[i, j] = sym[j, i] = rng.uniform_signed()
    ham = J4 @ sym
    s = 0.5 * (ham + ham.T)
    fro = math.sqrt(float(np.sum(s * s)))
    if fro == 0.0 or spread == 0.0:
        return np.zeros((4, 4))
    return s * (spread / fro)


def random_pd_symplectic(rng: Xoshiro256pp, spread: float,
                         condition_cap: float = CONDITION_CAP) -> np.ndarray:
    """Positive definite symplectic matrix exp(S), S symmetric Hamiltonian.

    The Frobenius rescaling bounds the spectral range of S by 2*spread, so
    the squared condition of the output is at most e^(4*spread); draws beyond
    condition_cap are rejected (a safety net, rarely exercised).
    """
    while True:
        s = random_symmetric_hamiltonian(rng, spread)
        m = matrix_exp(s)
        eigvals, _ = jacobi_eigh(m)
        lo, hi = float(np.min(eigvals)), float(np.max(eigvals))
        if lo > 0.0 and (hi / lo) ** 2 <= condition_cap:
            return m


def random_symplectic_with_factors(rng: Xoshiro256pp, spread: float):
    """Random symplectic matrix together with its generating polar factors."""
    u = random_ortho_symplectic(rng)
    p = random_pd_symplectic(rng, spread)
    return u @ p, u, p


def random_symplectic(rng: Xoshiro256pp, spread: float) -> np.ndarray:
    return random_symplectic_with_factors(rng, spread)[0]


def matrices(config: GeneratorConfig) -> list[np.ndarray]:
    """The deterministic matrix stream described by config."""
    rng = Xoshiro256pp(config.seed)
    return [random_symplectic(rng, config.spread) for _ in range(config.count)]


def jacobi_sqrt_oracle(y: np.ndarray) -> np.ndarray:
    """Spectral-route positive definite square root (independent oracle).

    Cyclic Jacobi diagonalization V^T y V = D followed by V D^(1/2) V^T.
    Raises NotPositiveDefiniteError when an eigenvalue is not positive.
    """
    return jacobi_sqrt(np.asarray(y, dtype=float))
