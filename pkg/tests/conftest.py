import numpy as np
import pytest

from sp4quat import polar_decompose, testkit

# Seed of the acceptance corpus; spreads stay at or below 3 so the generator
# keeps squared Gram condition numbers under the 1e6 cap.
ACCEPTANCE_SEED = 20260808
CORPUS_SPREADS = (0.5, 1.5, 2.5, 3.0)
CORPUS_PER_SPREAD = 2500


@pytest.fixture(scope="session")
def corpus():
    """10^4 seeded random symplectic matrices shared by the acceptance criteria."""
    out = []
    for i, spread in enumerate(CORPUS_SPREADS):
        rng = testkit.Xoshiro256pp(ACCEPTANCE_SEED + i)
        out.extend(testkit.random_symplectic(rng, spread)
                   for _ in range(CORPUS_PER_SPREAD))
    return out


@pytest.fixture(scope="session")
def decomposed(corpus):
    """Polar factors of the corpus plus the wall time the decompositions took."""
    import time

    t0 = time.perf_counter()
    factors = [polar_decompose(x) for x in corpus]
    elapsed = time.perf_counter() - t0
    return factors, elapsed


@pytest.fixture(scope="session")
def small_stream():
    """A few hundred random symplectic matrices for unit-level property tests."""
    rng = testkit.Xoshiro256pp(424242)
    return [testkit.random_symplectic(rng, 2.0) for _ in range(300)]


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)
