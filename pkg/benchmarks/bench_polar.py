"""Benchmark the batch polar kernels: compiled core vs pure-Python fallback.

Also times the spectral route (Jacobi eigendecomposition square root) on the
same inputs to show what the closed-form path buys over diagonalization.

Usage:
    python benchmarks/bench_polar.py [--count 20000] [--spread 1.5] [--seed 7]
"""

import argparse
import time

import numpy as np

from sp4quat import batch
from sp4quat.symplectic import block_transpose_inverse
from sp4quat.testkit import Xoshiro256pp, jacobi_sqrt_oracle, random_symplectic


def _time(fn, *args, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def _spectral_polar(xs):
    us = np.empty_like(xs)
    hs = np.empty_like(xs)
    for i, x in enumerate(xs):
        h = jacobi_sqrt_oracle(x.T @ x)
        hs[i] = h
        us[i] = x @ block_transpose_inverse(h)
    return us, hs


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=20000)
    parser.add_argument("--spread", type=float, default=1.5)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--spectral", action="store_true",
                        help="also time the Jacobi eigendecomposition route "
                             "(slow, run on count/10 matrices)")
    args = parser.parse_args()

    rng = Xoshiro256pp(args.seed)
    print(f"generating {args.count} symplectic matrices (spread {args.spread}) ...")
    xs = np.array([random_symplectic(rng, args.spread) for _ in range(args.count)])

    rows = []
    baseline = None
    for name, fn in sorted(batch.backends().items()):
        elapsed, (us, hs) = _time(fn, xs)
        residual = float(np.max(np.abs(np.einsum("nij,njk->nik", us, hs) - xs)))
        rows.append((f"{name} batch kernel", elapsed, len(xs), residual))
        if name == "python":
            baseline = elapsed / len(xs)

    if args.spectral:
        sub = xs[: max(1, args.count // 10)]
        elapsed, (us, hs) = _time(_spectral_polar, sub, repeats=1)
        residual = float(np.max(np.abs(np.einsum("nij,njk->nik", us, hs) - sub)))
        rows.append(("jacobi spectral route", elapsed, len(sub), residual))

    print(f"\nactive backend: {batch.BACKEND}")
    print(f"{'route':<24} {'us/matrix':>12} {'total s':>10} {'n':>8} {'max |UH-X|':>12}")
    for name, elapsed, n, residual in rows:
        per = elapsed / n * 1e6
        print(f"{name:<24} {per:>12.2f} {elapsed:>10.3f} {n:>8} {residual:>12.2e}")
    if baseline is not None:
        for name, elapsed, n, _ in rows:
            if "batch" in name and "python" not in name:
                print(f"\nspeedup over pure Python: {baseline / (elapsed / n):.1f}x")


if __name__ == "__main__":
    main()
