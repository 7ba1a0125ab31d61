"""Time the compiled kernels against the pure-NumPy fallback.

Runs the subset-table sweep and the budget/type DP on random inputs of
growing size and reports the best wall time per backend.

    python benchmarks/compare_backends.py [--repeats 5]
"""

from __future__ import annotations

import argparse
from time import perf_counter

import numpy as np

from pbdonations.kernels import _numba, _numpy

SUBSET_SIZES = [(12, 4, 2), (16, 6, 2), (20, 8, 2)]  # (projects, voters, types)
DP_SIZES = [(14, 60, 2), (18, 120, 2), (20, 200, 2)]  # (projects, budget, types)


def _inputs(m, n, t, seed):
    rng = np.random.default_rng(seed)
    costs = rng.integers(0, 12, m).astype(np.int64)
    types = rng.integers(0, 2, (m, t)).astype(np.int64)
    sats = rng.integers(0, 10, (n, m)).astype(np.int64)
    return costs, types, sats


def _best(fn, repeats):
    times = []
    for _ in range(repeats):
        start = perf_counter()
        fn()
        times.append(perf_counter() - start)
    return min(times)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    print(f"{'kernel':<14} {'size':<18} {'numpy':>10} {'numba':>10} {'speedup':>9}")
    for m, n, t in SUBSET_SIZES:
        costs, types, sats = _inputs(m, n, t, seed=m)
        _numba.subset_tables(costs, types, sats)  # compile outside the timing
        t_np = _best(lambda: _numpy.subset_tables(costs, types, sats), args.repeats)
        t_nb = _best(lambda: _numba.subset_tables(costs, types, sats), args.repeats)
        size = f"m={m} n={n} t={t}"
        print(f"{'subset_tables':<14} {size:<18} {t_np:>9.4f}s {t_nb:>9.4f}s {t_np / t_nb:>8.1f}x")
    for m, budget, t in DP_SIZES:
        costs, types, sats = _inputs(m, 4, t, seed=m)
        gains = sats.sum(axis=0).astype(np.int64)
        base = m + 1
        _numba.dp_fill(costs, gains, types, budget, base)
        t_np = _best(lambda: _numpy.dp_fill(costs, gains, types, budget, base), args.repeats)
        t_nb = _best(lambda: _numba.dp_fill(costs, gains, types, budget, base), args.repeats)
        size = f"m={m} B={budget} t={t}"
        print(f"{'dp_fill':<14} {size:<18} {t_np:>9.4f}s {t_nb:>9.4f}s {t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
