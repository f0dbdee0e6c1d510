"""Compare the numba and numpy kernel backends on the SINR hot path.

Usage: python benchmarks/bench_kernels.py [--trials N] [--repeats R]

Times `sinr_trials` plus the success/rate reductions at several problem
sizes and prints a speedup table. The first numba call includes JIT
compilation and is excluded via a warm-up pass.
"""

import argparse
import time

import numpy as np

from frangine import _kernels


def _case(rng, n_trials, n_sig, n_int):
    return (
        rng.exponential(size=(n_trials, n_sig)),
        rng.uniform(0.1, 1.0, size=n_sig),
        rng.exponential(size=(n_trials, n_int)),
        rng.uniform(0.01, 0.1, size=n_int),
        1e-3,
    )


def _time_backend(backend, case, repeats):
    _kernels.set_backend(backend)
    _kernels.success_fraction(_kernels.sinr_trials(*case), 1.0)  # warm-up / JIT
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        sinr = _kernels.sinr_trials(*case)
        _kernels.success_fraction(sinr, 1.0)
        _kernels.mean_rate(sinr)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=7, help="timing repeats, best-of")
    args = parser.parse_args()

    if "numba" not in _kernels._BACKENDS:
        raise SystemExit("numba backend unavailable; nothing to compare")

    rng = np.random.default_rng(0)
    sizes = [(2_000, 3, 10), (20_000, 5, 50), (100_000, 5, 200), (100_000, 1, 1000)]
    print(f"{'trials':>8} {'signals':>8} {'interferers':>12} "
          f"{'numpy (ms)':>11} {'numba (ms)':>11} {'speedup':>8}")
    original = _kernels.active_backend()
    try:
        for n_trials, n_sig, n_int in sizes:
            case = _case(rng, n_trials, n_sig, n_int)
            t_numpy = _time_backend("numpy", case, args.repeats)
            t_numba = _time_backend("numba", case, args.repeats)
            print(f"{n_trials:>8} {n_sig:>8} {n_int:>12} "
                  f"{t_numpy * 1e3:>11.2f} {t_numba * 1e3:>11.2f} "
                  f"{t_numpy / t_numba:>7.2f}x")
    finally:
        _kernels.set_backend(original)


if __name__ == "__main__":
    main()
