#!/usr/bin/env python3
"""Benchmark the numba-JIT kernels against their pure-numpy fallbacks.

The two hot loops of ensemble runs are timed side by side:

* ``gamma_draws``      -- counter-based gamma sampling
* ``mean_exp_kernel``  -- per-frequency ensemble average of exp(-x_i * w_k)

Usage::

    python benchmarks/bench_kernels.py [--draws N ...] [--freqs K] [--repeat R]

Setting ``PRECURSOR_LAB_DISABLE_NUMBA=1`` does not change what this script
measures: it imports both implementations explicitly.
"""

import argparse
import time

import numpy as np

from precursor_lab import _kernels as k


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--draws", type=int, nargs="+", default=[10_000, 100_000, 1_000_000])
    parser.add_argument(
        "--kernel-draws", type=int, nargs="+", default=[1_000, 10_000],
        help="draw counts for the (heavier) ensemble-average kernel",
    )
    parser.add_argument("--freqs", type=int, default=8192)
    parser.add_argument("--shape", type=int, default=2, help="gamma shape (ensemble m + 1)")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    if not k.NUMBA_AVAILABLE:
        print("numba is not importable; only the numpy path can be timed")

    print(f"{'kernel':<18} {'size':>12} {'numpy [ms]':>12} {'numba [ms]':>12} {'speedup':>9}")

    for n in args.draws:
        t_np = best_of(lambda: k.gamma_draws_numpy(42, n, args.shape, 2.0), args.repeat)
        row = f"{'gamma_draws':<18} {n:>12d} {1e3 * t_np:>12.2f}"
        if k.NUMBA_AVAILABLE:
            k.gamma_draws_numba(42, 16, args.shape, 2.0)  # compile outside the timer
            t_nb = best_of(lambda: k.gamma_draws_numba(42, n, args.shape, 2.0), args.repeat)
            row += f" {1e3 * t_nb:>12.2f} {t_np / t_nb:>8.1f}x"
        print(row)

    w = 0.5 * 4.0 * np.linspace(0.0, 60.0, args.freqs) ** 2
    for n in args.kernel_draws:
        x = k.gamma_draws_numpy(7, n, args.shape, 2.0)
        t_np = best_of(lambda: k.mean_exp_kernel_numpy(x, w), args.repeat)
        row = f"{'mean_exp_kernel':<18} {n:>6d}x{args.freqs:<5d} {1e3 * t_np:>12.2f}"
        if k.NUMBA_AVAILABLE:
            k.mean_exp_kernel_numba(x[:16], w[:16])
            t_nb = best_of(lambda: k.mean_exp_kernel_numba(x, w), args.repeat)
            row += f" {1e3 * t_nb:>12.2f} {t_np / t_nb:>8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
