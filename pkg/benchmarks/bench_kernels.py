"""Benchmark the geometric-product kernels: numba JIT against pure numpy.

Run with ``python3 benchmarks/bench_kernels.py``.  Both backends compute
bit-for-bit identical results (asserted below before timing); the table
reports mean +- std per call over repeated timed batches.

Set ``FERMION5D_NO_NUMBA=1`` to see how the package behaves when the fallback
is forced; the benchmark itself always times both implementations as long as
numba is importable.
"""
from __future__ import annotations

import time

import numpy as np

from fermion5d import _kernels
from fermion5d.algebra import CL32, tables

REPEATS = 7


def time_per_call(fn, args, target_seconds: float = 0.05) -> tuple[float, float]:
    """Mean and std of the per-call wall time over REPEATS timed batches."""
    fn(*args)  # warm up (JIT compilation, caches)
    # size the inner loop so one batch takes roughly target_seconds
    t0 = time.perf_counter()
    fn(*args)
    once = max(time.perf_counter() - t0, 1e-9)
    inner = max(1, int(target_seconds / once))
    samples = []
    for _ in range(REPEATS):
        t0 = time.perf_counter()
        for _ in range(inner):
            fn(*args)
        samples.append((time.perf_counter() - t0) / inner)
    arr = np.array(samples)
    return float(arr.mean()), float(arr.std())


def fmt(mean: float, std: float) -> str:
    return f"{mean * 1e6:9.2f} +- {std * 1e6:6.2f} us"


def main() -> None:
    rng = np.random.default_rng(7)
    sign = tables(CL32).sign
    a = rng.uniform(-1, 1, size=32)
    b = rng.uniform(-1, 1, size=32)
    batch_a = rng.uniform(-1, 1, size=(4096, 32))
    batch_b = rng.uniform(-1, 1, size=(4096, 32))

    cases = [
        ("gp (single 32x32)", "gp", (sign, a, b)),
        ("gp_batch (4096 pairs)", "gp_batch", (sign, batch_a, batch_b)),
        ("gp_left (const x 4096)", "gp_left", (sign, a, batch_b)),
        ("gp_right (4096 x const)", "gp_right", (sign, batch_a, b)),
    ]

    print(f"active backend: {_kernels.BACKEND}")
    if not _kernels.HAVE_NUMBA:
        print("numba is not importable; timing the numpy path only\n")

    header = f"{'kernel':<24} {'numpy':>22} {'numba':>22} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, name, args in cases:
        numpy_fn = getattr(_kernels, f"{name}_numpy")
        np_mean, np_std = time_per_call(numpy_fn, args)
        if _kernels.HAVE_NUMBA:
            numba_fn = getattr(_kernels, f"{name}_numba")
            assert np.array_equal(numba_fn(*args), numpy_fn(*args)), label
            nb_mean, nb_std = time_per_call(numba_fn, args)
            print(
                f"{label:<24} {fmt(np_mean, np_std):>22} "
                f"{fmt(nb_mean, nb_std):>22} {np_mean / nb_mean:>7.1f}x"
            )
        else:
            print(f"{label:<24} {fmt(np_mean, np_std):>22} {'-':>22} {'-':>8}")


if __name__ == "__main__":
    main()
