#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-numpy fallback.

Run after an editable install:

    python benchmarks/bench_kernels.py [--quick]

Times the three hot kernels (fractional-part sequence generation, window
counting over a sample batch, progression merging) on both backends and
checks that the outputs agree.
"""

import argparse
import math
import time

import numpy as np

from loggap._kernels import _pure

try:
    from loggap._kernels import _core
except ImportError:
    _core = None


def _time(fn, repeats=3):
    best = math.inf
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench(name, pure_fn, core_fn, check=None):
    t_pure, out_pure = _time(pure_fn)
    line = f"{name:<42s} pure {t_pure * 1e3:9.2f} ms"
    if core_fn is not None:
        t_core, out_core = _time(core_fn)
        line += f"   compiled {t_core * 1e3:9.2f} ms   speedup {t_pure / t_core:5.2f}x"
        if check is not None:
            check(out_pure, out_core)
    print(line)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="smaller sizes")
    args = parser.parse_args()

    scale = 10 if args.quick else 1
    n_seq = 10**7 // scale
    n_mc = 10**6 // scale
    span = 200_000.0 / scale

    if _core is None:
        print("compiled backend not available; timing the fallback only")

    ln_e = 1.0
    bench(
        f"frac_log (N={n_seq:.0e})",
        lambda: _pure.frac_log(n_seq, ln_e),
        (lambda: _core.frac_log(n_seq, ln_e)) if _core else None,
        lambda a, b: np.testing.assert_allclose(a, b, atol=5e-15, rtol=0),
    )
    bench(
        f"frac_log_root m=10 r=2 (N={n_seq:.0e})",
        lambda: _pure.frac_log_root(n_seq, 10, 2),
        (lambda: _core.frac_log_root(n_seq, 10, 2)) if _core else None,
        lambda a, b: np.testing.assert_allclose(a, b, atol=5e-15, rtol=0),
    )

    rng = np.random.default_rng(0)
    ts = rng.uniform(0.0, 1e4, n_mc)
    omegas = np.array([1.0, math.sqrt(2.0), math.sqrt(3.0), 0.7, 0.45, 0.3])
    betas = np.zeros_like(omegas)
    bench(
        f"window_count_batch (samples={n_mc:.0e}, J=6)",
        lambda: _pure.window_count_batch(ts, 0.5, omegas, betas),
        (lambda: _core.window_count_batch(ts, 0.5, omegas, betas)) if _core else None,
        lambda a, b: np.testing.assert_array_equal(a, b),
    )

    merge_omegas = np.array([1.0, 1.0 / math.sqrt(2.0), 0.8, 0.33])
    merge_betas = np.array([0.0, 0.3, 0.7, 0.1])
    bench(
        f"merge_progressions (span={span:.0e}, J=4)",
        lambda: _pure.merge_progressions(merge_omegas, merge_betas, 0.0, span),
        (lambda: _core.merge_progressions(merge_omegas, merge_betas, 0.0, span))
        if _core
        else None,
        lambda a, b: np.testing.assert_array_equal(a, b),
    )


if __name__ == "__main__":
    main()
