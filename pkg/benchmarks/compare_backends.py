"""Compare the compiled kernels against the numpy fallback.

Usage: python3 benchmarks/compare_backends.py [--resolutions 512,1024] [--reps 5]
"""

import argparse
import statistics
import time

import numpy as np

from adacm import _kernels_np
from adacm.backend import BACKEND_NAME
from adacm.fitter import init_params
from adacm.mlp import compile_lut

try:
    from adacm import _core
except ImportError:
    _core = None


def median_ms(fn, reps):
    fn()
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append((time.perf_counter() - t0) * 1000.0)
    return statistics.median(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--resolutions", default="512,1024,2000")
    parser.add_argument("--reps", type=int, default=5)
    args = parser.parse_args()
    resolutions = [int(t) for t in args.resolutions.split(",")]

    if _core is None:
        raise SystemExit("compiled extension not built; nothing to compare")
    print(f"default backend: {BACKEND_NAME}")

    params = init_params(20, np.random.default_rng(0))
    lut = compile_lut(params, 33)
    impls = [("compiled", _core), ("numpy", _kernels_np)]

    print(f"{'resolution':>10} {'kernel':>12} {'backend':>9} {'ms':>10}")
    for res in resolutions:
        colors = np.ascontiguousarray(np.random.default_rng(1).random((res * res, 3)))
        for name, impl in impls:
            ms = median_ms(lambda: impl.lut_apply_colors(colors, lut.table, 33), args.reps)
            print(f"{res:>10} {'lut-apply':>12} {name:>9} {ms:>10.2f}")
        for name, impl in impls:
            ms = median_ms(
                lambda: impl.mlp_apply_colors(
                    colors, params.w1, params.b1, params.w2, params.b2, params.w3, params.b3
                ),
                args.reps,
            )
            print(f"{res:>10} {'mlp-direct':>12} {name:>9} {ms:>10.2f}")


if __name__ == "__main__":
    main()
