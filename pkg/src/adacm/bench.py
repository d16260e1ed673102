"""Timing harness for the per-pixel pipelines.

Times direct MLP application, LUT application, and LUT compilation on
synthetic in-memory images (decode cost excluded). Single-threaded by
default so the reported ratios reflect per-pixel algorithmic cost.
"""

from __future__ import annotations

import statistics
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import backend
from .lut import Lut3d
from .mlp import ColorMlpParams, compile_lut

CSV_HEADER = "resolution,pipeline,ms,reps"
DEFAULT_RESOLUTIONS = (512, 1024, 2000, 4000)


@dataclass(frozen=True)
class BenchResult:
    resolution: int
    pipeline: str  # mlp-direct | lut-apply | compile-only
    ms: float
    reps: int

    def csv_row(self) -> str:
        return f"{self.resolution},{self.pipeline},{self.ms:.4f},{self.reps}"


def _chunked(fn, colors: np.ndarray, threads: int) -> np.ndarray:
    if threads <= 1 or colors.shape[0] < threads:
        return np.asarray(fn(colors))
    chunks = np.array_split(colors, threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda c: np.asarray(fn(np.ascontiguousarray(c))), chunks))
    return np.concatenate(parts)


def apply_lut_colors_mt(colors: np.ndarray, lut: Lut3d, threads: int = 1) -> np.ndarray:
    return _chunked(lambda c: backend.lut_apply_colors(c, lut.table, lut.size), colors, threads)


def apply_mlp_colors_mt(colors: np.ndarray, params: ColorMlpParams, threads: int = 1) -> np.ndarray:
    return _chunked(
        lambda c: backend.mlp_apply_colors(
            c, params.w1, params.b1, params.w2, params.b2, params.w3, params.b3
        ),
        colors,
        threads,
    )


def _median_ms(fn, reps: int) -> float:
    fn()  # warm-up, discarded
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append((time.perf_counter() - t0) * 1000.0)
    return statistics.median(times)


def run_bench(
    params: ColorMlpParams,
    resolutions=DEFAULT_RESOLUTIONS,
    lut_size: int = 33,
    reps: int = 5,
    threads: int = 1,
    seed: int = 0,
) -> list[BenchResult]:
    if reps < 3:
        raise ValueError("reps must be >= 3")
    lut = compile_lut(params, lut_size)
    results = []
    for res in resolutions:
        try:
            rng = np.random.default_rng(seed)
            colors = np.ascontiguousarray(rng.random((res * res, 3)))
            mlp_ms = _median_ms(lambda: apply_mlp_colors_mt(colors, params, threads), reps)
            lut_ms = _median_ms(lambda: apply_lut_colors_mt(colors, lut, threads), reps)
            compile_ms = _median_ms(lambda: compile_lut(params, lut_size), reps)
        except MemoryError:
            print(f"bench: out of memory at resolution {res}, skipping", file=sys.stderr)
            continue
        results.append(BenchResult(res, "mlp-direct", mlp_ms, reps))
        results.append(BenchResult(res, "lut-apply", lut_ms, reps))
        results.append(BenchResult(res, "compile-only", compile_ms, reps))
        del colors
    return results


def format_csv(results) -> str:
    return "\n".join([CSV_HEADER] + [r.csv_row() for r in results]) + "\n"
