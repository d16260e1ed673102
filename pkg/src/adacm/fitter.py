"""Distill a reference 3D LUT into a color MLP.

Each step draws a fresh batch of colors uniformly from the unit cube, maps
them through the reference LUT to get targets, and takes one Adam step on
the mean-L1 loss. The fitted model is scored as the mean absolute channel
error (scaled to 0-255) against the LUT on the uniform eval lattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .lut import Lut3d, identity_lut, lut_apply_colors
from .mlp import ColorMlpParams, mlp_backward, mlp_forward_colors, param_count


class DivergenceError(RuntimeError):
    def __init__(self, step: int):
        super().__init__(f"non-finite loss at step {step}")
        self.step = step


@dataclass(frozen=True)
class FitConfig:
    n_hidden: int = 20
    steps: int = 30000
    batch_size: int = 4096
    learning_rate: float = 1e-3
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_epsilon: float = 1e-8
    rng_seed: int = 0
    eval_grid_size: int = 33
    trace_interval: int = 100

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be > 0")
        if self.eval_grid_size < 2:
            raise ValueError("eval_grid_size must be >= 2")


@dataclass(frozen=True)
class FitReport:
    final_params: ColorMlpParams
    final_error_255: float
    loss_trace: list[tuple[int, float]] = field(repr=False)


def init_params(n_hidden: int, rng: np.random.Generator) -> ColorMlpParams:
    """Scaled-uniform init: weights uniform in +-sqrt(6/fan_in), zero biases."""
    n = n_hidden

    def uniform(shape, fan_in):
        bound = np.sqrt(6.0 / fan_in)
        return rng.uniform(-bound, bound, size=shape)

    return ColorMlpParams(
        n,
        uniform((n, 3), 3), np.zeros(n),
        uniform((n, n), n), np.zeros(n),
        uniform((3, n), n), np.zeros(3),
    )


def eval_error_255(params: ColorMlpParams, lut: Lut3d, grid_size: int) -> float:
    """255-scaled mean |MLP - LUT| over the uniform grid_size^3 lattice."""
    grid = identity_lut(grid_size).table
    predicted = mlp_forward_colors(grid, params)
    target = lut_apply_colors(grid, lut)
    return 255.0 * float(np.mean(np.abs(predicted - target)))


def fit_mlp_to_lut(lut: Lut3d, cfg: FitConfig = FitConfig()) -> FitReport:
    """Run the full distillation loop; deterministic for a fixed seed."""
    rng = np.random.default_rng(cfg.rng_seed)
    params = init_params(cfg.n_hidden, rng)

    theta = params.to_flat()
    m = np.zeros_like(theta)
    v = np.zeros_like(theta)
    b1, b2, eps = cfg.adam_beta1, cfg.adam_beta2, cfg.adam_epsilon

    trace: list[tuple[int, float]] = []
    for step in range(1, cfg.steps + 1):
        x = rng.random((cfg.batch_size, 3))
        t = lut_apply_colors(x, lut)
        loss, grad = mlp_backward((x, t), params)
        if not np.isfinite(loss):
            raise DivergenceError(step)
        if step == 1 or step % cfg.trace_interval == 0 or step == cfg.steps:
            trace.append((step, loss))

        g = grad.to_flat()
        m = b1 * m + (1.0 - b1) * g
        v = b2 * v + (1.0 - b2) * g * g
        m_hat = m / (1.0 - b1**step)
        v_hat = v / (1.0 - b2**step)
        theta = theta - cfg.learning_rate * m_hat / (np.sqrt(v_hat) + eps)
        params = ColorMlpParams.from_flat(cfg.n_hidden, theta)

    error = eval_error_255(params, lut, cfg.eval_grid_size)
    return FitReport(params, error, trace)


def sweep_hidden_units(lut: Lut3d, sizes, cfg: FitConfig = FitConfig()):
    """Fit once per hidden-unit count; entry i runs with seed cfg.rng_seed + i.

    Returns [(n_hidden, error_255), ...] in input order.
    """
    sizes = list(sizes)
    if not sizes:
        raise ValueError("sizes must be non-empty")
    if any(n < 1 for n in sizes):
        raise ValueError("every hidden-unit count must be >= 1")

    results = []
    for i, n in enumerate(sizes):
        run_cfg = replace(cfg, n_hidden=n, rng_seed=cfg.rng_seed + i)
        try:
            report = fit_mlp_to_lut(lut, run_cfg)
        except DivergenceError as exc:
            raise RuntimeError(f"fit diverged for N={n}: {exc}") from exc
        results.append((n, report.final_error_255))
    return results


def format_report(report: FitReport) -> str:
    """Line-oriented text report of a fit run."""
    lines = [
        f"n_hidden {report.final_params.n_hidden}",
        f"param_count {param_count(report.final_params.n_hidden)}",
        f"final_error_255 {report.final_error_255:.4f}",
        "trace step,loss",
    ]
    lines += [f"{step},{loss:.6f}" for step, loss in report.loss_trace]
    return "\n".join(lines) + "\n"
