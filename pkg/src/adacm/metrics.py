"""Image quality metrics: PSNR, 0-255 scaled mean absolute error, and a
total-variation smoothness measure.
"""

from __future__ import annotations

import math

import numpy as np

from .image import Image

PSNR_INF = math.inf


def _check_dims(a: Image, b: Image):
    if a.pixels.shape != b.pixels.shape:
        raise ValueError(
            f"image dimensions differ: {a.width}x{a.height} vs {b.width}x{b.height}"
        )


def psnr(a: Image, b: Image) -> float:
    """Peak signal-to-noise ratio in dB with peak 1.0; inf when identical."""
    _check_dims(a, b)
    diff = a.pixels - b.pixels
    mse = float(np.mean(diff * diff))
    if mse == 0.0:
        return PSNR_INF
    return 10.0 * math.log10(1.0 / mse)


def avg_l1_255(a: Image, b: Image) -> float:
    """Mean absolute channel difference scaled to the 0-255 range."""
    _check_dims(a, b)
    return 255.0 * float(np.mean(np.abs(a.pixels - b.pixels)))


def tv_image(img: Image) -> float:
    """Mean L2 norm of RGB differences over all horizontally and vertically
    adjacent pixel pairs. A 1x1 image has no pairs and scores 0.
    """
    px = img.pixels
    dh = np.diff(px, axis=1)
    dv = np.diff(px, axis=0)
    n_pairs = dh.shape[0] * dh.shape[1] + dv.shape[0] * dv.shape[1]
    if n_pairs == 0:
        return 0.0
    total = float(np.sum(np.sqrt(np.sum(dh * dh, axis=-1))))
    total += float(np.sum(np.sqrt(np.sum(dv * dv, axis=-1))))
    return total / n_pairs


def format_metric(value: float) -> str:
    """CLI formatting: 4 decimal places, literal "inf" for the PSNR marker."""
    return "inf" if math.isinf(value) else f"{value:.4f}"
