"""Pure-numpy fallback kernels.

Used when the compiled extension is unavailable (see backend.py). Both
backends operate on flat (K, 3) float64 color arrays and must agree to
floating-point roundoff.
"""

import numpy as np


def lut_apply_colors(colors, table, size):
    """Trilinearly interpolate a flat (M^3, 3) LUT table at each input color.

    Inputs outside [0,1] are clamped before lookup; outputs are clamped
    to [0,1]. `table` is red-fastest: index = r + M*g + M^2*b.
    """
    m = size
    p = np.clip(colors, 0.0, 1.0)
    v = p * (m - 1)
    i0 = np.minimum(np.floor(v).astype(np.intp), m - 2)
    f = v - i0

    r0, g0, b0 = i0[:, 0], i0[:, 1], i0[:, 2]
    fr, fg, fb = f[:, 0:1], f[:, 1:2], f[:, 2:3]

    def cell(ri, gi, bi):
        return table[ri + m * gi + m * m * bi]

    c000 = cell(r0, g0, b0)
    c100 = cell(r0 + 1, g0, b0)
    c010 = cell(r0, g0 + 1, b0)
    c110 = cell(r0 + 1, g0 + 1, b0)
    c001 = cell(r0, g0, b0 + 1)
    c101 = cell(r0 + 1, g0, b0 + 1)
    c011 = cell(r0, g0 + 1, b0 + 1)
    c111 = cell(r0 + 1, g0 + 1, b0 + 1)

    c00 = c000 * (1.0 - fr) + c100 * fr
    c10 = c010 * (1.0 - fr) + c110 * fr
    c01 = c001 * (1.0 - fr) + c101 * fr
    c11 = c011 * (1.0 - fr) + c111 * fr
    c0 = c00 * (1.0 - fg) + c10 * fg
    c1 = c01 * (1.0 - fg) + c11 * fg
    out = c0 * (1.0 - fb) + c1 * fb
    return np.clip(out, 0.0, 1.0)


def mlp_apply_colors(colors, w1, b1, w2, b2, w3, b3):
    """Evaluate the 2-hidden-layer color MLP on each row, clamped to [0,1]."""
    h1 = np.maximum(colors @ w1.T + b1, 0.0)
    h2 = np.maximum(h1 @ w2.T + b2, 0.0)
    out = h2 @ w3.T + b3
    return np.clip(out, 0.0, 1.0)
