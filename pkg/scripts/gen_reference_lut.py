"""Generate the bundled reference LUT (a smooth teal/orange film look).

Writes src/adacm/data/reference_33.cube. The map combines per-channel tone
curves, a saturation boost, and a luminance-dependent warm/cool split, so
it is clearly nonlinear but smooth enough for a small MLP to fit.
"""

from pathlib import Path

import numpy as np

from adacm.lut import Lut3d, identity_lut, write_cube


def style_map(colors: np.ndarray) -> np.ndarray:
    r, g, b = colors[:, 0], colors[:, 1], colors[:, 2]

    # tone curves
    r = r ** 0.82
    g = g ** 1.05
    b = 0.92 * b ** 1.25 + 0.04

    lum = 0.299 * r + 0.587 * g + 0.114 * b

    # saturation boost
    sat = 1.35
    r = lum + sat * (r - lum)
    g = lum + sat * (g - lum)
    b = lum + sat * (b - lum)

    # warm highlights, cool shadows
    split = 0.22 * (lum - 0.45)
    r = r + split
    b = b - split

    # gentle sigmoid soft-clip keeps values inside [0,1] while staying smooth
    out = np.stack([r, g, b], axis=-1)
    return 1.0 / (1.0 + np.exp(-6.0 * (out - 0.5)))


def main():
    base = identity_lut(33)
    mapped = style_map(base.table)
    # re-normalize the sigmoid soft clip so 0 -> 0 and 1 -> 1
    lo = 1.0 / (1.0 + np.exp(3.0))
    hi = 1.0 / (1.0 + np.exp(-3.0))
    mapped = (mapped - lo) / (hi - lo)
    lut = Lut3d(33, mapped)
    out = Path(__file__).resolve().parents[1] / "src" / "adacm" / "data" / "reference_33.cube"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(write_cube(lut, title="adacm reference teal-orange"))
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
