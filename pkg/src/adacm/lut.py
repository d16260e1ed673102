"""3D lookup tables: construction, trilinear application, smoothness
regularizer, and .cube file I/O.

A Lut3d stores M^3 RGB cells in a flat (M^3, 3) float64 array with the red
index varying fastest: flat index = r + M*g + M^2*b. This matches the data
line order of the .cube interchange format. Cell values are stored
unclamped; clamping to [0,1] happens when a LUT is applied and when it is
written to a .cube file.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from . import backend


class CubeParseError(ValueError):
    """Malformed .cube input; carries the 1-based offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Lut3d:
    size: int
    table: np.ndarray = field(repr=False)  # (size**3, 3) float64, red fastest

    def __post_init__(self):
        if self.size < 2:
            raise ValueError(f"LUT size must be >= 2, got {self.size}")
        table = np.ascontiguousarray(self.table, dtype=np.float64)
        if table.shape != (self.size**3, 3):
            raise ValueError(
                f"expected {self.size**3} cells of 3 channels, got shape {table.shape}"
            )
        if not np.all(np.isfinite(table)):
            raise ValueError("LUT cells must be finite")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    def cell(self, r_idx: int, g_idx: int, b_idx: int) -> np.ndarray:
        m = self.size
        return self.table[r_idx + m * g_idx + m * m * b_idx]

    @property
    def grid(self) -> np.ndarray:
        """View of the table as (b, g, r, channel)."""
        m = self.size
        return self.table.reshape(m, m, m, 3)


def identity_lut(size: int) -> Lut3d:
    """LUT whose cell (i, j, k) holds (i, j, k) / (size - 1)."""
    if size < 2:
        raise ValueError(f"LUT size must be >= 2, got {size}")
    axis = np.linspace(0.0, 1.0, size)
    b, g, r = np.meshgrid(axis, axis, axis, indexing="ij")
    table = np.stack([r, g, b], axis=-1).reshape(-1, 3)
    return Lut3d(size, table)


def lut_apply(color, lut: Lut3d) -> np.ndarray:
    """Transform one RGB color through the LUT (clamped trilinear lookup)."""
    colors = np.ascontiguousarray(color, dtype=np.float64).reshape(1, 3)
    return np.asarray(backend.lut_apply_colors(colors, lut.table, lut.size))[0]


def lut_apply_colors(colors, lut: Lut3d) -> np.ndarray:
    """Vectorized lut_apply over a (K, 3) array of colors."""
    colors = np.ascontiguousarray(colors, dtype=np.float64)
    return np.asarray(backend.lut_apply_colors(colors, lut.table, lut.size))


def tv_lut(lut: Lut3d) -> float:
    """Total-variation smoothness: sum over all cells of the L2 norms of the
    differences to the +r, +g, and +b neighbors (boundary neighbors skipped).
    """
    grid = lut.grid
    total = 0.0
    for axis in range(3):
        d = np.diff(grid, axis=axis)
        total += float(np.sum(np.sqrt(np.sum(d * d, axis=-1))))
    return total


def read_cube(source) -> Lut3d:
    """Parse a .cube stream or string (see write_cube for the dialect)."""
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw

    size = None
    size_line = 0
    rows: list[list[float]] = []
    data_start_line = 0
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        upper = line.upper()
        if upper.startswith("TITLE"):
            continue
        if upper.startswith("LUT_3D_SIZE"):
            parts = line.split()
            if len(parts) != 2:
                raise CubeParseError(lineno, "LUT_3D_SIZE expects one integer")
            try:
                size = int(parts[1])
            except ValueError:
                raise CubeParseError(lineno, f"bad LUT_3D_SIZE value {parts[1]!r}") from None
            if size < 2:
                raise CubeParseError(lineno, f"LUT_3D_SIZE must be >= 2, got {size}")
            size_line = lineno
            continue
        if upper.startswith("DOMAIN_MIN") or upper.startswith("DOMAIN_MAX"):
            parts = line.split()
            expected = 0.0 if upper.startswith("DOMAIN_MIN") else 1.0
            try:
                values = [float(tok) for tok in parts[1:]]
            except ValueError:
                raise CubeParseError(lineno, f"non-numeric token in {parts[0]}") from None
            if len(values) != 3 or any(v != expected for v in values):
                raise CubeParseError(
                    lineno, f"{parts[0]} must be '{expected:g} {expected:g} {expected:g}'"
                )
            continue
        parts = line.split()
        if len(parts) != 3:
            raise CubeParseError(lineno, f"expected 3 values per data line, got {len(parts)}")
        try:
            rows.append([float(tok) for tok in parts])
        except ValueError:
            raise CubeParseError(lineno, f"non-numeric token in data line: {line!r}") from None
        if data_start_line == 0:
            data_start_line = lineno

    if size is None:
        raise CubeParseError(1, "missing LUT_3D_SIZE")
    expected_rows = size**3
    if len(rows) != expected_rows:
        raise CubeParseError(
            max(size_line, data_start_line),
            f"expected {expected_rows} data lines for LUT_3D_SIZE {size}, got {len(rows)}",
        )
    return Lut3d(size, np.array(rows, dtype=np.float64))


def write_cube(lut: Lut3d, title: str | None = None) -> bytes:
    """Serialize to .cube text: red index fastest, 6 decimal places,
    values clamped to the [0,1] domain.
    """
    out = io.StringIO()
    if title:
        out.write(f'TITLE "{title}"\n')
    out.write(f"LUT_3D_SIZE {lut.size}\n")
    out.write("DOMAIN_MIN 0 0 0\n")
    out.write("DOMAIN_MAX 1 1 1\n")
    clamped = np.clip(lut.table, 0.0, 1.0)
    for r, g, b in clamped:
        out.write(f"{r:.6f} {g:.6f} {b:.6f}\n")
    return out.getvalue().encode("utf-8")
