"""In-memory RGB images: unit-domain float64, (H, W, 3) row-major."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Image:
    pixels: np.ndarray = field(repr=False)  # (H, W, 3) float64

    def __post_init__(self):
        arr = np.ascontiguousarray(self.pixels, dtype=np.float64)
        if arr.ndim != 3 or arr.shape[2] != 3 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"expected (H, W, 3) pixel array, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("pixel values must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    def flat_colors(self) -> np.ndarray:
        return self.pixels.reshape(-1, 3)

    @classmethod
    def from_flat(cls, colors: np.ndarray, height: int, width: int) -> "Image":
        return cls(np.asarray(colors).reshape(height, width, 3))

    @classmethod
    def from_uint8(cls, arr: np.ndarray) -> "Image":
        return cls(arr.astype(np.float64) / 255.0)

    def to_uint8(self) -> np.ndarray:
        return np.clip(np.round(self.pixels * 255.0), 0, 255).astype(np.uint8)
