"""The 2-hidden-layer color MLP: forward pass, exact gradients of a mean-L1
loss, compilation into a Lut3d, image-scale application, and the binary
parameter interchange format.

Layer shapes for N hidden units: W1 (N,3), b1 (N), W2 (N,N), b2 (N),
W3 (3,N), b3 (3); total D = N^2 + 8N + 3 scalars. Hidden activations are
ReLU, the output layer is linear and unclamped (pipelines clamp).
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

from . import backend
from .lut import Lut3d, identity_lut

PARAMS_MAGIC = b"ACM1"


class ParamsFormatError(ValueError):
    """Malformed binary parameter stream."""


def param_count(n_hidden: int) -> int:
    return n_hidden * n_hidden + 8 * n_hidden + 3


@dataclass(frozen=True)
class ColorMlpParams:
    n_hidden: int
    w1: np.ndarray = field(repr=False)
    b1: np.ndarray = field(repr=False)
    w2: np.ndarray = field(repr=False)
    b2: np.ndarray = field(repr=False)
    w3: np.ndarray = field(repr=False)
    b3: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = self.n_hidden
        if n < 1:
            raise ValueError(f"n_hidden must be >= 1, got {n}")
        shapes = {
            "w1": (n, 3), "b1": (n,), "w2": (n, n),
            "b2": (n,), "w3": (3, n), "b3": (3,),
        }
        for name, shape in shapes.items():
            arr = np.ascontiguousarray(getattr(self, name), dtype=np.float64)
            if arr.shape != shape:
                raise ValueError(f"{name} must have shape {shape}, got {arr.shape}")
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} contains non-finite values")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def to_flat(self) -> np.ndarray:
        """Flatten in interchange order: W1 (row-major), b1, W2, b2, W3, b3."""
        return np.concatenate([
            self.w1.ravel(), self.b1, self.w2.ravel(),
            self.b2, self.w3.ravel(), self.b3,
        ])

    @classmethod
    def from_flat(cls, n_hidden: int, flat) -> "ColorMlpParams":
        n = n_hidden
        flat = np.asarray(flat, dtype=np.float64).ravel()
        if flat.size != param_count(n):
            raise ValueError(
                f"expected {param_count(n)} parameters for N={n}, got {flat.size}"
            )
        sizes = [3 * n, n, n * n, n, 3 * n, 3]
        offsets = np.cumsum([0] + sizes)
        parts = [flat[offsets[i]:offsets[i + 1]] for i in range(6)]
        return cls(
            n, parts[0].reshape(n, 3), parts[1], parts[2].reshape(n, n),
            parts[3], parts[4].reshape(3, n), parts[5],
        )


# Gradients share the parameter layout; an alias keeps signatures readable.
MlpGradient = ColorMlpParams


def mlp_forward(color, params: ColorMlpParams) -> np.ndarray:
    """Unclamped forward pass for a single RGB color."""
    return mlp_forward_colors(np.asarray(color, dtype=np.float64).reshape(1, 3), params)[0]


def mlp_forward_colors(colors, params: ColorMlpParams) -> np.ndarray:
    """Unclamped forward pass over a (K, 3) batch."""
    x = np.asarray(colors, dtype=np.float64)
    h1 = np.maximum(x @ params.w1.T + params.b1, 0.0)
    h2 = np.maximum(h1 @ params.w2.T + params.b2, 0.0)
    return h2 @ params.w3.T + params.b3


def mlp_backward(batch, params: ColorMlpParams):
    """Mean-L1 loss over a batch of (input, target) color pairs and its
    exact reverse-mode gradient.

    Subgradient conventions: d|x|/dx = 0 at x = 0 and relu'(0) = 0.
    Accepts either a list of (color, color) pairs or a pair of (K, 3) arrays.
    """
    if isinstance(batch, tuple) and len(batch) == 2:
        x, t = batch
    else:
        if len(batch) == 0:
            raise ValueError("batch must be non-empty")
        x = np.array([p for p, _ in batch], dtype=np.float64)
        t = np.array([q for _, q in batch], dtype=np.float64)
    x = np.asarray(x, dtype=np.float64).reshape(-1, 3)
    t = np.asarray(t, dtype=np.float64).reshape(-1, 3)
    if x.shape[0] == 0:
        raise ValueError("batch must be non-empty")
    if x.shape != t.shape:
        raise ValueError(f"input/target shape mismatch: {x.shape} vs {t.shape}")

    z1 = x @ params.w1.T + params.b1
    h1 = np.maximum(z1, 0.0)
    z2 = h1 @ params.w2.T + params.b2
    h2 = np.maximum(z2, 0.0)
    out = h2 @ params.w3.T + params.b3

    resid = out - t
    loss = float(np.mean(np.abs(resid)))

    g_out = np.sign(resid) / resid.size
    g_w3 = g_out.T @ h2
    g_b3 = g_out.sum(axis=0)
    g_z2 = (g_out @ params.w3) * (z2 > 0.0)
    g_w2 = g_z2.T @ h1
    g_b2 = g_z2.sum(axis=0)
    g_z1 = (g_z2 @ params.w2) * (z1 > 0.0)
    g_w1 = g_z1.T @ x
    g_b1 = g_z1.sum(axis=0)

    grad = ColorMlpParams(params.n_hidden, g_w1, g_b1, g_w2, g_b2, g_w3, g_b3)
    return loss, grad


def compile_lut(params: ColorMlpParams, size: int) -> Lut3d:
    """Evaluate the MLP on the identity lattice, producing an equivalent LUT.

    Cells are stored unclamped.
    """
    base = identity_lut(size)
    return Lut3d(size, mlp_forward_colors(base.table, params))


def apply_mlp_to_colors(colors, params: ColorMlpParams) -> np.ndarray:
    """Clamped forward pass over a (K, 3) batch, via the selected backend."""
    colors = np.ascontiguousarray(colors, dtype=np.float64)
    return np.asarray(backend.mlp_apply_colors(
        colors, params.w1, params.b1, params.w2, params.b2, params.w3, params.b3,
    ))


def save_params(params: ColorMlpParams) -> bytes:
    """Binary interchange: magic "ACM1", u32-le N, then D f32-le values
    in flat order.
    """
    flat = params.to_flat().astype(np.float32)
    return PARAMS_MAGIC + struct.pack("<I", params.n_hidden) + flat.tobytes()


def load_params(data: bytes) -> ColorMlpParams:
    if len(data) < 8:
        raise ParamsFormatError(f"stream too short: {len(data)} bytes, need >= 8")
    if data[:4] != PARAMS_MAGIC:
        raise ParamsFormatError(f"bad magic {data[:4]!r}, expected {PARAMS_MAGIC!r}")
    (n,) = struct.unpack("<I", data[4:8])
    if n == 0:
        raise ParamsFormatError("N must be >= 1, got 0")
    expected = 8 + 4 * param_count(n)
    if len(data) != expected:
        raise ParamsFormatError(
            f"stream length {len(data)} bytes, expected {expected} for N={n}"
        )
    flat = np.frombuffer(data, dtype="<f4", offset=8).astype(np.float64)
    return ColorMlpParams.from_flat(n, flat)
