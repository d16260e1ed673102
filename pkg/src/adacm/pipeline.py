"""PNG ingress/egress and the two end-to-end color pipelines.

"Direct" evaluates the MLP on every pixel; "fast" compiles the MLP into a
3D LUT once and applies the LUT per pixel. Frame sequences reuse one
compiled LUT across all frames, so identical frames map to identical
outputs.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np
from PIL import Image as PilImage

from .image import Image
from .lut import Lut3d, lut_apply_colors
from .mlp import ColorMlpParams, apply_mlp_to_colors, compile_lut


class ImageIoError(IOError):
    pass


_PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"


def _png_bit_depth(path: Path) -> int:
    # IHDR is always the first chunk; bit depth sits at byte 24.
    with open(path, "rb") as fh:
        header = fh.read(25)
    if len(header) < 25 or not header.startswith(_PNG_SIGNATURE):
        raise ImageIoError(f"{path}: not a PNG file")
    return header[24]


def load_png(path) -> Image:
    """Load an 8-bit RGB or RGBA PNG; alpha is dropped."""
    path = Path(path)
    try:
        depth = _png_bit_depth(path)
    except OSError as exc:
        if isinstance(exc, ImageIoError):
            raise
        raise ImageIoError(f"{path}: {exc}") from exc
    if depth != 8:
        raise ImageIoError(f"{path}: unsupported bit depth {depth}, need 8")
    try:
        with PilImage.open(path) as im:
            if im.mode == "RGBA":
                im = im.convert("RGB")
            if im.mode != "RGB":
                raise ImageIoError(f"{path}: unsupported mode {im.mode}, need RGB or RGBA")
            arr = np.asarray(im, dtype=np.uint8)
    except ImageIoError:
        raise
    except Exception as exc:
        raise ImageIoError(f"{path}: {exc}") from exc
    return Image.from_uint8(arr)


def save_png(img: Image, path):
    """Write as 8-bit RGB PNG (atomic: temp file + rename)."""
    path = Path(path)
    tmp = path.with_name(path.name + f".tmp{os.getpid()}")
    try:
        PilImage.fromarray(img.to_uint8(), mode="RGB").save(tmp, format="PNG")
        os.replace(tmp, path)
    except Exception as exc:
        tmp.unlink(missing_ok=True)
        raise ImageIoError(f"{path}: {exc}") from exc


def apply_lut_to_image(img: Image, lut: Lut3d) -> Image:
    return Image.from_flat(lut_apply_colors(img.flat_colors(), lut), img.height, img.width)


def apply_mlp_to_image(img: Image, params: ColorMlpParams) -> Image:
    return Image.from_flat(apply_mlp_to_colors(img.flat_colors(), params), img.height, img.width)


def run_direct(img: Image, params: ColorMlpParams) -> Image:
    """Per-pixel MLP evaluation (the training-time pipeline)."""
    return apply_mlp_to_image(img, params)


def run_fast(img: Image, params: ColorMlpParams, size: int = 33) -> Image:
    """Compile the MLP into a LUT once, then apply the LUT per pixel."""
    return apply_lut_to_image(img, compile_lut(params, size))


def list_frames(directory) -> list[Path]:
    """Lexicographically sorted *.png paths of a frame-sequence directory."""
    directory = Path(directory)
    frames = sorted(p for p in directory.glob("*.png") if p.is_file())
    if not frames:
        raise ValueError(f"no .png frames found in {directory}")
    return frames


def run_sequence(frames, params: ColorMlpParams, size: int, out_dir) -> list[Path]:
    """Apply one compiled LUT to every frame; outputs mirror input basenames.

    All frames must share dimensions; a mismatch names the offending frame.
    """
    frames = [Path(f) for f in frames]
    if not frames:
        raise ValueError("frame sequence is empty")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    lut = compile_lut(params, size)
    dims = None
    outputs = []
    for frame in frames:
        img = load_png(frame)
        if dims is None:
            dims = (img.width, img.height)
        elif (img.width, img.height) != dims:
            raise ValueError(
                f"frame {frame} is {img.width}x{img.height}, expected {dims[0]}x{dims[1]}"
            )
        out_path = out_dir / frame.name
        save_png(apply_lut_to_image(img, lut), out_path)
        outputs.append(out_path)
    return outputs
