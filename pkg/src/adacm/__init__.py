"""adacm: tiny color MLPs, 3D LUT compilation, and fast image application."""

from .backend import BACKEND_NAME
from .fitter import DivergenceError, FitConfig, FitReport, fit_mlp_to_lut, sweep_hidden_units
from .image import Image
from .lut import (
    CubeParseError,
    Lut3d,
    identity_lut,
    lut_apply,
    lut_apply_colors,
    read_cube,
    tv_lut,
    write_cube,
)
from .metrics import avg_l1_255, psnr, tv_image
from .mlp import (
    ColorMlpParams,
    ParamsFormatError,
    compile_lut,
    load_params,
    mlp_backward,
    mlp_forward,
    param_count,
    save_params,
)
from .pipeline import (
    ImageIoError,
    apply_lut_to_image,
    apply_mlp_to_image,
    load_png,
    run_direct,
    run_fast,
    run_sequence,
    save_png,
)

__all__ = [
    "BACKEND_NAME",
    "ColorMlpParams",
    "CubeParseError",
    "DivergenceError",
    "FitConfig",
    "FitReport",
    "Image",
    "ImageIoError",
    "Lut3d",
    "ParamsFormatError",
    "apply_lut_to_image",
    "apply_mlp_to_image",
    "avg_l1_255",
    "compile_lut",
    "fit_mlp_to_lut",
    "identity_lut",
    "load_params",
    "load_png",
    "lut_apply",
    "lut_apply_colors",
    "mlp_backward",
    "mlp_forward",
    "param_count",
    "psnr",
    "read_cube",
    "run_direct",
    "run_fast",
    "run_sequence",
    "save_params",
    "save_png",
    "tv_image",
    "tv_lut",
    "write_cube",
]
