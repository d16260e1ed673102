"""Hypernetwork trainer that predicts color-MLP parameters from
content/style image pairs and exports them in the ACM1 interchange format.
"""

from .colormlp import apply_colormlp, compile_lut_grid, param_count
from .export import load_acm1, save_acm1
from .losses import content_loss, lut_smoothness, image_smoothness, style_loss, total_loss
from .network import PpmConfig, PpmNetwork
from .vgg import VggFeatures

__all__ = [
    "PpmConfig",
    "PpmNetwork",
    "VggFeatures",
    "apply_colormlp",
    "compile_lut_grid",
    "content_loss",
    "image_smoothness",
    "load_acm1",
    "lut_smoothness",
    "param_count",
    "save_acm1",
    "style_loss",
    "total_loss",
]
