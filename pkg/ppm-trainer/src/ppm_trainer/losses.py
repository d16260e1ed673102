"""Training losses: normalized perceptual content loss, mean/std style
loss, and the two smoothness regularizers (LUT-grid and image-space).
"""

import torch

from .colormlp import compile_lut_grid, stylize_image

CONTENT_LAYERS = (0, 1, 2, 3)
STYLE_LAYERS = (0, 1, 2)


def _spatial_std(f: torch.Tensor, keepdim: bool = False, eps: float = 1e-10):
    # sqrt(var + eps) keeps gradients finite on constant channels
    return (f.var(dim=(2, 3), keepdim=keepdim, unbiased=False) + eps).sqrt()


def _channel_normalize(f: torch.Tensor) -> torch.Tensor:
    mean = f.mean(dim=(2, 3), keepdim=True)
    return (f - mean) / _spatial_std(f, keepdim=True)


def content_loss(feats_cs, feats_c) -> torch.Tensor:
    """Sum over tap layers of L2 distances between channel-normalized maps."""
    total = 0.0
    for i in CONTENT_LAYERS:
        total = total + torch.norm(_channel_normalize(feats_cs[i]) - _channel_normalize(feats_c[i]))
    return total


def style_loss(feats_cs, feats_s) -> torch.Tensor:
    """Sum over the first three tap layers of L2 distances between
    per-channel spatial means and standard deviations.
    """
    total = 0.0
    for i in STYLE_LAYERS:
        cs, s = feats_cs[i], feats_s[i]
        mu_cs = cs.mean(dim=(2, 3))
        mu_s = s.mean(dim=(2, 3))
        sd_cs = _spatial_std(cs)
        sd_s = _spatial_std(s)
        total = total + torch.norm(mu_cs - mu_s) + torch.norm(sd_cs - sd_s)
    return total


def lut_smoothness(grids: torch.Tensor) -> torch.Tensor:
    """Sum over cells of L2 norms of forward-neighbor differences, matching
    the engine's LUT total-variation definition; mean over the batch.
    """
    total = 0.0
    for axis in (1, 2, 3):
        d = torch.diff(grids, dim=axis)
        total = total + (d.pow(2).sum(dim=-1) + 1e-12).sqrt().sum(dim=(1, 2, 3))
    return total.mean()


def image_smoothness(images: torch.Tensor) -> torch.Tensor:
    """Mean L2 norm of RGB differences over adjacent pixel pairs; (B,3,H,W)."""
    dh = torch.diff(images, dim=3)
    dv = torch.diff(images, dim=2)
    norms = torch.cat([
        (dh.pow(2).sum(dim=1) + 1e-12).sqrt().flatten(1),
        (dv.pow(2).sum(dim=1) + 1e-12).sqrt().flatten(1),
    ], dim=1)
    return norms.mean()


def total_loss(vgg, content, style, theta, cfg):
    """Weighted sum of content, style, and regularization terms.

    Returns (total, parts) where parts holds the unweighted components.
    """
    stylized = stylize_image(content, theta, cfg.n_hidden)
    feats_c = vgg(content)
    feats_s = vgg(style)
    feats_cs = vgg(stylized)

    l_c = content_loss(feats_cs, feats_c) if cfg.lambda_content > 0 else content.new_zeros(())
    l_s = style_loss(feats_cs, feats_s) if cfg.lambda_style > 0 else content.new_zeros(())
    if cfg.lambda_reg > 0:
        grids = compile_lut_grid(theta, cfg.n_hidden, cfg.lut_reg_size)
        reg = lut_smoothness(grids) + image_smoothness(stylized)
    else:
        reg = content.new_zeros(())

    total = cfg.lambda_content * l_c + cfg.lambda_style * l_s + cfg.lambda_reg * reg
    return total, {"content": l_c, "style": l_s, "reg": reg, "stylized": stylized}
