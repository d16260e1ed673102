"""Differentiable color MLP driven by a flat predicted parameter vector.

Flat layout (matching the ACM1 interchange format): W1 (N,3) row-major,
b1 (N), W2 (N,N), b2 (N), W3 (3,N), b3 (3); D = N^2 + 8N + 3.
"""

import torch


def param_count(n_hidden: int) -> int:
    return n_hidden * n_hidden + 8 * n_hidden + 3


def split_theta(theta: torch.Tensor, n_hidden: int):
    """(B, D) -> per-layer tensors with a leading batch dimension."""
    n = n_hidden
    if theta.shape[-1] != param_count(n):
        raise ValueError(f"theta has {theta.shape[-1]} values, expected {param_count(n)} for N={n}")
    sizes = [3 * n, n, n * n, n, 3 * n, 3]
    w1, b1, w2, b2, w3, b3 = torch.split(theta, sizes, dim=-1)
    batch = theta.shape[:-1]
    return (
        w1.reshape(*batch, n, 3), b1, w2.reshape(*batch, n, n),
        b2, w3.reshape(*batch, 3, n), b3,
    )


def apply_colormlp(colors: torch.Tensor, theta: torch.Tensor, n_hidden: int) -> torch.Tensor:
    """Evaluate per-sample MLPs: colors (B, K, 3), theta (B, D) -> (B, K, 3).

    Output is unclamped, matching the engine's forward contract.
    """
    w1, b1, w2, b2, w3, b3 = split_theta(theta, n_hidden)
    h = torch.relu(torch.einsum("bkc,bnc->bkn", colors, w1) + b1.unsqueeze(1))
    h = torch.relu(torch.einsum("bkn,bmn->bkm", h, w2) + b2.unsqueeze(1))
    return torch.einsum("bkn,bcn->bkc", h, w3) + b3.unsqueeze(1)


def identity_grid(size: int, device=None) -> torch.Tensor:
    """(size^3, 3) lattice in red-fastest order, matching the .cube layout."""
    axis = torch.linspace(0.0, 1.0, size, device=device)
    b, g, r = torch.meshgrid(axis, axis, axis, indexing="ij")
    return torch.stack([r, g, b], dim=-1).reshape(-1, 3)


def compile_lut_grid(theta: torch.Tensor, n_hidden: int, size: int) -> torch.Tensor:
    """(B, D) -> (B, size, size, size, 3) LUT grids indexed (b, g, r)."""
    grid = identity_grid(size, device=theta.device).to(theta.dtype)
    batch = theta.shape[0]
    out = apply_colormlp(grid.unsqueeze(0).expand(batch, -1, -1), theta, n_hidden)
    return out.reshape(batch, size, size, size, 3)


def stylize_image(image: torch.Tensor, theta: torch.Tensor, n_hidden: int) -> torch.Tensor:
    """Direct pipeline: (B, 3, H, W) in [0,1] -> stylized (B, 3, H, W), clamped."""
    b, c, h, w = image.shape
    colors = image.permute(0, 2, 3, 1).reshape(b, h * w, 3)
    out = apply_colormlp(colors, theta, n_hidden)
    return out.reshape(b, h, w, 3).permute(0, 3, 1, 2).clamp(0.0, 1.0)
