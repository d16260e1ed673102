import numpy as np
import pytest
import torch
from PIL import Image

from ppm_trainer.network import PpmConfig, PpmNetwork

torch.set_num_threads(max(1, torch.get_num_threads()))


@pytest.fixture(scope="session")
def toy_images(tmp_path_factory):
    """16 small synthetic RGB photos (sinusoid gradients + noise)."""
    root = tmp_path_factory.mktemp("toy_images")
    rng = np.random.default_rng(7)
    for k in range(16):
        x = np.linspace(0, 1, 96)
        X, Y = np.meshgrid(x, x)
        f1, f2, ph = rng.uniform(1, 6, 3)
        base = np.stack([
            0.5 + 0.45 * np.sin(2 * np.pi * (f1 * X + ph)),
            0.5 + 0.45 * np.cos(2 * np.pi * (f2 * Y - ph)),
            0.5 + 0.45 * np.sin(2 * np.pi * (f1 * X * Y + f2)),
        ], axis=-1)
        img = np.clip(base + rng.normal(0, 0.05, base.shape), 0, 1)
        Image.fromarray((img * 255).round().astype(np.uint8)).save(root / f"im{k:02d}.png")
    return root


@pytest.fixture(scope="session")
def small_cfg():
    return PpmConfig(resolution=64, seed=3)


@pytest.fixture(scope="session")
def small_net(small_cfg):
    torch.manual_seed(small_cfg.seed)
    return PpmNetwork(small_cfg, try_pretrained=False)
