"""Toy dataset: a directory of RGB images, sampled into random
content/style pairs at the configured low resolution.
"""

from pathlib import Path

import numpy as np
import torch
from PIL import Image

EXTENSIONS = {".png", ".jpg", ".jpeg", ".bmp"}


class PairSampler:
    def __init__(self, image_dir, resolution: int, seed: int = 0):
        self.paths = sorted(
            p for p in Path(image_dir).iterdir() if p.suffix.lower() in EXTENSIONS
        )
        if len(self.paths) < 2:
            raise ValueError(f"need at least 2 images in {image_dir}, found {len(self.paths)}")
        self.resolution = resolution
        self.rng = np.random.default_rng(seed)
        self._cache: dict[Path, torch.Tensor] = {}

    def _load(self, path) -> torch.Tensor:
        if path not in self._cache:
            with Image.open(path) as im:
                im = im.convert("RGB").resize((self.resolution, self.resolution), Image.BILINEAR)
                arr = np.asarray(im, dtype=np.float32) / 255.0
            self._cache[path] = torch.from_numpy(arr).permute(2, 0, 1)
        return self._cache[path]

    def sample_batch(self, batch_size: int):
        """Returns (content, style) tensors of shape (B, 3, R, R)."""
        contents, styles = [], []
        for _ in range(batch_size):
            i, j = self.rng.choice(len(self.paths), size=2, replace=False)
            contents.append(self._load(self.paths[i]))
            styles.append(self._load(self.paths[j]))
        return torch.stack(contents), torch.stack(styles)
