"""Frozen VGG-19 feature extractor tapping conv1_1 through conv4_1.

Pretrained ImageNet weights are used when available; in offline
environments the stack falls back to a fixed-seed random initialization.
Either way the extractor is frozen and never trained.
"""

import warnings

import torch
import torch.nn as nn

# indices of the relu outputs after conv1_1, conv2_1, conv3_1, conv4_1
# in torchvision's vgg19.features
_TAP_INDICES = (1, 6, 11, 20)
TAP_CHANNELS = (64, 128, 256, 512)


def _build_features(pretrained: bool, seed: int) -> nn.Sequential:
    from torchvision.models import vgg19

    if pretrained:
        from torchvision.models import VGG19_Weights

        model = vgg19(weights=VGG19_Weights.IMAGENET1K_V1)
    else:
        torch.manual_seed(seed)
        model = vgg19(weights=None)
    return model.features[: _TAP_INDICES[-1] + 1]


class VggFeatures(nn.Module):
    """Returns the four tap feature maps for a (B, 3, H, W) batch in [0,1]."""

    def __init__(self, try_pretrained: bool = True, seed: int = 0):
        super().__init__()
        self.pretrained = False
        features = None
        if try_pretrained:
            try:
                features = _build_features(pretrained=True, seed=seed)
                self.pretrained = True
            except Exception as exc:
                warnings.warn(f"pretrained VGG-19 unavailable ({exc}); using frozen random weights")
        if features is None:
            features = _build_features(pretrained=False, seed=seed)
        self.features = features
        for p in self.features.parameters():
            p.requires_grad_(False)
        self.features.eval()
        mean = torch.tensor([0.485, 0.456, 0.406]).view(1, 3, 1, 1)
        std = torch.tensor([0.229, 0.224, 0.225]).view(1, 3, 1, 1)
        self.register_buffer("mean", mean)
        self.register_buffer("std", std)

    def train(self, mode: bool = True):
        # stays frozen in eval mode regardless of the parent module's mode
        super().train(False)
        return self

    def forward(self, x: torch.Tensor) -> list[torch.Tensor]:
        x = (x - self.mean) / self.std
        taps = []
        for i, layer in enumerate(self.features):
            x = layer(x)
            if i in _TAP_INDICES:
                taps.append(x)
        return taps
