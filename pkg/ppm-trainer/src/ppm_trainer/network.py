"""Parameter prediction network.

Content and style images pass through a frozen VGG-19 feature stack; three
splatting blocks (weight-sharing stride-2 conv, AdaIN alignment, stride-1
integration conv) fuse the two streams across scales; local and global
branches are fused and pooled into a single head that emits the flat
color-MLP parameter vector.

Layer widths follow the reference table for 256x256 inputs: splatting
channels 32/64/128, fusion 128, local 256, global convs 128 with two
256-wide fully-connected layers, final head D = N^2 + 8N + 3.
"""

from dataclasses import dataclass

import torch
import torch.nn as nn

from .colormlp import param_count
from .vgg import TAP_CHANNELS, VggFeatures


@dataclass(frozen=True)
class PpmConfig:
    resolution: int = 256
    n_hidden: int = 20
    lambda_content: float = 1.0
    lambda_style: float = 1.0
    lambda_reg: float = 1.0
    learning_rate: float = 1e-4
    steps: int = 200
    batch_size: int = 2
    lut_reg_size: int = 33
    seed: int = 0

    def __post_init__(self):
        if min(self.lambda_content, self.lambda_style, self.lambda_reg) < 0:
            raise ValueError("loss weights must be >= 0")
        if self.resolution % 32 != 0:
            raise ValueError("resolution must be a multiple of 32")


def adain(content: torch.Tensor, style: torch.Tensor, eps: float = 1e-10) -> torch.Tensor:
    """Align per-channel spatial mean/std of content features to style's."""
    c_mean = content.mean(dim=(2, 3), keepdim=True)
    c_std = (content.var(dim=(2, 3), keepdim=True, unbiased=False) + eps).sqrt()
    s_mean = style.mean(dim=(2, 3), keepdim=True)
    s_std = (style.var(dim=(2, 3), keepdim=True, unbiased=False) + eps).sqrt()
    return s_std * (content - c_mean) / c_std + s_mean


class SplattingBlock(nn.Module):
    """Stride-2 conv shared across both streams, AdaIN on the content side,
    then a stride-1 conv integrating the AdaIN-aligned VGG tap of the next
    scale into each stream.
    """

    def __init__(self, in_ch: int, out_ch: int, skip_ch: int):
        super().__init__()
        self.down = nn.Conv2d(in_ch, out_ch, 3, stride=2, padding=1)
        self.integrate = nn.Conv2d(out_ch + skip_ch, out_ch, 3, stride=1, padding=1)
        self.act = nn.ReLU(inplace=True)

    def forward(self, content, style, content_skip, style_skip):
        c = self.act(self.down(content))
        s = self.act(self.down(style))
        c = adain(c, s)
        c = self.act(self.integrate(torch.cat([c, adain(content_skip, style_skip)], dim=1)))
        s = self.act(self.integrate(torch.cat([s, style_skip], dim=1)))
        return c, s


class PpmNetwork(nn.Module):
    def __init__(self, cfg: PpmConfig = PpmConfig(), try_pretrained: bool = True):
        super().__init__()
        self.cfg = cfg
        self.vgg = VggFeatures(try_pretrained=try_pretrained, seed=cfg.seed)

        ch1, ch2, ch3, ch4 = TAP_CHANNELS
        self.splat1 = SplattingBlock(ch1, 32, ch2)
        self.splat2 = SplattingBlock(32, 64, ch3)
        self.splat3 = SplattingBlock(64, 128, ch4)

        self.fusion_down = nn.Sequential(
            nn.Conv2d(128, 128, 3, stride=2, padding=1), nn.ReLU(inplace=True),
            nn.Conv2d(128, 128, 3, stride=1, padding=1), nn.ReLU(inplace=True),
        )
        self.local = nn.Sequential(
            nn.Conv2d(128, 256, 3, stride=1, padding=1), nn.ReLU(inplace=True),
            nn.Conv2d(256, 256, 3, stride=1, padding=1), nn.ReLU(inplace=True),
        )
        self.global_convs = nn.Sequential(
            nn.Conv2d(128, 128, 3, stride=2, padding=1), nn.ReLU(inplace=True),
            nn.Conv2d(128, 128, 3, stride=2, padding=1), nn.ReLU(inplace=True),
            nn.Conv2d(128, 128, 3, stride=2, padding=1), nn.ReLU(inplace=True),
        )
        global_spatial = cfg.resolution // 16  # fused map side
        for _ in range(3):  # three stride-2 convs with padding 1
            global_spatial = (global_spatial + 1) // 2
        self.global_fc = nn.Sequential(
            nn.Linear(128 * global_spatial * global_spatial, 256), nn.ReLU(inplace=True),
            nn.Linear(256, 256), nn.ReLU(inplace=True),
        )
        self.fuse = nn.Sequential(
            nn.Conv2d(256 + 256, 256, 1), nn.ReLU(inplace=True),
            nn.Conv2d(256, 256, (3, 1), padding=(1, 0)), nn.ReLU(inplace=True),
        )
        self.head = nn.Linear(256, param_count(cfg.n_hidden))

    def trainable_parameters(self):
        return [p for p in self.parameters() if p.requires_grad]

    def forward(self, content: torch.Tensor, style: torch.Tensor) -> torch.Tensor:
        """(B, 3, H, W) content/style in [0,1] -> (B, D) flat parameters."""
        fc = self.vgg(content)
        fs = self.vgg(style)

        c, s = self.splat1(fc[0], fs[0], fc[1], fs[1])
        c, s = self.splat2(c, s, fc[2], fs[2])
        c, _ = self.splat3(c, s, fc[3], fs[3])

        fused = self.fusion_down(c)
        local = self.local(fused)
        g = self.global_convs(fused)
        g = self.global_fc(g.flatten(1))
        g_map = g.unsqueeze(-1).unsqueeze(-1).expand(-1, -1, local.shape[2], local.shape[3])
        mixed = self.fuse(torch.cat([local, g_map], dim=1))
        summary = mixed.mean(dim=(2, 3))  # global average pooling
        return self.head(summary)
