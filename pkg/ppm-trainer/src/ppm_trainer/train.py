"""Training loop: Adam over the prediction network's weights (the VGG
extractor stays frozen), CSV loss logging, and periodic ACM1 exports of
predicted parameters.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import torch

from .data import PairSampler
from .export import save_acm1
from .losses import total_loss
from .network import PpmConfig, PpmNetwork

LOG_HEADER = "step,loss_c,loss_s,reg,total"


def train(
    image_dir,
    cfg: PpmConfig = PpmConfig(),
    out_dir="ppm_out",
    export_every: int = 0,
    try_pretrained: bool = True,
):
    """Returns (network, log_rows); writes loss.csv, checkpoint.pt, and
    exported .acm1 samples under out_dir.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    torch.manual_seed(cfg.seed)

    sampler = PairSampler(image_dir, cfg.resolution, seed=cfg.seed)
    net = PpmNetwork(cfg, try_pretrained=try_pretrained)
    optimizer = torch.optim.Adam(net.trainable_parameters(), lr=cfg.learning_rate)

    if export_every <= 0:
        export_every = max(1, cfg.steps // 4)

    rows = [LOG_HEADER]
    for step in range(1, cfg.steps + 1):
        content, style = sampler.sample_batch(cfg.batch_size)
        theta = net(content, style)
        loss, parts = total_loss(net.vgg, content, style, theta, cfg)
        if not torch.isfinite(loss):
            raise RuntimeError(f"non-finite loss at step {step}")
        optimizer.zero_grad()
        loss.backward()
        optimizer.step()

        rows.append(
            f"{step},{parts['content'].item():.6f},{parts['style'].item():.6f},"
            f"{parts['reg'].item():.6f},{loss.item():.6f}"
        )
        if step % export_every == 0 or step == cfg.steps:
            export_sample(net, sampler, out_dir / f"step_{step:06d}.acm1")

    (out_dir / "loss.csv").write_text("\n".join(rows) + "\n")
    torch.save({"config": cfg.__dict__, "state_dict": net.state_dict()},
               out_dir / "checkpoint.pt")
    return net, rows


@torch.no_grad()
def export_sample(net: PpmNetwork, sampler: PairSampler, path):
    net.eval()
    content, style = sampler.sample_batch(1)
    theta = net(content, style)[0].cpu().numpy()
    save_acm1(theta, net.cfg.n_hidden, path)
    net.train()


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data", required=True, help="directory of RGB images")
    parser.add_argument("--out-dir", default="ppm_out")
    parser.add_argument("--steps", type=int, default=200)
    parser.add_argument("--batch", type=int, default=2)
    parser.add_argument("--resolution", type=int, default=256)
    parser.add_argument("--n", type=int, default=20)
    parser.add_argument("--lambda-c", type=float, required=True)
    parser.add_argument("--lambda-s", type=float, required=True)
    parser.add_argument("--lambda-r", type=float, required=True)
    parser.add_argument("--lr", type=float, default=1e-4)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--export-every", type=int, default=0)
    parser.add_argument("--no-pretrained", action="store_true",
                        help="skip the pretrained VGG download; use frozen random weights")
    args = parser.parse_args(argv)

    cfg = PpmConfig(
        resolution=args.resolution, n_hidden=args.n,
        lambda_content=args.lambda_c, lambda_style=args.lambda_s,
        lambda_reg=args.lambda_r, learning_rate=args.lr,
        steps=args.steps, batch_size=args.batch, seed=args.seed,
    )
    try:
        _, rows = train(args.data, cfg, out_dir=args.out_dir,
                        export_every=args.export_every,
                        try_pretrained=not args.no_pretrained)
    except RuntimeError as exc:
        print(f"ppm-train: {exc}", file=sys.stderr)
        return 2
    print(rows[-1])
    return 0


if __name__ == "__main__":
    sys.exit(main())
