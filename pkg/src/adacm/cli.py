"""Command-line interface.

Subcommands: fit | sweep | compile | apply | psnr | tv | bench.
Exit codes: 0 success, 1 usage error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import bench as bench_mod
from .fitter import FitConfig, fit_mlp_to_lut, format_report, sweep_hidden_units
from .lut import read_cube, write_cube
from .metrics import avg_l1_255, format_metric, psnr, tv_image
from .mlp import compile_lut, load_params, save_params
from .pipeline import (
    apply_lut_to_image,
    apply_mlp_to_image,
    list_frames,
    load_png,
    run_sequence,
    save_png,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="adacm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="distill a .cube LUT into an MLP parameter file")
    p.add_argument("--lut", required=True, help="reference .cube file")
    p.add_argument("--n", type=int, default=20, help="hidden units per layer")
    p.add_argument("--out", required=True, help="output .acm1 parameter file")
    p.add_argument("--report", help="optional fit report file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=int, default=30000)
    p.add_argument("--batch", type=int, default=4096)
    p.add_argument("--lr", type=float, default=1e-3)

    p = sub.add_parser("sweep", help="fit once per hidden-unit count, emit CSV")
    p.add_argument("--lut", required=True)
    p.add_argument("--n", type=_int_list, default=[5, 10, 20], help="comma-separated N values")
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=int, default=30000)
    p.add_argument("--batch", type=int, default=4096)
    p.add_argument("--lr", type=float, default=1e-3)

    p = sub.add_parser("compile", help="compile an MLP parameter file into a .cube LUT")
    p.add_argument("--params", required=True)
    p.add_argument("--size", type=int, default=33)
    p.add_argument("--out", required=True)

    p = sub.add_parser("apply", help="apply a LUT or MLP to a PNG image or frame directory")
    p.add_argument("--lut", help=".cube LUT to apply")
    p.add_argument("--params", help=".acm1 MLP parameters (direct pipeline)")
    p.add_argument("--size", type=int, default=33, help="LUT size for frame sequences")
    p.add_argument("--in", dest="input", required=True, help="input PNG or frame directory")
    p.add_argument("--out", required=True, help="output PNG or directory")

    p = sub.add_parser("psnr", help="PSNR and scaled L1 between two PNGs")
    p.add_argument("images", nargs=2, metavar="PNG")

    p = sub.add_parser("tv", help="total variation of a LUT or image")
    p.add_argument("--lut", help=".cube file")
    p.add_argument("--in", dest="input", help="PNG image")

    p = sub.add_parser("bench", help="time the pipelines on synthetic images, emit CSV")
    p.add_argument("--params", help="optional .acm1 file (default: random N=20 model)")
    p.add_argument("--size", type=int, default=33)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument(
        "--resolutions", type=_int_list,
        default=list(bench_mod.DEFAULT_RESOLUTIONS),
        help="comma-separated image side lengths",
    )
    p.add_argument("--out", help="CSV output path (default stdout)")
    return parser


def _load_lut(path):
    return read_cube(Path(path).read_bytes())


def _load_params(path):
    return load_params(Path(path).read_bytes())


def _fit_config(args, n_hidden) -> FitConfig:
    return FitConfig(
        n_hidden=n_hidden, steps=args.steps, batch_size=args.batch,
        learning_rate=args.lr, rng_seed=args.seed,
    )


def _cmd_fit(args) -> int:
    lut = _load_lut(args.lut)
    report = fit_mlp_to_lut(lut, _fit_config(args, args.n))
    Path(args.out).write_bytes(save_params(report.final_params))
    if args.report:
        Path(args.report).write_text(format_report(report))
    print(f"final_error_255 {report.final_error_255:.4f}")
    return 0


def _cmd_sweep(args) -> int:
    lut = _load_lut(args.lut)
    results = sweep_hidden_units(lut, args.n, _fit_config(args, args.n[0]))
    lines = ["N,error_255"] + [f"{n},{err:.4f}" for n, err in results]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_compile(args) -> int:
    params = _load_params(args.params)
    lut = compile_lut(params, args.size)
    Path(args.out).write_bytes(write_cube(lut))
    return 0


def _cmd_apply(args) -> int:
    if bool(args.lut) == bool(args.params):
        raise UsageError("apply needs exactly one of --lut or --params")
    in_path = Path(args.input)
    if in_path.is_dir():
        if args.lut:
            raise UsageError("frame sequences need --params (the LUT is compiled per clip)")
        params = _load_params(args.params)
        outputs = run_sequence(list_frames(in_path), params, args.size, args.out)
        print(f"wrote {len(outputs)} frames to {args.out}")
        return 0
    img = load_png(in_path)
    if args.lut:
        out = apply_lut_to_image(img, _load_lut(args.lut))
    else:
        out = apply_mlp_to_image(img, _load_params(args.params))
    save_png(out, args.out)
    return 0


def _cmd_psnr(args) -> int:
    a = load_png(args.images[0])
    b = load_png(args.images[1])
    print(f"psnr {format_metric(psnr(a, b))}")
    print(f"avg_l1_255 {format_metric(avg_l1_255(a, b))}")
    return 0


def _cmd_tv(args) -> int:
    if bool(args.lut) == bool(args.input):
        raise UsageError("tv needs exactly one of --lut or --in")
    if args.lut:
        from .lut import tv_lut

        value = tv_lut(_load_lut(args.lut))
    else:
        value = tv_image(load_png(args.input))
    print(format_metric(value))
    return 0


def _cmd_bench(args) -> int:
    if args.params:
        params = _load_params(args.params)
    else:
        from .fitter import init_params

        params = init_params(20, np.random.default_rng(args.seed))
    results = bench_mod.run_bench(
        params, resolutions=args.resolutions, lut_size=args.size,
        reps=args.reps, threads=args.threads, seed=args.seed,
    )
    text = bench_mod.format_csv(results)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


_COMMANDS = {
    "fit": _cmd_fit,
    "sweep": _cmd_sweep,
    "compile": _cmd_compile,
    "apply": _cmd_apply,
    "psnr": _cmd_psnr,
    "tv": _cmd_tv,
    "bench": _cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"adacm: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"adacm: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:
        print(f"adacm: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
