"""Command-line interface: inpainting pipelines, decomposition, synthesis,
transforms, and metrics.

Exit codes: 0 on success, 1 on usage errors (bad flags, missing or malformed
inputs), 2 on numeric failures during computation.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .core import QArray, Quaternion, fro_norm
from .image import ColorImage, center_crop, largest_power_side, load_image, save_image
from .masks import MaskSpec, make_mask
from .metrics import psnr, ssim
from .qka import QkaPlan, qka_forward, qka_inverse, qka_video_forward, qka_video_inverse
from .qten import load_qten, save_qten
from .solver import ObservationSet, SolverConfig, complete
from .tensor_train import QTTCores, tt_reconstruct, tt_svd
from .transforms import TRANSFORM_KINDS, DEFAULT_MU, make_transform

__all__ = ["main"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _parse_ints(text: str) -> tuple:
    try:
        values = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")
    if not values or any(v < 1 for v in values):
        raise UsageError(f"expected positive integers, got {text!r}")
    return values


def _parse_mu(text: str) -> Quaternion:
    try:
        x, y, z = (float(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"--mu expects three comma-separated floats, got {text!r}")
    norm = math.sqrt(x * x + y * y + z * z)
    if norm == 0.0:
        raise UsageError("--mu axis must be nonzero")
    return Quaternion(0.0, x / norm, y / norm, z / norm)


def _json_value(value):
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return value


def _write_json(path, doc) -> None:
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _solver_config(args, n_modes_hint=None) -> SolverConfig:
    return SolverConfig(
        lambdas=args.lam,
        mu0=args.mu0,
        rho=args.rho,
        mu_max=args.mu_max,
        tol=args.tol,
        max_iter=args.max_iter,
        shrink_c=args.shrink_c,
        shrink_eps=args.shrink_eps,
        seed=args.seed,
    )


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lambda", dest="lam", type=float, default=0.01,
                   help="l1 weight in the transform domain (default 0.01)")
    p.add_argument("--mu0", type=float, default=2.5e-3)
    p.add_argument("--rho", type=float, default=1.08)
    p.add_argument("--mu-max", dest="mu_max", type=float, default=1e6)
    p.add_argument("--tol", type=float, default=1e-5)
    p.add_argument("--max-iter", dest="max_iter", type=int, default=500)
    p.add_argument("--shrink-c", dest="shrink_c", type=float, default=1.0)
    p.add_argument("--shrink-eps", dest="shrink_eps", type=float, default=1e-2)


def _add_mask_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mask-sr", dest="mask_sr", type=float, default=None,
                   help="sampling rate in (0, 1]: each entry kept with this probability")
    p.add_argument("--mask-file", dest="mask_file", default=None,
                   help="grayscale mask image; pixel 0 means missing")
    p.add_argument("--seed", type=int, default=0)


def _mask_spec(args) -> MaskSpec:
    if args.mask_sr is not None and args.mask_file is not None:
        raise UsageError("--mask-sr and --mask-file are mutually exclusive")
    if args.mask_file is not None:
        if not Path(args.mask_file).is_file():
            raise UsageError(f"mask file not found: {args.mask_file}")
        return MaskSpec(kind="file", path=args.mask_file)
    sr = 1.0 if args.mask_sr is None else args.mask_sr
    if not 0.0 < sr <= 1.0:
        raise UsageError("--mask-sr must lie in (0, 1]")
    return MaskSpec(kind="random", sr=sr, seed=args.seed)


def _require_file(path, what) -> None:
    if not Path(path).is_file():
        raise UsageError(f"{what} not found: {path}")


def _load_input(loader, path):
    """Read an input artifact; malformed inputs are usage errors, not numeric ones."""
    try:
        return loader(path)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


# -- subcommands ------------------------------------------------------------


def _cmd_inpaint_image(args) -> int:
    _require_file(args.infile, "input image")
    img = _load_input(load_image, args.infile)
    base = args.qka_base
    if args.qka_order is not None:
        side = base**args.qka_order
        if side > min(img.height, img.width):
            raise UsageError(f"--qka-order {args.qka_order} needs a "
                             f"{side} x {side} image")
    else:
        side = largest_power_side(img.height, img.width, base)
    ref = center_crop(img, side)

    mask2d = _load_input(lambda s: make_mask((side, side), s), _mask_spec(args))
    observed = ColorImage(QArray(np.where(mask2d, ref.qmatrix.planes, 0.0)))

    plan = QkaPlan.for_image((side, side), base)
    # solve on [0, 1]-scaled data; the shrinkage constants assume unit scale
    tvals = qka_forward(QArray(observed.qmatrix.planes / 255.0), plan)
    tmask = plan.apply_to_array(mask2d)
    spec = make_transform(plan.target_dims, args.transform, args.mu)
    x, diag = complete(ObservationSet(tvals, tmask), spec, _solver_config(args))

    rec_planes = qka_inverse(x, plan).planes * 255.0
    rec = ColorImage.from_rgb(np.rint(np.clip(
        np.stack([rec_planes[1], rec_planes[2], rec_planes[3]], axis=-1), 0.0, 255.0)))
    save_image(rec, args.out)

    if args.metrics:
        rounded = ColorImage.from_rgb(rec.to_uint8())
        _write_json(args.metrics, {
            "psnr_db": _json_value(psnr(ref, rounded)),
            "ssim": ssim(ref, rounded),
            "iterations": diag["iterations"],
            "final_residual": diag["final_residual"],
            "wall_time_ms": diag["wall_time_ms"],
        })
    if args.diagnostics:
        _write_json(args.diagnostics, {
            "iterations": diag["iterations"],
            "final_residual": diag["final_residual"],
            "residual_history": diag["residual_history"],
            "wall_time_ms": diag["wall_time_ms"],
            "config_echo": diag["config_echo"],
        })
    return 0


def _frame_paths(directory) -> list:
    frames = sorted(p for p in Path(directory).iterdir()
                    if p.suffix.lower() == ".png")
    if not frames:
        raise UsageError(f"no PNG frames found in {directory}")
    return frames


def _cmd_inpaint_video(args) -> int:
    if not Path(args.frames).is_dir():
        raise UsageError(f"frame directory not found: {args.frames}")
    paths = _frame_paths(args.frames)
    images = [_load_input(load_image, p) for p in paths]
    base = args.qka_base
    side = min(largest_power_side(im.height, im.width, base) for im in images)
    refs = [center_crop(im, side) for im in images]
    video = QArray(np.stack([im.qmatrix.planes for im in refs], axis=-1))

    dims = (side, side, len(refs))
    mask = _load_input(lambda s: make_mask(dims, s), _mask_spec(args))
    observed = QArray(np.where(mask, video.planes, 0.0))

    plan = QkaPlan.for_video(dims, base)
    tvals = qka_video_forward(QArray(observed.planes / 255.0), plan)
    tmask = plan.apply_to_array(mask)
    spec = make_transform(plan.target_dims, args.transform, args.mu)
    x, diag = complete(ObservationSet(tvals, tmask), spec, _solver_config(args))

    rec_planes = qka_video_inverse(x, plan).planes * 255.0
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    psnrs, ssims = [], []
    for f in range(len(refs)):
        rgb = np.rint(np.clip(np.stack([rec_planes[1, :, :, f],
                                        rec_planes[2, :, :, f],
                                        rec_planes[3, :, :, f]], axis=-1), 0.0, 255.0))
        frame = ColorImage.from_rgb(rgb)
        save_image(frame, out_dir / f"frame_{f:04d}.png")
        scored = ColorImage.from_rgb(frame.to_uint8())
        psnrs.append(psnr(refs[f], scored))
        ssims.append(ssim(refs[f], scored))

    if args.metrics:
        mean_psnr = float("inf") if any(math.isinf(p) for p in psnrs) \
            else float(np.mean(psnrs))
        _write_json(args.metrics, {
            "psnr_db": _json_value(mean_psnr),
            "ssim": float(np.mean(ssims)),
            "iterations": diag["iterations"],
            "final_residual": diag["final_residual"],
            "wall_time_ms": diag["wall_time_ms"],
        })
    return 0


def _cmd_decompose(args) -> int:
    _require_file(args.infile, "input tensor")
    x = _load_input(load_qten, args.infile)
    cores = tt_svd(x, args.tol)
    interior = list(cores.ranks[1:-1])
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for idx, core in enumerate(cores.cores):
        save_qten(out_dir / f"core_{idx:02d}.qten", core)
    _write_json(out_dir / "ranks.json", {"ranks": interior, "dims": list(x.dims)})
    print("qtt-ranks:", ",".join(str(r) for r in interior))
    return 0


def _cmd_synth(args) -> int:
    dims = _parse_ints(args.dims)
    ranks = _parse_ints(args.ranks)
    if len(ranks) != len(dims) - 1:
        raise UsageError(f"need {len(dims) - 1} ranks for {len(dims)} dims")
    rng = np.random.default_rng(args.seed)
    chain = (1,) + ranks + (1,)
    cores = QTTCores([QArray.random((chain[i], dims[i], chain[i + 1]), rng, normal=True)
                      for i in range(len(dims))])
    x = tt_reconstruct(cores)
    norm = fro_norm(x)
    if norm == 0.0:
        raise ValueError("synthesized tensor is zero")
    x = x / norm  # unit scale, ready for the completion defaults
    save_qten(args.out, x)
    print("dims:", ",".join(map(str, dims)), "ranks:", ",".join(map(str, ranks)))
    return 0


def _cmd_transform(args) -> int:
    _require_file(args.infile, "input tensor")
    x = _load_input(load_qten, args.infile)
    spec = make_transform(x.dims, args.kind, args.mu)
    from .transforms import apply_transform

    save_qten(args.out, apply_transform(spec, x))
    return 0


def _cmd_metrics(args) -> int:
    _require_file(args.ref, "reference image")
    _require_file(args.test, "test image")
    ref = _load_input(load_image, args.ref)
    test = _load_input(load_image, args.test)
    doc = {"psnr_db": _json_value(psnr(ref, test)), "ssim": ssim(ref, test)}
    print(json.dumps(doc, indent=2, sort_keys=True))
    if args.out:
        _write_json(args.out, doc)
    return 0


# -- parser -----------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="qttkit",
                     description="Quaternion tensor completion toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inpaint-image", parents=[], help="complete a color image "
                       "from partial pixels (center-cropped to a power of the "
                       "block factor)")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--metrics", default=None, help="write PSNR/SSIM JSON here")
    p.add_argument("--diagnostics", default=None, help="write solver diagnostics JSON here")
    p.add_argument("--transform", choices=TRANSFORM_KINDS, default="wht")
    p.add_argument("--mu", type=_parse_mu, default=DEFAULT_MU,
                   help="pure unit axis 'x,y,z' for complex-valued transforms")
    p.add_argument("--qka-base", dest="qka_base", type=int, default=2)
    p.add_argument("--qka-order", dest="qka_order", type=int, default=None)
    _add_mask_flags(p)
    _add_solver_flags(p)
    p.set_defaults(run=_cmd_inpaint_image)

    p = sub.add_parser("inpaint-video", help="complete a color video given as "
                       "numbered PNG frames in a directory")
    p.add_argument("--frames", required=True)
    p.add_argument("--out", required=True, help="output directory for recovered frames")
    p.add_argument("--metrics", default=None)
    p.add_argument("--transform", choices=TRANSFORM_KINDS, default="wht")
    p.add_argument("--mu", type=_parse_mu, default=DEFAULT_MU)
    p.add_argument("--qka-base", dest="qka_base", type=int, default=4)
    _add_mask_flags(p)
    _add_solver_flags(p)
    p.set_defaults(run=_cmd_inpaint_video)

    p = sub.add_parser("decompose", help="tensor-train decomposition and rank report")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out", required=True, help="output directory for the cores")
    p.set_defaults(run=_cmd_decompose)

    p = sub.add_parser("synth", help="generate a random low-rank tensor (unit norm)")
    p.add_argument("--dims", required=True, help="comma-separated dims, e.g. 4,4,4,4")
    p.add_argument("--ranks", required=True, help="comma-separated interior ranks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(run=_cmd_synth)

    p = sub.add_parser("transform", help="apply a multi-mode transform to a tensor")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--kind", choices=TRANSFORM_KINDS, default="wht")
    p.add_argument("--mu", type=_parse_mu, default=DEFAULT_MU)
    p.add_argument("--out", required=True)
    p.set_defaults(run=_cmd_transform)

    p = sub.add_parser("metrics", help="PSNR and SSIM of two images")
    p.add_argument("--ref", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(run=_cmd_metrics)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    try:
        return args.run(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"qttkit: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"qttkit: numeric failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
