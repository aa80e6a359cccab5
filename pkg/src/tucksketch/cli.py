"""Command-line harness for tensor generation, decomposition, and benchmarks.

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 numerical-parameter
violation.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from .bench import ALGORITHMS, BenchReport, BenchRow, ExperimentConfig, run_bench, write_csv
from .config import ApproxConfig
from .datagen import SparseGenConfig, hilbert_tensor, sparse_lowrank_tensor
from .imageio import ImageFormatError, load_image_tensor, save_image_tensor
from .metrics import psnr, relative_error
from .rng import RngStream
from .tucker import r_sthosvd, reconstruct, save_model, sketch_sthosvd, sthosvd, sub_sketch_sthosvd, thosvd

__all__ = ["main"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(t) for t in text.split("x"))
    except ValueError:
        raise _UsageError(f"cannot parse dimension list {text!r}") from None
    if not dims:
        raise _UsageError("empty dimension list")
    return dims


def _parse_rank_sets(text: str) -> tuple[tuple[int, ...], ...]:
    return tuple(_parse_dims(part) for part in text.split(","))

def _parse_order(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise _UsageError(f"cannot parse processing order {text!r}") from None


def _parse_algos(text: str) -> tuple[str, ...]:
    if text == "all":
        return tuple(ALGORITHMS)
    keys = tuple(t.strip() for t in text.split(","))
    for key in keys:
        if key not in ALGORITHMS:
            raise _UsageError(
                f"unknown algorithm {key!r}; choose from all, "
                + ", ".join(ALGORITHMS)
            )
    return keys


def _load_tensor(path: str) -> np.ndarray:
    if path.endswith((".ppm", ".pgm")):
        return load_image_tensor(path)
    try:
        return np.asarray(np.load(path), dtype=np.float64)
    except ValueError as exc:
        raise OSError(f"unreadable tensor file {path}: {exc}") from exc


def _decompose_once(key: str, x, acfg: ApproxConfig):
    rng = RngStream(acfg.seed)
    start = time.perf_counter()
    if key == "thosvd":
        model = thosvd(x, acfg)
    elif key == "sthosvd":
        model = sthosvd(x, acfg)
    elif key == "rsthosvd":
        model = r_sthosvd(x, acfg, rng)
    elif key == "sketch":
        model = sketch_sthosvd(x, acfg, rng)
    else:
        model = sub_sketch_sthosvd(x, acfg, rng)
    wall_ms = (time.perf_counter() - start) * 1e3
    return model, wall_ms


def _approx_config(args, ranks: tuple[int, ...]) -> ApproxConfig:
    return ApproxConfig(
        target_ranks=ranks,
        processing_order=_parse_order(args.order),
        oversample=args.oversample,
        sketch_sizes=tuple(r + args.sketch_extra for r in ranks),
        power_iters=args.q,
        seed=args.seed,
    )


def _cmd_gen_hilbert(args) -> int:
    np.save(args.out, hilbert_tensor(_parse_dims(args.dims)))
    return 0


def _cmd_gen_sparse(args) -> int:
    cfg = SparseGenConfig(
        n=args.n, gamma=args.gamma, density=args.density, seed=args.seed
    )
    np.save(args.out, sparse_lowrank_tensor(cfg))
    return 0


def _cmd_decompose(args) -> int:
    ranks = _parse_dims(args.ranks)
    key = _parse_algos(args.algo)
    if len(key) != 1:
        raise _UsageError("decompose takes exactly one algorithm")
    x = _load_tensor(getattr(args, "in"))
    model, wall_ms = _decompose_once(key[0], x, _approx_config(args, ranks))
    err = relative_error(x, reconstruct(model))
    print(f"algorithm={ALGORITHMS[key[0]]} rel_error={err:.6e} wall_ms={wall_ms:.6e}")
    if args.out:
        save_model(model, args.out)
    return 0


def _cmd_bench(args) -> int:
    cfg = ExperimentConfig(
        experiment=args.experiment,
        source=args.source,
        algorithms=_parse_algos(args.algo),
        rank_sets=_parse_rank_sets(args.ranks),
        dims=_parse_dims(args.dims) if args.dims else None,
        image_path=args.image,
        trials=args.trials,
        base_seed=args.seed,
        order=_parse_order(args.order),
        oversample=args.oversample,
        sketch_extra=args.sketch_extra,
        power_iters=args.q,
        gamma=args.gamma,
        density=args.density,
        delta=args.delta,
        snr_db=args.snr,
        aggregate=args.aggregate,
    )
    report = run_bench(cfg)
    write_csv(report, args.out)
    print(f"wrote {len(report.rows)} rows to {args.out}")
    return 0


def _cmd_image_compress(args) -> int:
    ranks = _parse_dims(args.ranks)
    key = _parse_algos(args.algo)
    if len(key) != 1:
        raise _UsageError("image-compress takes exactly one algorithm")
    x = load_image_tensor(getattr(args, "in"))
    model, wall_ms = _decompose_once(key[0], x, _approx_config(args, ranks))
    xhat = reconstruct(model)
    save_image_tensor(xhat, args.out)
    quality = psnr(x, xhat, 255.0)
    err = relative_error(x, xhat)
    print(
        f"algorithm={ALGORITHMS[key[0]]} psnr={quality:.4f} "
        f"rel_error={err:.6e} wall_ms={wall_ms:.6e}"
    )
    if args.model:
        save_model(model, args.model)
    if args.csv:
        row = BenchRow(
            experiment="image-compress",
            algorithm=ALGORITHMS[key[0]],
            ranks=ranks,
            sketch_sizes=(
                tuple(r + args.sketch_extra for r in ranks)
                if key[0] in ("sketch", "subsketch")
                else None
            ),
            q=args.q if key[0] == "subsketch" else None,
            seed=args.seed,
            rel_error=err,
            psnr=quality,
            wall_ms=wall_ms,
        )
        write_csv(BenchReport([row]), args.csv)
    return 0


def _add_approx_flags(sub) -> None:
    sub.add_argument("--ranks", required=True, help="target ranks, e.g. 10x10x10")
    sub.add_argument("--order", default=None, help="processing order, e.g. 1,2,3")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--oversample", type=int, default=5)
    sub.add_argument(
        "--sketch-extra",
        dest="sketch_extra",
        type=int,
        default=2,
        help="sketch size above the rank: l_n = r_n + this",
    )
    sub.add_argument("--q", type=int, default=1, help="subspace power iterations")


def _build_parser() -> _Parser:
    parser = _Parser(prog="tucksketch", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    gen_h = subs.add_parser("gen-hilbert", help="write a Hilbert tensor as .npy")
    gen_h.add_argument("--dims", required=True, help="e.g. 100x100x100")
    gen_h.add_argument("--out", required=True)
    gen_h.set_defaults(func=_cmd_gen_hilbert)

    gen_s = subs.add_parser("gen-sparse", help="write a sparse low-rank tensor as .npy")
    gen_s.add_argument("--n", type=int, required=True)
    gen_s.add_argument("--gamma", type=float, required=True)
    gen_s.add_argument("--density", type=float, default=0.05)
    gen_s.add_argument("--seed", type=int, default=0)
    gen_s.add_argument("--out", required=True)
    gen_s.set_defaults(func=_cmd_gen_sparse)

    dec = subs.add_parser("decompose", help="decompose a tensor file once")
    dec.add_argument("--in", required=True, help=".npy, .ppm, or .pgm input")
    dec.add_argument("--algo", required=True, help="|".join(ALGORITHMS))
    _add_approx_flags(dec)
    dec.add_argument("--out", default=None, help="write the model container here")
    dec.set_defaults(func=_cmd_decompose)

    ben = subs.add_parser("bench", help="run a sweep and write a CSV report")
    ben.add_argument("--experiment", default="bench")
    ben.add_argument("--source", required=True, choices=["hilbert", "sparse", "gaussian", "image"])
    ben.add_argument("--dims", default=None, help="e.g. 100x100x100")
    ben.add_argument("--image", default=None, help="PPM/PGM path for source=image")
    ben.add_argument("--algo", default="all", help="all or comma list")
    ben.add_argument(
        "--ranks", required=True, help="comma list of rank tuples, e.g. 10x10x10,20x20x20"
    )
    ben.add_argument("--trials", type=int, default=1)
    ben.add_argument("--order", default=None)
    ben.add_argument("--seed", type=int, default=0)
    ben.add_argument("--oversample", type=int, default=5)
    ben.add_argument("--sketch-extra", dest="sketch_extra", type=int, default=2)
    ben.add_argument("--q", type=int, default=1)
    ben.add_argument("--gamma", type=float, default=10.0)
    ben.add_argument("--density", type=float, default=0.05)
    ben.add_argument("--delta", type=float, default=None, help="additive noise scale")
    ben.add_argument("--snr", type=float, default=None, help="white-noise SNR in dB")
    ben.add_argument("--aggregate", choices=["none", "mean"], default="none")
    ben.add_argument("--out", required=True)
    ben.set_defaults(func=_cmd_bench)

    img = subs.add_parser("image-compress", help="low-rank compress a PPM/PGM image")
    img.add_argument("--in", required=True)
    img.add_argument("--algo", required=True)
    _add_approx_flags(img)
    img.add_argument("--out", required=True, help="reconstructed image path")
    img.add_argument("--model", default=None, help="also save the model container")
    img.add_argument("--csv", default=None, help="also write a one-row CSV report")
    img.set_defaults(func=_cmd_image_compress)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ImageFormatError as exc:
        print(f"image format error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
