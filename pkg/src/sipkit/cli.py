"""Command-line surface: one subcommand per library operation.

Every subcommand is a thin wrapper -- read, call one library function,
write, print a key=value report line or two. Exit codes: 0 success, 1 bad
usage or parameters, 2 file/codec problems, 3 domain errors (an operation
undefined for that particular input).

SIPKIT_THREADS, when set, caps internal parallelism; the current
implementation evaluates everything sequentially, which trivially
respects any cap, but the value is still validated here.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import codec, core, dist, filters, geom, morph, pipelines, seg
from .errors import CodecError, DomainError
from .images import Gray16Image, IndexedImage, LabelImage, TruecolorImage

_FORMATS = {".png": "png", ".pgm": "pgm", ".ppm": "ppm"}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _out_format(path: str) -> str:
    suffix = Path(path).suffix.lower()
    if suffix not in _FORMATS:
        raise _UsageError(
            f"cannot infer format from {path!r}: use a .png, .pgm or .ppm suffix"
        )
    return _FORMATS[suffix]


def _read_gray16(path: str) -> Gray16Image:
    payload = codec.read_image(path).payload
    if isinstance(payload, IndexedImage):
        payload = codec.expand_indexed(payload)
    if isinstance(payload, TruecolorImage):
        payload = core.to_gray(payload)
    return payload


def _write_gray(img: Gray16Image, path: str) -> None:
    codec.write_image(img, path, _out_format(path))
    print(f"output={path}")


def _write_real(img, path: str) -> None:
    _write_gray(core.gray16_from_real(img), path)


def _write_binary(mask, path: str) -> None:
    _write_real(core.real_from_binary(mask), path)


def _mask_from(path: str):
    return core.threshold(codec.read_gray(path), 0.5)


def _cmd_to_gray(args) -> None:
    _write_gray(_read_gray16(args.input), args.output)


def _cmd_threshold(args) -> None:
    _write_binary(core.threshold(codec.read_gray(args.input), args.threshold),
                  args.output)


def _cmd_invert(args) -> None:
    _write_real(core.invert(codec.read_gray(args.input)), args.output)


def _cmd_equalize(args) -> None:
    _write_gray(core.equalize(_read_gray16(args.input)), args.output)


def _cmd_blur(args) -> None:
    _write_real(filters.gaussian_blur(codec.read_gray(args.input), args.sigma),
                args.output)


def _cmd_median(args) -> None:
    _write_real(filters.median_filter(codec.read_gray(args.input), args.radius),
                args.output)


def _cmd_edge(args) -> None:
    _write_binary(filters.sobel_edges(codec.read_gray(args.input), args.threshold),
                  args.output)


def _cmd_rotate(args) -> None:
    _write_real(geom.rotate(codec.read_gray(args.input), args.degrees, args.interp),
                args.output)


def _cmd_zoom(args) -> None:
    _write_real(geom.zoom(codec.read_gray(args.input), args.factor, args.interp),
                args.output)


def _cmd_affine(args) -> None:
    try:
        parts = [float(p) for p in args.matrix.split(",")]
    except ValueError:
        raise _UsageError(f"bad --matrix value {args.matrix!r}")
    if len(parts) != 6:
        raise _UsageError("--matrix needs 6 comma-separated numbers "
                          "(a11,a12,tx,a21,a22,ty)")
    img = codec.read_gray(args.input)
    out_w = args.width if args.width else img.width
    out_h = args.height if args.height else img.height
    warped = geom.affine_warp(img, geom.AffineMap(*parts), (out_w, out_h),
                              args.interp)
    _write_real(warped, args.output)


def _cmd_bwdist(args) -> None:
    if args.squared and args.dmax is not None:
        raise _UsageError("--dmax applies to euclidean distances, not --squared")
    mask = _mask_from(args.input)
    if args.squared:
        values = dist.edt_squared(mask).values
    elif args.dmax is not None:
        values = np.rint(dist.edt_limited(mask, args.dmax).values).astype(np.int64)
    else:
        values = np.rint(dist.edt(mask).values).astype(np.int64)
    clamped = int((values > 65535).sum())
    _write_gray(Gray16Image(np.minimum(values, 65535).astype(np.uint16)),
                args.output)
    print(f"clamped={clamped}")


def _cmd_dilate(args) -> None:
    _write_binary(morph.dilate_disc(_mask_from(args.input), args.radius),
                  args.output)


def _cmd_erode(args) -> None:
    _write_binary(morph.erode_disc(_mask_from(args.input), args.radius),
                  args.output)


def _cmd_skel(args) -> None:
    _write_real(morph.skeleton(_mask_from(args.input)), args.output)


def _cmd_watershed(args) -> None:
    labels = seg.watershed(codec.read_gray(args.input))
    if labels.max_label > 65535:
        raise DomainError("more than 65535 regions cannot be stored as 16-bit")
    _write_gray(Gray16Image(labels.labels.astype(np.uint16)), args.output)
    print(f"regions={labels.max_label}")


def _cmd_count(args) -> None:
    payload = _read_gray16(args.input)
    try:
        labels = LabelImage(payload.samples.astype(np.int32))
    except ValueError as exc:
        raise DomainError(f"{args.input} is not a label image: {exc}") from exc
    print(f"count={seg.count_objects(labels)}")


def _cmd_pipeline_ocr(args) -> None:
    report = pipelines.pipeline_ocr(args.input, args.outdir, sigma=args.sigma,
                                    bin_t=args.bin_threshold,
                                    skel_t=args.skel_threshold)
    sys.stdout.write(report.to_text())


def _cmd_pipeline_cells(args) -> None:
    report = pipelines.pipeline_cells(args.input, args.outdir,
                                      bin_t=args.bin_threshold,
                                      median_r=args.median_radius)
    sys.stdout.write(report.to_text())


def _cmd_demo_fft(args) -> None:
    sys.stdout.write(pipelines.demo_fft(args.outdir).to_text())


def build_parser() -> _Parser:
    parser = _Parser(prog="sipkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def op(name, handler, help_, *, io=True):
        p = sub.add_parser(name, help=help_)
        if io:
            p.add_argument("input")
            p.add_argument("output")
        p.set_defaults(handler=handler)
        return p

    op("to-gray", _cmd_to_gray, "convert any image to 16-bit grayscale")
    p = op("threshold", _cmd_threshold, "binarize at a [0,1] cutoff")
    p.add_argument("--threshold", type=float, required=True)
    op("invert", _cmd_invert, "map samples x to 1-x")
    op("equalize", _cmd_equalize, "histogram equalization")
    p = op("blur", _cmd_blur, "Gaussian blur")
    p.add_argument("--sigma", type=float, required=True)
    p = op("median", _cmd_median, "square-window median filter")
    p.add_argument("--radius", type=int, required=True)
    p = op("edge", _cmd_edge, "Sobel edges at a relative threshold")
    p.add_argument("--threshold", type=float, required=True)
    p = op("rotate", _cmd_rotate, "rotate (degrees clockwise, canvas expands)")
    p.add_argument("--degrees", type=float, required=True)
    p.add_argument("--interp", choices=geom.INTERPOLATIONS, default="bilinear")
    p = op("zoom", _cmd_zoom, "rescale by a factor")
    p.add_argument("--factor", type=float, required=True)
    p.add_argument("--interp", choices=geom.INTERPOLATIONS, default="bilinear")
    p = op("affine", _cmd_affine, "general affine warp (output-to-input map)")
    p.add_argument("--matrix", required=True,
                   help="a11,a12,tx,a21,a22,ty")
    p.add_argument("--width", type=int)
    p.add_argument("--height", type=int)
    p.add_argument("--interp", choices=geom.INTERPOLATIONS, default="bilinear")
    p = op("bwdist", _cmd_bwdist, "euclidean distance to the background")
    p.add_argument("--squared", action="store_true")
    p.add_argument("--dmax", type=float)
    p = op("dilate", _cmd_dilate, "dilate by a euclidean disc")
    p.add_argument("--radius", type=float, required=True)
    p = op("erode", _cmd_erode, "erode by a euclidean disc")
    p.add_argument("--radius", type=float, required=True)
    op("skel", _cmd_skel, "multiscale skeleton field of a mask")
    p = op("watershed", _cmd_watershed, "label catchment basins")
    op("count", _cmd_count, "objects in a label image (regions minus 1)",
       io=False).add_argument("input")
    p = op("pipeline-ocr", _cmd_pipeline_ocr, "blur/threshold/skeletonize a glyph",
           io=False)
    p.add_argument("input")
    p.add_argument("--outdir", required=True)
    p.add_argument("--sigma", type=float, default=2.0)
    p.add_argument("--bin-threshold", type=float, default=0.8)
    p.add_argument("--skel-threshold", type=float, default=0.5)
    p = op("pipeline-cells", _cmd_pipeline_cells,
           "segment and count overlapping blobs", io=False)
    p.add_argument("input")
    p.add_argument("--outdir", required=True)
    p.add_argument("--bin-threshold", type=float, default=0.9)
    p.add_argument("--median-radius", type=int, default=2)
    p = op("demo-fft", _cmd_demo_fft, "three-cosine FFT demo to CSV", io=False)
    p.add_argument("--outdir", required=True)
    return parser


def _check_thread_cap() -> None:
    raw = os.environ.get("SIPKIT_THREADS")
    if raw is None:
        return
    try:
        cap = int(raw)
    except ValueError:
        cap = 0
    if cap < 1:
        raise _UsageError(f"SIPKIT_THREADS must be a positive integer, got {raw!r}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        _check_thread_cap()
        args = parser.parse_args(argv)
        args.handler(args)
        return 0
    except (_UsageError, ValueError) as exc:
        print(f"sipkit: {exc}", file=sys.stderr)
        return 1
    except (CodecError, OSError) as exc:
        print(f"sipkit: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"sipkit: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
