"""Command-line front end: entropy, distances, filtering, segmentation, profiles.

Exit codes: 0 on success, 1 on runtime errors (I/O, incompatible images),
2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys

from . import io as imageio
from .entropy import entropy, entropy_difference, histogram, ring_entropy_distance
from .meanshift import (
    DEFAULT_EPSILON,
    DEFAULT_MAX_OUTER_ITERS,
    DEFAULT_RANGE_BANDWIDTH,
    DEFAULT_SPATIAL_BANDWIDTH,
    CriterionConfig,
    CriterionKind,
    MeanShiftParams,
    mean_shift_filter_pass,
    segment,
)

_CRITERION_BY_NAME = {
    "old": CriterionKind.ENTROPY_DIFF,
    "new": CriterionKind.RING_ENTROPY_DISTANCE,
}


def _add_bandwidth_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--hs", type=float, default=DEFAULT_SPATIAL_BANDWIDTH,
        help="spatial window radius in pixels (default: %(default)s)",
    )
    parser.add_argument(
        "--hr", type=float, default=DEFAULT_RANGE_BANDWIDTH,
        help="gray-level window half-width (default: %(default)s)",
    )
    parser.add_argument(
        "--pixel-tol", type=float, default=0.01,
        help="per-pixel mode convergence threshold (default: %(default)s)",
    )
    parser.add_argument(
        "--pixel-max-iters", type=int, default=100,
        help="per-pixel mode-seek step cap (default: %(default)s)",
    )


def _parse_point(text: str) -> tuple[int, int]:
    try:
        xs, ys = text.split(",")
        return int(xs), int(ys)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y integers, got {text!r}") from None


def _add_modulus_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--modulus", type=int, default=None,
        help="assert the input's gray-level count; a file declaring a "
        "different depth is an error (no re-quantization)",
    )


def _load(path: str, expected_modulus: int | None):
    image = imageio.load_image(path)
    if expected_modulus is not None and image.modulus != expected_modulus:
        raise ValueError(
            f"{path} declares modulus {image.modulus}, "
            f"--modulus {expected_modulus} conflicts with it"
        )
    return image


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringshift",
        description="Grayscale mean-shift segmentation with entropy stopping rules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entropy", help="print the entropy of an image in bits")
    p.add_argument("image")
    _add_modulus_flag(p)

    p = sub.add_parser("distance", help="print an entropy distance between two images")
    p.add_argument("image_a")
    p.add_argument("image_b")
    p.add_argument(
        "--kind", choices=("nu", "nu-hat"), default="nu-hat",
        help="nu: absolute entropy difference; nu-hat: entropy of the ring "
        "difference image (default: %(default)s)",
    )
    _add_modulus_flag(p)

    p = sub.add_parser("filter", help="run a single mean-shift filtering pass")
    p.add_argument("image")
    _add_modulus_flag(p)
    _add_bandwidth_flags(p)
    p.add_argument("--out", required=True, help="output image path")

    p = sub.add_parser("segment", help="iterate filtering until the criterion stops it")
    p.add_argument("image")
    _add_modulus_flag(p)
    _add_bandwidth_flags(p)
    p.add_argument(
        "--criterion", choices=("old", "new"), default="new",
        help="old: entropy difference of consecutive iterates; "
        "new: entropy of their ring difference (default: %(default)s)",
    )
    p.add_argument(
        "--epsilon", type=float, default=None,
        help="stopping threshold (default: 0.9 for new, 0.0175 for old)",
    )
    p.add_argument(
        "--max-iters", type=int, default=DEFAULT_MAX_OUTER_ITERS,
        help="outer iteration cap (default: %(default)s)",
    )
    p.add_argument("--out", required=True, help="segmented image path")
    p.add_argument("--trace", help="iteration trace CSV path")

    p = sub.add_parser(
        "compare", help="segment once per criterion from the same input"
    )
    p.add_argument("image")
    _add_modulus_flag(p)
    _add_bandwidth_flags(p)
    p.add_argument("--epsilon-new", type=float,
                   default=DEFAULT_EPSILON[CriterionKind.RING_ENTROPY_DISTANCE],
                   help="threshold for the new criterion (default: %(default)s)")
    p.add_argument("--epsilon-old", type=float,
                   default=DEFAULT_EPSILON[CriterionKind.ENTROPY_DIFF],
                   help="threshold for the old criterion (default: %(default)s)")
    p.add_argument("--max-iters", type=int, default=DEFAULT_MAX_OUTER_ITERS,
                   help="outer iteration cap (default: %(default)s)")
    p.add_argument("--out-new", required=True)
    p.add_argument("--out-old", required=True)
    p.add_argument("--trace-new", required=True)
    p.add_argument("--trace-old", required=True)

    p = sub.add_parser("profile", help="sample gray levels along a line")
    p.add_argument("image")
    _add_modulus_flag(p)
    p.add_argument("--from", dest="start", type=_parse_point, required=True,
                   metavar="X,Y", help="line start pixel")
    p.add_argument("--to", dest="end", type=_parse_point, required=True,
                   metavar="X,Y", help="line end pixel")
    p.add_argument("--out", required=True, help="profile CSV path")

    return parser


def _cmd_entropy(args) -> int:
    image = _load(args.image, args.modulus)
    print(f"{entropy(image):.6f}")
    return 0


def _cmd_distance(args) -> int:
    a = _load(args.image_a, args.modulus)
    b = _load(args.image_b, args.modulus)
    if args.kind == "nu":
        value = entropy_difference(a, b)
    else:
        value = ring_entropy_distance(a, b)
    print(f"{value:.6f}")
    return 0


def _cmd_filter(args) -> int:
    image = _load(args.image, args.modulus)
    params = MeanShiftParams(args.hs, args.hr, args.pixel_tol, args.pixel_max_iters)
    imageio.save_image(mean_shift_filter_pass(image, params), args.out)
    return 0


def _cmd_segment(args) -> int:
    image = _load(args.image, args.modulus)
    params = MeanShiftParams(args.hs, args.hr, args.pixel_tol, args.pixel_max_iters)
    config = CriterionConfig(
        _CRITERION_BY_NAME[args.criterion], args.epsilon, args.max_iters
    )
    result = segment(image, params, config)
    imageio.save_image(result.final_image, args.out)
    if args.trace:
        imageio.write_trace_csv(result.trace, args.trace)
    print(
        f"stopped={result.trace.stopped_reason.value} "
        f"iterations={len(result.trace.entries)}"
    )
    return 0


def _cmd_compare(args) -> int:
    image = _load(args.image, args.modulus)
    params = MeanShiftParams(args.hs, args.hr, args.pixel_tol, args.pixel_max_iters)
    runs = (
        ("new", CriterionKind.RING_ENTROPY_DISTANCE, args.epsilon_new,
         args.out_new, args.trace_new),
        ("old", CriterionKind.ENTROPY_DIFF, args.epsilon_old,
         args.out_old, args.trace_old),
    )
    for label, kind, epsilon, out_path, trace_path in runs:
        result = segment(image, params, CriterionConfig(kind, epsilon, args.max_iters))
        imageio.save_image(result.final_image, out_path)
        imageio.write_trace_csv(result.trace, trace_path)
        last = result.trace.entries[-1]
        levels = histogram(result.final_image).distinct_levels()
        print(
            f"{label}: iterations={last.iteration} "
            f"final={last.criterion_value:.6f} levels={levels} "
            f"stopped={result.trace.stopped_reason.value}"
        )
    return 0


def _cmd_profile(args) -> int:
    image = _load(args.image, args.modulus)
    profile = imageio.extract_profile(image, args.start, args.end)
    with open(args.out, "w", encoding="ascii", newline="") as fh:
        fh.write("t,value\n")
        for t, value in profile.samples:
            fh.write(f"{t},{value}\n")
    return 0


_COMMANDS = {
    "entropy": _cmd_entropy,
    "distance": _cmd_distance,
    "filter": _cmd_filter,
    "segment": _cmd_segment,
    "compare": _cmd_compare,
    "profile": _cmd_profile,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
