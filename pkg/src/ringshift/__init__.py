"""Grayscale mean-shift segmentation with entropy stopping rules over ring images."""

from .entropy import (
    Histogram,
    entropy,
    entropy_difference,
    entropy_of_histogram,
    histogram,
    ring_entropy_distance,
    scalar_shift_between,
    strongly_equivalent,
    weakly_equivalent,
)
from .io import (
    ImageFormatError,
    MalformedHeaderError,
    MalformedPixelError,
    ProfileLine,
    UnsupportedFormatError,
    bresenham_points,
    extract_profile,
    load_image,
    save_image,
    write_trace_csv,
)
from .meanshift import (
    DEFAULT_EPSILON,
    CriterionConfig,
    CriterionKind,
    IterationTrace,
    MeanShiftParams,
    SegmentationResult,
    StopReason,
    TraceEntry,
    criterion_value,
    mean_shift_filter_pass,
    segment,
)
from .ring import (
    ModulusMismatchError,
    RingImage,
    ShapeMismatchError,
    one_image,
    scalar_image,
    zero_image,
)

__version__ = "0.1.0"

__all__ = [
    "CriterionConfig",
    "CriterionKind",
    "DEFAULT_EPSILON",
    "Histogram",
    "ImageFormatError",
    "IterationTrace",
    "MalformedHeaderError",
    "MalformedPixelError",
    "MeanShiftParams",
    "ModulusMismatchError",
    "ProfileLine",
    "RingImage",
    "SegmentationResult",
    "ShapeMismatchError",
    "StopReason",
    "TraceEntry",
    "UnsupportedFormatError",
    "bresenham_points",
    "criterion_value",
    "entropy",
    "entropy_difference",
    "entropy_of_histogram",
    "extract_profile",
    "histogram",
    "load_image",
    "mean_shift_filter_pass",
    "one_image",
    "ring_entropy_distance",
    "save_image",
    "scalar_image",
    "scalar_shift_between",
    "segment",
    "strongly_equivalent",
    "weakly_equivalent",
    "write_trace_csv",
    "zero_image",
]
