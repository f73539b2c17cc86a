"""Iterative mean-shift filtering with pluggable stopping rules.

One filtering pass sends every pixel to the mode of the local joint
(spatial, gray-level) density under a uniform kernel: starting from the
pixel's own position and value, the point moves to the unweighted mean
of all pixels within spatial radius ``hs`` and gray-level distance
``hr`` until the move falls below ``pixel_tol``.  The outer loop feeds
each pass's output back in, and stops when a criterion computed from two
consecutive outputs drops to the threshold:

* ``ENTROPY_DIFF`` -- absolute difference of the two image entropies.
* ``RING_ENTROPY_DISTANCE`` -- entropy of the ring difference of the two
  images, which also reacts to spatial rearrangements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .entropy import entropy, entropy_difference, ring_entropy_distance
from .ring import RingImage


class CriterionKind(Enum):
    """Which consecutive-iterate statistic ends the outer loop."""

    ENTROPY_DIFF = "entropy-diff"
    RING_ENTROPY_DISTANCE = "ring-entropy-distance"


class StopReason(Enum):
    THRESHOLD_MET = "ThresholdMet"
    MAX_ITERS_REACHED = "MaxItersReached"


#: Stopping thresholds used when a CriterionConfig does not set one.
DEFAULT_EPSILON = {
    CriterionKind.ENTROPY_DIFF: 0.0175,
    CriterionKind.RING_ENTROPY_DISTANCE: 0.9,
}

DEFAULT_SPATIAL_BANDWIDTH = 15.0
DEFAULT_RANGE_BANDWIDTH = 12.0
DEFAULT_MAX_OUTER_ITERS = 50


@dataclass(frozen=True)
class MeanShiftParams:
    """Bandwidths and per-pixel convergence controls for one filter pass.

    ``spatial_bandwidth`` is the window radius in pixels,
    ``range_bandwidth`` the half-width of the gray-level window.
    """

    spatial_bandwidth: float = DEFAULT_SPATIAL_BANDWIDTH
    range_bandwidth: float = DEFAULT_RANGE_BANDWIDTH
    pixel_tol: float = 0.01
    pixel_max_iters: int = 100

    def __post_init__(self):
        if not self.spatial_bandwidth > 0:
            raise ValueError(f"spatial_bandwidth must be > 0, got {self.spatial_bandwidth}")
        if self.range_bandwidth < 0:
            raise ValueError(f"range_bandwidth must be >= 0, got {self.range_bandwidth}")
        if not self.pixel_tol > 0:
            raise ValueError(f"pixel_tol must be > 0, got {self.pixel_tol}")
        if self.pixel_max_iters < 1:
            raise ValueError(f"pixel_max_iters must be >= 1, got {self.pixel_max_iters}")


@dataclass(frozen=True)
class CriterionConfig:
    """Stopping rule: criterion kind, threshold, and outer-iteration cap."""

    kind: CriterionKind
    epsilon: float | None = None
    max_outer_iters: int = DEFAULT_MAX_OUTER_ITERS

    def __post_init__(self):
        if self.epsilon is None:
            object.__setattr__(self, "epsilon", DEFAULT_EPSILON[self.kind])
        if self.epsilon < 0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")
        if self.max_outer_iters < 1:
            raise ValueError(f"max_outer_iters must be >= 1, got {self.max_outer_iters}")


@dataclass(frozen=True)
class TraceEntry:
    """One outer iteration: its index (from 1), criterion value, and the
    entropy of the image produced by that iteration."""

    iteration: int
    criterion_value: float
    entropy_after: float


@dataclass(frozen=True)
class IterationTrace:
    entries: tuple[TraceEntry, ...]
    stopped_reason: StopReason

    def __post_init__(self):
        if not self.entries:
            raise ValueError("a trace records at least one iteration")
        if [e.iteration for e in self.entries] != list(range(1, len(self.entries) + 1)):
            raise ValueError("trace iterations must count 1, 2, ...")


@dataclass(frozen=True)
class SegmentationResult:
    final_image: RingImage
    trace: IterationTrace
    params: MeanShiftParams
    criterion: CriterionConfig


def _seek_mode(vals, xs, ys, px, py, hs, hs2, hr, tol2, max_iters, width, height):
    """Run one pixel's mode seek; returns the converged range value."""
    cx = float(px)
    cy = float(py)
    cv = vals[py, px]
    for _ in range(max_iters):
        # Uniform kernel: every pixel inside the spatial disc whose value
        # lies within hr of the current range coordinate, equally weighted.
        x0 = max(0, math.ceil(cx - hs))
        x1 = min(width - 1, math.floor(cx + hs))
        y0 = max(0, math.ceil(cy - hs))
        y1 = min(height - 1, math.floor(cy + hs))

        window = vals[y0 : y1 + 1, x0 : x1 + 1]
        dx = xs[x0 : x1 + 1] - cx
        dy = ys[y0 : y1 + 1] - cy
        inside = (dx[np.newaxis, :] ** 2 + dy[:, np.newaxis] ** 2 <= hs2) & (
            np.abs(window - cv) <= hr
        )

        count = np.count_nonzero(inside)
        if count == 0:
            break
        nx = float((inside * xs[np.newaxis, x0 : x1 + 1]).sum()) / count
        ny = float((inside * ys[y0 : y1 + 1, np.newaxis]).sum()) / count
        nv = float((inside * window).sum()) / count

        shift2 = (nx - cx) ** 2 + (ny - cy) ** 2 + (nv - cv) ** 2
        cx, cy, cv = nx, ny, nv
        if shift2 < tol2:
            break
    return cv


def mean_shift_filter_pass(image: RingImage, params: MeanShiftParams) -> RingImage:
    """One complete filtering pass: every output pixel is its mode's gray level.

    The converged range value is rounded half-up and clamped into the
    residue range; shape and modulus are preserved.  Window means never
    leave the min/max of the input values, so the output data range is
    contained in the input's.
    """
    vals = image.pixels.astype(np.float64)
    height, width = vals.shape
    xs = np.arange(width, dtype=np.float64)
    ys = np.arange(height, dtype=np.float64)
    hs = float(params.spatial_bandwidth)
    hr = float(params.range_bandwidth)
    hs2 = hs * hs
    tol2 = params.pixel_tol * params.pixel_tol

    out = np.empty((height, width), dtype=np.int64)
    for py in range(height):
        for px in range(width):
            mode = _seek_mode(
                vals, xs, ys, px, py, hs, hs2, hr, tol2,
                params.pixel_max_iters, width, height,
            )
            out[py, px] = math.floor(mode + 0.5)

    np.clip(out, 0, image.modulus - 1, out=out)
    return RingImage(out, image.modulus)


def criterion_value(
    kind: CriterionKind, current: RingImage, previous: RingImage
) -> float:
    """Evaluate the stopping statistic for two consecutive iterates."""
    if kind is CriterionKind.ENTROPY_DIFF:
        # entropy_difference alone tolerates shape mismatches; consecutive
        # iterates never have them, so enforce alignment for both kinds.
        current._check_operand(previous)
        return entropy_difference(current, previous)
    if kind is CriterionKind.RING_ENTROPY_DISTANCE:
        return ring_entropy_distance(current, previous)
    raise ValueError(f"unknown criterion kind: {kind!r}")


def segment(
    image: RingImage, params: MeanShiftParams, criterion: CriterionConfig
) -> SegmentationResult:
    """Filter repeatedly until the stopping criterion fires or the cap hits.

    At least one pass always runs.  Iteration ``k`` records the criterion
    comparing pass ``k``'s output with its input, plus the output entropy.
    """
    previous = image
    entries: list[TraceEntry] = []
    reason = StopReason.MAX_ITERS_REACHED
    for k in range(1, criterion.max_outer_iters + 1):
        current = mean_shift_filter_pass(previous, params)
        value = criterion_value(criterion.kind, current, previous)
        entries.append(TraceEntry(k, value, entropy(current)))
        previous = current
        if value <= criterion.epsilon:
            reason = StopReason.THRESHOLD_MET
            break

    trace = IterationTrace(tuple(entries), reason)
    return SegmentationResult(previous, trace, params, criterion)
