"""Shannon entropy of gray-level distributions and entropy-based image distances.

The entropy of an image is ``-sum(p_v * log2(p_v))`` over the gray levels
``v`` that occur, where ``p_v`` is the occurrence frequency of ``v``;
absent levels contribute exactly zero.  Two distances build on it:

* ``entropy_difference(a, b)`` -- ``|E(a) - E(b)|``, blind to pixel
  positions: any two images with equal histograms are at distance zero.
* ``ring_entropy_distance(a, b)`` -- ``E(a - b)`` with the subtraction
  taken in the pixel-wise residue ring, so it is zero exactly when the
  two images differ by a constant shift (strong equivalence) and positive
  otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ring import ModulusMismatchError, RingImage


@dataclass(frozen=True, eq=False)
class Histogram:
    """Occurrence counts per gray level of a single image."""

    counts: np.ndarray
    modulus: int

    def __post_init__(self):
        arr = np.asarray(self.counts, dtype=np.int64)
        if arr.ndim != 1 or arr.shape[0] != self.modulus:
            raise ValueError(
                f"counts must have length {self.modulus}, got shape {arr.shape}"
            )
        if arr.min() < 0:
            raise ValueError("counts must be non-negative")
        if arr.sum() == 0:
            raise ValueError("histogram must count at least one pixel")
        arr = np.ascontiguousarray(arr)
        arr.flags.writeable = False
        object.__setattr__(self, "counts", arr)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def probabilities(self) -> np.ndarray:
        return self.counts / self.total

    def distinct_levels(self) -> int:
        return int(np.count_nonzero(self.counts))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Histogram):
            return NotImplemented
        return self.modulus == other.modulus and bool(
            (self.counts == other.counts).all()
        )


def histogram(image: RingImage) -> Histogram:
    """Tally how many pixels carry each gray level in ``[0, modulus)``."""
    counts = np.bincount(image.pixels.ravel(), minlength=image.modulus)
    return Histogram(counts, image.modulus)


def _entropy_bits(counts: np.ndarray, total: int) -> float:
    # Summing over counts sorted by magnitude (not by gray level) makes the
    # result bit-identical under any permutation of the histogram bins, which
    # the shift-invariance and symmetry guarantees below rely on.
    positive = np.sort(counts[counts > 0])
    p = positive / total
    bits = float(-np.sum(p * np.log2(p)))
    return bits + 0.0  # collapse -0.0 (single-bin case) to +0.0


def entropy(image: RingImage) -> float:
    """Shannon entropy of the image's gray-level distribution, in bits.

    Lies in ``[0, log2(modulus)]``; zero exactly for constant images.
    """
    counts = np.bincount(image.pixels.ravel(), minlength=image.modulus)
    return _entropy_bits(counts, image.pixels.size)


def entropy_of_histogram(h: Histogram) -> float:
    """Entropy in bits of an already-computed histogram."""
    return _entropy_bits(h.counts, h.total)


def entropy_difference(a: RingImage, b: RingImage) -> float:
    """``|E(a) - E(b)|``; shapes may differ, moduli must agree.

    Compares only the two gray-level distributions, so images that merely
    rearrange the same pixels are at distance zero.
    """
    if a.modulus != b.modulus:
        raise ModulusMismatchError(f"modulus mismatch: {a.modulus} vs {b.modulus}")
    return abs(entropy(a) - entropy(b))


def ring_entropy_distance(a: RingImage, b: RingImage) -> float:
    """Entropy of the pixel-wise ring difference ``a - b``, in bits.

    Zero if and only if ``a`` and ``b`` are strongly equivalent (their
    difference is a constant image); requires identical shape and modulus.
    """
    return entropy(a - b)


def weakly_equivalent(a: RingImage, b: RingImage, tol: float = 0.0) -> bool:
    """Whether ``E(a)`` and ``E(b)`` agree to within ``tol`` bits."""
    if tol < 0:
        raise ValueError(f"tolerance must be non-negative, got {tol}")
    return entropy_difference(a, b) <= tol


def scalar_shift_between(a: RingImage, b: RingImage) -> int | None:
    """The constant ``s`` with ``a = b + s`` in the ring, or None.

    The witness is decided by exact integer logic on the difference image,
    never by floating-point comparison.  ``0`` is a valid witness (equal
    images), so test ``is not None``.
    """
    return (a - b).scalar_value()


def strongly_equivalent(a: RingImage, b: RingImage) -> bool:
    """Whether ``a`` and ``b`` differ by a constant image in the ring."""
    return scalar_shift_between(a, b) is not None
