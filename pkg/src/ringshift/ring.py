"""Grayscale images as elements of a pixel-wise residue ring.

A ``RingImage`` is a fixed-size grid of integer gray levels in ``[0, n)``
for a single modulus ``n >= 2``.  Addition, subtraction, negation and
multiplication act pixel by pixel modulo ``n``, so the set of equally
sized images over one modulus is closed under all four operations.
Scalar (constant) images play the role of additive constants; the zero
image is the additive identity and the all-ones image the multiplicative
identity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Largest accepted modulus; keeps every intermediate product inside int64.
MAX_MODULUS = 2**31


class ShapeMismatchError(ValueError):
    """Operands differ in width or height."""


class ModulusMismatchError(ValueError):
    """Operands live in rings with different moduli."""


def _storage_dtype(modulus: int):
    if modulus <= 2**8:
        return np.uint8
    if modulus <= 2**16:
        return np.uint16
    return np.uint32


@dataclass(frozen=True, eq=False)
class RingImage:
    """An immutable height x width grid of residues modulo ``modulus``.

    ``pixels`` is stored row-major as a read-only unsigned integer array;
    every value satisfies ``0 <= v < modulus``.
    """

    pixels: np.ndarray
    modulus: int

    def __post_init__(self):
        n = self.modulus
        if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
            raise TypeError(f"modulus must be an integer, got {type(n).__name__}")
        n = int(n)
        if n < 2:
            raise ValueError(f"modulus must be >= 2, got {n}")
        if n > MAX_MODULUS:
            raise ValueError(f"modulus {n} exceeds supported maximum {MAX_MODULUS}")

        arr = np.asarray(self.pixels)
        if arr.ndim != 2:
            raise ValueError(f"pixels must be a 2-D grid, got {arr.ndim} dimension(s)")
        if arr.size == 0:
            raise ValueError("image must contain at least one pixel")
        if not np.issubdtype(arr.dtype, np.integer):
            raise TypeError(f"pixel values must be integers, got dtype {arr.dtype}")
        if arr.min() < 0 or arr.max() >= n:
            bad = int(arr.min()) if arr.min() < 0 else int(arr.max())
            raise ValueError(f"pixel value {bad} outside [0, {n})")

        arr = np.ascontiguousarray(arr.astype(_storage_dtype(n), copy=True))
        arr.flags.writeable = False
        object.__setattr__(self, "pixels", arr)
        object.__setattr__(self, "modulus", n)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        """(height, width), matching the pixel array."""
        return self.pixels.shape

    @property
    def is_scalar(self) -> bool:
        """True when every pixel carries the same gray level."""
        return self.scalar_value() is not None

    def scalar_value(self) -> int | None:
        """The single gray level of a constant image, or None.

        A one-pixel image is scalar by definition.  Note that the zero
        image yields ``0``, so test ``is not None`` rather than truthiness.
        """
        flat = self.pixels.ravel()
        v = int(flat[0])
        if (flat == v).all():
            return v
        return None

    def _check_operand(self, other: RingImage) -> None:
        if self.modulus != other.modulus:
            raise ModulusMismatchError(
                f"modulus mismatch: {self.modulus} vs {other.modulus}"
            )
        if self.shape != other.shape:
            raise ShapeMismatchError(
                f"shape mismatch: {self.height}x{self.width} vs "
                f"{other.height}x{other.width}"
            )

    def __add__(self, other: RingImage) -> RingImage:
        if not isinstance(other, RingImage):
            return NotImplemented
        self._check_operand(other)
        raw = self.pixels.astype(np.int64) + other.pixels.astype(np.int64)
        return RingImage(raw % self.modulus, self.modulus)

    def __sub__(self, other: RingImage) -> RingImage:
        if not isinstance(other, RingImage):
            return NotImplemented
        self._check_operand(other)
        raw = self.pixels.astype(np.int64) - other.pixels.astype(np.int64)
        return RingImage(raw % self.modulus, self.modulus)

    def __mul__(self, other: RingImage) -> RingImage:
        if not isinstance(other, RingImage):
            return NotImplemented
        self._check_operand(other)
        raw = self.pixels.astype(np.int64) * other.pixels.astype(np.int64)
        return RingImage(raw % self.modulus, self.modulus)

    def __neg__(self) -> RingImage:
        raw = -self.pixels.astype(np.int64)
        return RingImage(raw % self.modulus, self.modulus)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingImage):
            return NotImplemented
        return (
            self.modulus == other.modulus
            and self.shape == other.shape
            and bool((self.pixels == other.pixels).all())
        )

    def __repr__(self) -> str:
        return (
            f"RingImage({self.height}x{self.width}, modulus={self.modulus}, "
            f"pixels={self.pixels.ravel()[:8].tolist()}"
            f"{'...' if self.pixels.size > 8 else ''})"
        )


def scalar_image(value: int, width: int, height: int, modulus: int) -> RingImage:
    """A width x height image with every pixel set to ``value``."""
    if width < 1 or height < 1:
        raise ValueError(f"image dimensions must be positive, got {width}x{height}")
    if not 0 <= value < modulus:
        raise ValueError(f"pixel value {value} outside [0, {modulus})")
    return RingImage(np.full((height, width), value, dtype=np.int64), modulus)


def zero_image(width: int, height: int, modulus: int) -> RingImage:
    """The additive identity of the given shape and modulus."""
    return scalar_image(0, width, height, modulus)


def one_image(width: int, height: int, modulus: int) -> RingImage:
    """The multiplicative identity of the given shape and modulus."""
    return scalar_image(1, width, height, modulus)
