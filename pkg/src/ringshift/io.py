"""Reading and writing grayscale images, iteration traces, and line profiles.

Supported image formats:

* PGM, both plain ``P2`` (ASCII) and raw ``P5`` (binary).  The header is
  whitespace-delimited with ``#`` comments; ``maxval`` may not exceed
  65535 and fixes the ring modulus as ``maxval + 1``.  Raw samples are
  one byte when ``maxval < 256``, else two bytes big-endian.
* PNG, grayscale only, bit depth 8 or 16 (modulus 256 or 65536).  The
  IHDR chunk is checked directly; Pillow does the pixel coding.

Iteration traces go to CSV with a ``k,criterion_value,entropy_after``
header and a trailing ``# stopped: <reason>`` comment line; floats are
printed with 17 significant digits so parsing them back is lossless.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
from PIL import Image

from .meanshift import IterationTrace
from .ring import RingImage

_PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"
_PNM_WHITESPACE = b" \t\n\r\x0b\x0c"


class ImageFormatError(ValueError):
    """A file could not be decoded or encoded in a supported image format."""


class UnsupportedFormatError(ImageFormatError):
    """The file is not one of the formats this package reads or writes."""


class MalformedHeaderError(ImageFormatError):
    """The image header is syntactically or semantically invalid."""


class MalformedPixelError(ImageFormatError):
    """The pixel data is truncated, unparseable, or out of declared range."""


@dataclass(frozen=True)
class ProfileLine:
    """Gray levels sampled along the rasterized segment from start to end.

    ``samples`` holds ``(t, value)`` pairs in order from the start point;
    the sample count is ``max(|dx|, |dy|) + 1``.
    """

    start: tuple[int, int]
    end: tuple[int, int]
    samples: tuple[tuple[int, int], ...]

    def values(self) -> list[int]:
        return [v for _, v in self.samples]


# ---------------------------------------------------------------------------
# PGM
# ---------------------------------------------------------------------------


class _PnmScanner:
    """Whitespace/comment-aware tokenizer over raw PNM bytes."""

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def skip_separators(self) -> None:
        data, i = self.data, self.pos
        while i < len(data):
            c = data[i : i + 1]
            if c in _PNM_WHITESPACE:
                i += 1
            elif c == b"#":
                while i < len(data) and data[i : i + 1] not in b"\r\n":
                    i += 1
            else:
                break
        self.pos = i

    def next_token(self) -> bytes | None:
        self.skip_separators()
        data, i = self.data, self.pos
        start = i
        while i < len(data) and data[i : i + 1] not in _PNM_WHITESPACE and data[i : i + 1] != b"#":
            i += 1
        self.pos = i
        return data[start:i] if i > start else None

    def next_int(self, what: str, error_cls=MalformedHeaderError) -> int:
        at = self.pos
        token = self.next_token()
        if token is None:
            raise error_cls(f"unexpected end of file while reading {what} (byte {at})")
        try:
            return int(token.decode("ascii"))
        except (UnicodeDecodeError, ValueError):
            raise error_cls(f"invalid {what} {token!r} at byte {at}") from None


def _load_pgm(data: bytes, path: str) -> RingImage:
    scanner = _PnmScanner(data)
    magic = scanner.next_token()
    if magic not in (b"P2", b"P5"):
        raise UnsupportedFormatError(f"{path}: not a P2/P5 PGM file (magic {magic!r})")

    width = scanner.next_int("width")
    height = scanner.next_int("height")
    if width < 1 or height < 1:
        raise MalformedHeaderError(f"{path}: non-positive dimensions {width}x{height}")
    maxval = scanner.next_int("maxval")
    if not 1 <= maxval <= 65535:
        raise MalformedHeaderError(f"{path}: maxval {maxval} outside [1, 65535]")

    count = width * height
    if magic == b"P2":
        values = np.empty(count, dtype=np.int64)
        for i in range(count):
            at = scanner.pos
            v = scanner.next_int(f"pixel {i}", MalformedPixelError)
            if not 0 <= v <= maxval:
                raise MalformedPixelError(
                    f"{path}: pixel {i} (byte {at}) is {v}, exceeds maxval {maxval}"
                )
            values[i] = v
        scanner.skip_separators()
        if scanner.pos < len(data):
            raise MalformedPixelError(
                f"{path}: trailing data after {count} pixels (byte {scanner.pos})"
            )
    else:
        # Raw format: exactly one whitespace byte separates maxval from samples.
        if scanner.pos >= len(data) or data[scanner.pos : scanner.pos + 1] not in _PNM_WHITESPACE:
            raise MalformedHeaderError(
                f"{path}: missing whitespace after maxval (byte {scanner.pos})"
            )
        start = scanner.pos + 1
        sample_width = 1 if maxval < 256 else 2
        needed = count * sample_width
        raster = data[start : start + needed]
        if len(raster) < needed:
            raise MalformedPixelError(
                f"{path}: raster truncated, expected {needed} bytes from byte "
                f"{start}, found {len(raster)}"
            )
        dtype = np.uint8 if sample_width == 1 else np.dtype(">u2")
        values = np.frombuffer(raster, dtype=dtype).astype(np.int64)
        if values.max() > maxval:
            i = int(np.argmax(values > maxval))
            raise MalformedPixelError(
                f"{path}: pixel {i} is {int(values[i])}, exceeds maxval {maxval}"
            )

    return RingImage(values.reshape(height, width), maxval + 1)


def _ascii_rows(values: np.ndarray, limit: int = 70):
    """Tokens joined into lines no longer than ``limit`` characters."""
    line: list[str] = []
    length = 0
    for v in values:
        token = str(int(v))
        extra = len(token) + (1 if line else 0)
        if line and length + extra > limit:
            yield " ".join(line)
            line, length = [], 0
            extra = len(token)
        line.append(token)
        length += extra
    if line:
        yield " ".join(line)


def _save_pgm(image: RingImage, path: str, binary: bool) -> None:
    maxval = image.modulus - 1
    if maxval > 65535:
        raise ImageFormatError(
            f"modulus {image.modulus} does not fit PGM (maxval <= 65535)"
        )
    magic = "P5" if binary else "P2"
    with open(path, "wb") as fh:
        fh.write(f"{magic}\n{image.width} {image.height}\n{maxval}\n".encode("ascii"))
        if binary:
            if maxval < 256:
                fh.write(image.pixels.astype(np.uint8).tobytes())
            else:
                fh.write(image.pixels.astype(">u2").tobytes())
        else:
            for line in _ascii_rows(image.pixels.ravel()):
                fh.write(line.encode("ascii") + b"\n")


# ---------------------------------------------------------------------------
# PNG
# ---------------------------------------------------------------------------


def _load_png(data: bytes, path: str) -> RingImage:
    if len(data) < 26:
        raise MalformedHeaderError(f"{path}: too short to contain a PNG IHDR")
    bit_depth = data[24]
    color_type = data[25]
    if color_type != 0:
        raise UnsupportedFormatError(
            f"{path}: PNG color type {color_type} is not grayscale"
        )
    if bit_depth not in (8, 16):
        raise UnsupportedFormatError(
            f"{path}: PNG grayscale bit depth {bit_depth} unsupported (need 8 or 16)"
        )
    try:
        with Image.open(path) as img:
            arr = np.asarray(img)
    except Exception as exc:
        raise MalformedPixelError(f"{path}: PNG decode failed: {exc}") from exc
    return RingImage(arr.astype(np.int64), 2**bit_depth)


def _save_png(image: RingImage, path: str, bit_depth: int) -> None:
    limit = 2**bit_depth
    if image.modulus > limit:
        raise ImageFormatError(
            f"modulus {image.modulus} does not fit {bit_depth}-bit PNG"
        )
    if bit_depth == 8:
        Image.fromarray(image.pixels.astype(np.uint8)).save(path, format="PNG")
    else:
        Image.fromarray(image.pixels.astype(np.uint16)).save(path, format="PNG")


# ---------------------------------------------------------------------------
# Public image API
# ---------------------------------------------------------------------------

SAVE_FORMATS = ("p2", "p5", "png", "png16")


def load_image(path: str | os.PathLike) -> RingImage:
    """Decode a PGM (P2/P5) or grayscale PNG file into a RingImage.

    The modulus is ``maxval + 1`` for PGM and ``2**bit_depth`` for PNG.
    """
    path = os.fspath(path)
    with open(path, "rb") as fh:
        data = fh.read()
    if data.startswith(_PNG_SIGNATURE):
        return _load_png(data, path)
    if data[:2] in (b"P2", b"P5"):
        return _load_pgm(data, path)
    raise UnsupportedFormatError(f"{path}: unrecognized image format")


def save_image(image: RingImage, path: str | os.PathLike, format: str | None = None) -> None:
    """Encode to ``p2``, ``p5``, ``png`` (8-bit) or ``png16``.

    With ``format=None`` the extension decides: ``.pgm`` saves raw P5 and
    ``.png`` picks the smallest PNG depth that fits the modulus.  Loading
    the file back reproduces the pixels bit-exactly, and also the modulus
    whenever the format records it (PGM always; PNG when the modulus is
    exactly 256 or 65536).
    """
    path = os.fspath(path)
    if format is None:
        ext = os.path.splitext(path)[1].lower()
        if ext == ".pgm":
            format = "p5"
        elif ext == ".png":
            format = "png" if image.modulus <= 256 else "png16"
        else:
            raise UnsupportedFormatError(
                f"cannot infer format from {path!r}; pass format= explicitly"
            )
    format = format.lower()
    if format == "p2":
        _save_pgm(image, path, binary=False)
    elif format == "p5":
        _save_pgm(image, path, binary=True)
    elif format == "png":
        _save_png(image, path, bit_depth=8)
    elif format == "png16":
        _save_png(image, path, bit_depth=16)
    else:
        raise UnsupportedFormatError(
            f"unknown save format {format!r}, expected one of {SAVE_FORMATS}"
        )


# ---------------------------------------------------------------------------
# Traces and profiles
# ---------------------------------------------------------------------------


def write_trace_csv(trace: IterationTrace, path: str | os.PathLike) -> None:
    """Write one CSV row per outer iteration plus a stop-reason comment."""
    with open(os.fspath(path), "w", encoding="ascii", newline="") as fh:
        fh.write("k,criterion_value,entropy_after\n")
        for entry in trace.entries:
            fh.write(
                f"{entry.iteration},{entry.criterion_value:.17g},"
                f"{entry.entropy_after:.17g}\n"
            )
        fh.write(f"# stopped: {trace.stopped_reason.value}\n")


def bresenham_points(
    start: tuple[int, int], end: tuple[int, int]
) -> list[tuple[int, int]]:
    """Integer (x, y) points of the segment, ordered from start to end.

    Classic driving-axis midpoint walk: exactly ``max(|dx|, |dy|) + 1``
    points, endpoints included.
    """
    x0, y0 = start
    x1, y1 = end
    steep = abs(y1 - y0) > abs(x1 - x0)
    if steep:
        x0, y0, x1, y1 = y0, x0, y1, x1
    reverse = x0 > x1
    if reverse:
        x0, y0, x1, y1 = x1, y1, x0, y0

    dx = x1 - x0
    dy = abs(y1 - y0)
    step = 1 if y0 < y1 else -1
    err = dx // 2
    y = y0
    points = []
    for x in range(x0, x1 + 1):
        points.append((y, x) if steep else (x, y))
        err -= dy
        if err < 0:
            y += step
            err += dx
    if reverse:
        points.reverse()
    return points


def extract_profile(
    image: RingImage, start: tuple[int, int], end: tuple[int, int]
) -> ProfileLine:
    """Sample the image along the rasterized line between two in-bounds points."""
    for label, (x, y) in (("start", start), ("end", end)):
        if not (0 <= x < image.width and 0 <= y < image.height):
            raise ValueError(
                f"{label} point ({x}, {y}) outside image bounds "
                f"{image.width}x{image.height}"
            )
    points = bresenham_points((int(start[0]), int(start[1])), (int(end[0]), int(end[1])))
    samples = tuple(
        (t, int(image.pixels[y, x])) for t, (x, y) in enumerate(points)
    )
    return ProfileLine((int(start[0]), int(start[1])), (int(end[0]), int(end[1])), samples)
