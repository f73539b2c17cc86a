"""Independent brute-force oracles used to cross-check library results.

Everything here is deliberately written the dumb way (python loops, dict
tallies, full-image window scans) so it shares no code path with the
implementations under test.
"""

import math

import numpy as np

from ringshift import RingImage


def random_image(rng, width, height, modulus) -> RingImage:
    return RingImage(rng.integers(0, modulus, size=(height, width)), modulus)


def entropy_oracle(image: RingImage) -> float:
    """Direct summation over occurring gray levels, in ascending order."""
    counts: dict[int, int] = {}
    for v in image.pixels.ravel().tolist():
        counts[v] = counts.get(v, 0) + 1
    total = image.pixels.size
    bits = 0.0
    for level in sorted(counts):
        p = counts[level] / total
        bits -= p * math.log2(p)
    return bits


def tally_oracle(image: RingImage) -> list[int]:
    counts = [0] * image.modulus
    for v in image.pixels.ravel().tolist():
        counts[v] += 1
    return counts


def mod_op_oracle(a: RingImage, b: RingImage, op: str) -> list[int]:
    """Element-wise scalar loop for +, - and * modulo n."""
    n = a.modulus
    out = []
    for x, y in zip(a.pixels.ravel().tolist(), b.pixels.ravel().tolist()):
        if op == "add":
            out.append((x + y) % n)
        elif op == "sub":
            out.append((x - y + n) % n)
        elif op == "mul":
            out.append((x * y) % n)
        else:
            raise ValueError(op)
    return out


def single_update_oracle(image: RingImage, hs: float, hr: float) -> np.ndarray:
    """One uniform-kernel mean-shift update per pixel, full-image scan.

    Returns the window mean each pixel would move to on its first step.
    Quadratic in the pixel count; only use on small images.
    """
    vals = image.pixels.astype(np.float64)
    h, w = vals.shape
    out = np.empty((h, w), dtype=np.float64)
    for py in range(h):
        for px in range(w):
            v = vals[py, px]
            acc = 0.0
            cnt = 0
            for qy in range(h):
                for qx in range(w):
                    if (qx - px) ** 2 + (qy - py) ** 2 <= hs * hs and abs(
                        vals[qy, qx] - v
                    ) <= hr:
                        acc += vals[qy, qx]
                        cnt += 1
            out[py, px] = acc / cnt
    return out


def count_transitions(values) -> int:
    return sum(1 for i in range(1, len(values)) if values[i] != values[i - 1])
