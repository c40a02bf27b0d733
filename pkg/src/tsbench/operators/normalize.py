"""Z-normalization, piecewise aggregate approximation, and SAX words."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from ..errors import EmptyInput, OutOfRange


def znormalize(x) -> np.ndarray:
    """Rescale to zero mean and unit population standard deviation.

    A constant input (sigma == 0) maps to all zeros rather than dividing
    by zero.
    """
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise OutOfRange("expected a one-dimensional value list")
    if arr.size == 0:
        raise EmptyInput("znormalize needs at least one value")
    mu = arr.mean()
    sigma = arr.std()
    if sigma == 0.0:
        return np.zeros_like(arr)
    return (arr - mu) / sigma


def paa(x, w: int) -> np.ndarray:
    """Exact fractional piecewise aggregate approximation.

    The index range is cut into ``w`` equal-width segments; each output
    value is the length-weighted mean of the cells its segment overlaps.
    When ``w`` divides ``len(x)`` this reduces to plain per-segment means,
    and ``w == len(x)`` is the identity.
    """
    arr = np.asarray(x, dtype=np.float64)
    n = arr.size
    if not (1 <= w <= n):
        raise OutOfRange(f"w={w} not in [1, {n}]")
    if w == n:
        return arr.copy()
    seg_len = n / w
    out = np.empty(w)
    for j in range(w):
        lo = j * n / w
        hi = (j + 1) * n / w
        i0 = int(np.floor(lo))
        i1 = int(np.ceil(hi))
        idx = np.arange(i0, min(i1, n))
        weights = np.minimum(hi, idx + 1.0) - np.maximum(lo, idx.astype(np.float64))
        out[j] = float(np.dot(weights, arr[idx])) / seg_len
    return out


@dataclass(frozen=True)
class SaxWord:
    """A SAX word: one lower-case letter per PAA segment."""

    letters: str
    alphabet_size: int

    def __post_init__(self):
        for ch in self.letters:
            if not (0 <= ord(ch) - ord("a") < self.alphabet_size):
                raise OutOfRange(f"letter {ch!r} outside alphabet of {self.alphabet_size}")

    def __len__(self) -> int:
        return len(self.letters)


def sax_breakpoints(a: int) -> np.ndarray:
    """The a-1 breakpoints at standard-Gaussian quantiles i/a."""
    return norm.ppf(np.arange(1, a) / a)


def sax(x, w: int, a: int) -> SaxWord:
    """Symbolic aggregate approximation of a value list.

    Z-normalizes, reduces to ``w`` PAA segments, then maps each segment
    mean onto one of ``a`` letters using breakpoints at standard-Gaussian
    quantiles: a value below the first breakpoint is 'a', a value in
    [bp_i, bp_i+1) gets the (i+1)-th letter.
    """
    arr = np.asarray(x, dtype=np.float64)
    n = arr.size
    if n < 2:
        raise OutOfRange("sax needs at least two values")
    if not (2 <= a <= 20):
        raise OutOfRange(f"alphabet size a={a} not in [2, 20]")
    if not (1 <= w <= n):
        raise OutOfRange(f"w={w} not in [1, {n}]")
    reduced = paa(znormalize(arr), w)
    bps = sax_breakpoints(a)
    indices = np.searchsorted(bps, reduced, side="right")
    letters = "".join(chr(ord("a") + int(i)) for i in indices)
    return SaxWord(letters=letters, alphabet_size=a)
