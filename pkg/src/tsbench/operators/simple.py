"""Range selection, summation, moving average, and Euclidean distance.

Sums accumulate strictly left to right so that independently written
engine code can reproduce them bit for bit.
"""

from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ..errors import LengthMismatch, OutOfRange


def fold_sum(values) -> float:
    """Left-to-right accumulation; the fixed evaluation order of the package."""
    acc = 0.0
    for v in np.asarray(values, dtype=np.float64).tolist():
        acc += v
    return acc


def select_range(dataset, series_name: str, t0: int, t1: int) -> list[tuple[int, float]]:
    """(timestamp, value) pairs with t0 <= timestamp <= t1, masked entries excluded."""
    if t0 > t1:
        raise OutOfRange(f"t0={t0} > t1={t1}")
    series = dataset.series_by_name(series_name)
    ts = dataset.timestamps
    lo = int(np.searchsorted(ts, t0, side="left"))
    hi = int(np.searchsorted(ts, t1, side="right"))
    out = []
    for i in range(lo, hi):
        if not series.missing[i]:
            out.append((int(ts[i]), float(series.values[i])))
    return out


def sum_series(dataset, series_name: str) -> float:
    """Left-fold sum of the unmasked values; an all-masked series sums to 0."""
    series = dataset.series_by_name(series_name)
    return fold_sum(series.values[~series.missing])


def moving_average(x, w: int) -> np.ndarray:
    """Means of every window of ``w`` consecutive values (length n-w+1).

    Each window is summed left to right (vectorized across windows), so
    the result is bitwise reproducible by any scan honoring that order.
    """
    arr = np.asarray(x, dtype=np.float64)
    n = arr.size
    if not (1 <= w <= n):
        raise OutOfRange(f"w={w} not in [1, {n}]")
    windows = sliding_window_view(arr, w)
    acc = windows[:, 0].copy()
    for j in range(1, w):
        acc += windows[:, j]
    return acc / w


def euclid_distance(ts1, ts2) -> float:
    """Euclidean distance between time-aligned points of two series."""
    a = np.asarray(ts1, dtype=np.float64)
    b = np.asarray(ts2, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise LengthMismatch(f"lengths {a.shape} vs {b.shape}")
    diff = a - b
    return float(np.sqrt(np.dot(diff, diff)))
