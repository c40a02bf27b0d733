"""Erroneous-data handling: speed-constraint repair and missing-value recovery."""

from __future__ import annotations

import bisect

import numpy as np

from ..errors import AllMissingColumn, LengthMismatch, OutOfRange
from .decomposition import centroid_decomposition


def screen_repair(x, t, smin: float, smax: float, window) -> np.ndarray:
    """Repair a series so every in-window pair of points obeys the speed bounds.

    One sequential pass.  For each point the prior points within ``window``
    (already repaired) induce a feasible interval
    [max_j(x_j + smin*dt), min_j(x_j + smax*dt)]; a point outside it is
    replaced by the median of the candidate set {x_i} plus the speed
    extrapolations x_j + smax*dt and x_j + smin*dt of every in-window
    prior point, clamped into the interval.  Candidates are a multiset
    (coinciding extrapolations are counted as often as they occur).
    A series already satisfying every constraint is returned unchanged.
    """
    values = np.asarray(x, dtype=np.float64)
    times = np.asarray(t, dtype=np.int64)
    if values.shape != times.shape or values.ndim != 1:
        raise LengthMismatch(f"{values.shape} values vs {times.shape} timestamps")
    if not smin < smax:
        raise OutOfRange(f"smin={smin} must be < smax={smax}")
    if not window > 0:
        raise OutOfRange("window must be positive")
    if len(times) > 1 and np.any(np.diff(times) <= 0):
        raise OutOfRange("timestamps must be strictly increasing")

    repaired = values.copy()
    tlist = times.tolist()
    for i in range(len(repaired)):
        first = bisect.bisect_left(tlist, tlist[i] - window)
        if first >= i:
            continue  # no prior point inside the window
        dts = times[first:i].astype(np.float64)
        dt = float(times[i]) - dts
        lows = repaired[first:i] + smin * dt
        highs = repaired[first:i] + smax * dt
        lb = lows.max()
        ub = highs.min()
        xi = repaired[i]
        if lb <= ub and not (lb <= xi <= ub):
            candidates = np.concatenate(([xi], highs, lows))
            med = float(np.median(candidates))
            repaired[i] = min(max(med, lb), ub)
    return repaired


def recover_missing(X, mask, k_trunc: int, tol: float = 1e-6,
                    max_iter: int = 100) -> np.ndarray:
    """Impute masked cells of a matrix by iterated truncated decomposition.

    Masked cells start from per-column linear interpolation (boundary
    cells take the nearest observed value), then repeat: decompose with
    order ``k_trunc``, rebuild, overwrite the masked cells with the
    rebuilt values.  Stops when the largest per-iteration change at a
    masked cell drops below ``tol`` or after ``max_iter`` rounds.
    Observed cells pass through bit-for-bit.
    """
    arr = np.asarray(X, dtype=np.float64)
    missing = np.asarray(mask, dtype=bool)
    if arr.shape != missing.shape or arr.ndim != 2:
        raise LengthMismatch(f"matrix {arr.shape} vs mask {missing.shape}")
    n, m = arr.shape
    if not (1 <= k_trunc < m):
        raise OutOfRange(f"k_trunc={k_trunc} not in [1, {m - 1}]")
    if not tol > 0:
        raise OutOfRange("tol must be positive")
    if max_iter < 1:
        raise OutOfRange("max_iter must be >= 1")
    for j in range(m):
        if missing[:, j].all():
            raise AllMissingColumn(f"column {j} has no observed value")

    if not missing.any():
        return arr.copy()

    work = arr.copy()
    rows = np.arange(n)
    for j in range(m):
        holes = missing[:, j]
        if holes.any():
            work[holes, j] = np.interp(rows[holes], rows[~holes], arr[~holes, j])

    for _ in range(max_iter):
        factors = centroid_decomposition(work, k_trunc)
        rebuilt = factors.reconstruct()
        change = float(np.max(np.abs(rebuilt[missing] - work[missing])))
        work[missing] = rebuilt[missing]
        if change < tol:
            break

    out = arr.copy()
    out[missing] = work[missing]
    return out
