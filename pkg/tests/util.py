"""Shared comparison helpers for operator payloads and datasets."""

from __future__ import annotations

import numpy as np

from tsbench.data import Dataset
from tsbench.operators import CentroidFactors, ClusterResult, Discord, SaxWord


def strip_labels(d: Dataset) -> Dataset:
    return Dataset(name=d.name, timestamps=d.timestamps.copy(), series=d.series,
                   regularity=d.regularity, labels=None)


def payload_close(a, b, tol: float = 1e-9, bitwise: bool = False) -> bool:
    """Structural payload comparison used for cross-engine equivalence."""
    if isinstance(a, CentroidFactors):
        return (isinstance(b, CentroidFactors) and a.k == b.k
                and payload_close(a.L, b.L, tol, bitwise)
                and payload_close(a.R, b.R, tol, bitwise))
    if isinstance(a, ClusterResult):
        return (isinstance(b, ClusterResult)
                and payload_close(a.centroids, b.centroids, tol, bitwise)
                and np.array_equal(a.assignments, b.assignments)
                and payload_close(a.inertia, b.inertia, tol, bitwise))
    if isinstance(a, SaxWord):
        return isinstance(b, SaxWord) and a.letters == b.letters \
            and a.alphabet_size == b.alphabet_size
    if isinstance(a, Discord):
        return (isinstance(b, Discord) and a.series == b.series
                and a.start == b.start and a.length == b.length
                and payload_close(a.distance, b.distance, tol, bitwise))
    if isinstance(a, str):
        return a == b
    if isinstance(a, (list, tuple)):
        if not isinstance(b, (list, tuple)) or len(a) != len(b):
            return False
        return all(payload_close(x, y, tol, bitwise) for x, y in zip(a, b))
    if isinstance(a, (int, np.integer)) and isinstance(b, (int, np.integer)):
        return int(a) == int(b)
    arr_a = np.asarray(a, dtype=np.float64)
    arr_b = np.asarray(b, dtype=np.float64)
    if arr_a.shape != arr_b.shape:
        return False
    if bitwise:
        return arr_a.tobytes() == arr_b.tobytes()
    return bool(np.all(np.abs(arr_a - arr_b) <= tol))
