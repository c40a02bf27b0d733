"""Hierarchical series index with per-segment synopses for exact 1-NN search.

Every node keeps, for each segment of a shared equal-width segmentation,
the [min, max] ranges of the segment means and segment standard deviations
over the series below it.  A leaf over capacity splits on the segment with
the widest mean range at its midpoint.  Search walks nodes best-first and
prunes a node when its mean-gap lower bound already exceeds the best
distance found, which never discards the true nearest neighbour because
the bound under-estimates the distance to every series in the node.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field

import numpy as np

from ..errors import EmptyCollection, LengthMismatch, OutOfRange

_MAX_SEGMENTS = 8


@dataclass
class _Node:
    means_lo: np.ndarray
    means_hi: np.ndarray
    stds_lo: np.ndarray
    stds_hi: np.ndarray
    series_ids: np.ndarray | None = None
    left: "_Node | None" = None
    right: "_Node | None" = None
    split_segment: int = -1
    split_value: float = 0.0

    @property
    def is_leaf(self) -> bool:
        return self.series_ids is not None


@dataclass
class DSTreeIndex:
    series: np.ndarray
    boundaries: np.ndarray
    segment_lengths: np.ndarray
    leaf_capacity: int
    root: _Node
    seg_means: np.ndarray = field(repr=False, default=None)
    seg_stds: np.ndarray = field(repr=False, default=None)

    @property
    def n_series(self) -> int:
        return self.series.shape[0]


def _segment_stats(mat: np.ndarray, boundaries: np.ndarray):
    means = np.empty((mat.shape[0], len(boundaries) - 1))
    stds = np.empty_like(means)
    for s in range(len(boundaries) - 1):
        chunk = mat[:, boundaries[s]:boundaries[s + 1]]
        means[:, s] = chunk.mean(axis=1)
        stds[:, s] = chunk.std(axis=1)
    return means, stds


def _build_node(ids: np.ndarray, means: np.ndarray, stds: np.ndarray,
                capacity: int) -> _Node:
    node = _Node(
        means_lo=means[ids].min(axis=0),
        means_hi=means[ids].max(axis=0),
        stds_lo=stds[ids].min(axis=0),
        stds_hi=stds[ids].max(axis=0),
    )
    if len(ids) <= capacity:
        node.series_ids = ids
        return node
    widths = node.means_hi - node.means_lo
    seg = int(widths.argmax())
    mid = (node.means_lo[seg] + node.means_hi[seg]) / 2.0
    go_left = means[ids, seg] <= mid
    left_ids = ids[go_left]
    right_ids = ids[~go_left]
    if len(left_ids) == 0 or len(right_ids) == 0:
        # Indistinguishable synopses (e.g. identical series): keep as an
        # oversized leaf instead of recursing forever.
        node.series_ids = ids
        return node
    node.split_segment = seg
    node.split_value = mid
    node.left = _build_node(left_ids, means, stds, capacity)
    node.right = _build_node(right_ids, means, stds, capacity)
    return node


def dstree_build(collection, leaf_capacity: int) -> DSTreeIndex:
    """Index a collection of equal-length series for exact 1-NN queries."""
    rows = [np.asarray(s, dtype=np.float64) for s in collection]
    if not rows:
        raise EmptyCollection("cannot index an empty collection")
    length = rows[0].size
    for i, r in enumerate(rows):
        if r.ndim != 1 or r.size != length:
            raise LengthMismatch(f"series {i} has length {r.size}, expected {length}")
    if leaf_capacity < 1:
        raise OutOfRange("leaf_capacity must be >= 1")
    mat = np.vstack(rows)
    n_segments = min(_MAX_SEGMENTS, length)
    boundaries = np.array([(s * length) // n_segments for s in range(n_segments + 1)])
    means, stds = _segment_stats(mat, boundaries)
    root = _build_node(np.arange(mat.shape[0]), means, stds, leaf_capacity)
    return DSTreeIndex(
        series=mat,
        boundaries=boundaries,
        segment_lengths=np.diff(boundaries).astype(np.float64),
        leaf_capacity=leaf_capacity,
        root=root,
        seg_means=means,
        seg_stds=stds,
    )


def lower_bound(index: DSTreeIndex, node: _Node, query_means: np.ndarray) -> float:
    """Mean-gap lower bound on the distance from the query to any series in node."""
    gaps = np.maximum(0.0, np.maximum(node.means_lo - query_means,
                                      query_means - node.means_hi))
    return float(np.sqrt(np.dot(index.segment_lengths, gaps * gaps)))


def dstree_search(index: DSTreeIndex, query) -> tuple[int, float]:
    """Exact nearest series to the query; distance ties take the lower id."""
    q = np.asarray(query, dtype=np.float64)
    if index.n_series == 0:
        raise EmptyCollection("index holds no series")
    if q.ndim != 1 or q.size != index.series.shape[1]:
        raise LengthMismatch(
            f"query length {q.size} != indexed length {index.series.shape[1]}")
    b = index.boundaries
    query_means = np.array([q[b[s]:b[s + 1]].mean() for s in range(len(b) - 1)])

    counter = itertools.count()
    heap = [(lower_bound(index, index.root, query_means) ** 2, next(counter), index.root)]
    best_d2 = np.inf
    best_id = -1
    while heap:
        lb2, _, node = heapq.heappop(heap)
        if lb2 > best_d2:
            break  # heap is ordered: nothing left can beat or tie the best
        if node.is_leaf:
            d2 = ((index.series[node.series_ids] - q) ** 2).sum(axis=1)
            for sid, dd in zip(node.series_ids, d2):
                if dd < best_d2 or (dd == best_d2 and sid < best_id):
                    best_d2 = float(dd)
                    best_id = int(sid)
        else:
            for child in (node.left, node.right):
                heapq.heappush(
                    heap, (lower_bound(index, child, query_means) ** 2,
                           next(counter), child))
    return best_id, float(np.sqrt(best_d2))
