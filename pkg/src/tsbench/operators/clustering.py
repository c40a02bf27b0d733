"""K-means clustering and k-nearest-neighbour classification."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from ..errors import LabelMismatch, LengthMismatch, OutOfRange

# Independent restarts raced per call.  Lloyd alone converges to weak
# local optima on small point sets; restarts plus a single-point exchange
# polish close that gap.
_RESTARTS = 30


@dataclass(frozen=True)
class ClusterResult:
    """Centroids (k x m), per-row assignments, and the summed squared error."""

    centroids: np.ndarray
    assignments: np.ndarray
    inertia: float


def _squared_distances(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    return ((points[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)


def _kmeanspp_init(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = points.shape[0]
    centroids = np.empty((k, points.shape[1]))
    centroids[0] = points[int(rng.integers(n))]
    closest = ((points - centroids[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = closest.sum()
        if total <= 0.0:
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=closest / total))
        centroids[j] = points[idx]
        closest = np.minimum(closest, ((points - centroids[j]) ** 2).sum(axis=1))
    return centroids


def _lloyd(points: np.ndarray, centroids: np.ndarray, max_iter: int):
    """Lloyd iterations until assignments stabilize; returns the inertia trace.

    An emptied cluster is repaired by seizing the point currently farthest
    from its own centroid.
    """
    n, k = points.shape[0], centroids.shape[0]
    assignments = np.full(n, -1)
    history: list[float] = []
    for _ in range(max_iter):
        d2 = _squared_distances(points, centroids)
        new_assign = d2.argmin(axis=1)
        for c in range(k):
            if not (new_assign == c).any():
                own = d2[np.arange(n), new_assign]
                far = int(own.argmax())
                new_assign[far] = c
                centroids[c] = points[far]
                d2 = _squared_distances(points, centroids)
        history.append(float(d2[np.arange(n), new_assign].sum()))
        if (new_assign == assignments).all():
            break
        assignments = new_assign
        for c in range(k):
            members = assignments == c
            if members.any():
                centroids[c] = points[members].mean(axis=0)
    return centroids, assignments, history


def _exchange_polish(points: np.ndarray, centroids: np.ndarray,
                     assignments: np.ndarray) -> np.ndarray:
    """Move single points between clusters while the exact inertia delta improves."""
    n, k = points.shape[0], centroids.shape[0]
    counts = np.bincount(assignments, minlength=k).astype(np.float64)
    sums = np.zeros((k, points.shape[1]))
    for c in range(k):
        sums[c] = points[assignments == c].sum(axis=0)
    for _ in range(10 * n + 10):
        cents = sums / counts[:, None]
        d2 = _squared_distances(points, cents)
        own = assignments
        cnt_own = counts[own]
        gain = np.where(cnt_own > 1, cnt_own / np.maximum(cnt_own - 1, 1)
                        * d2[np.arange(n), own], -np.inf)
        cost = counts[None, :] / (counts[None, :] + 1) * d2
        cost[np.arange(n), own] = np.inf
        best_target = cost.argmin(axis=1)
        delta = gain - cost[np.arange(n), best_target]
        i = int(delta.argmax())
        if not delta[i] > 1e-12:
            break
        a, b = int(own[i]), int(best_target[i])
        sums[a] -= points[i]
        counts[a] -= 1
        sums[b] += points[i]
        counts[b] += 1
        assignments = assignments.copy()
        assignments[i] = b
    return assignments


def kmeans(points, k: int, seed: int = 0, max_iter: int = 100) -> ClusterResult:
    """Cluster rows of ``points`` into k groups.

    Runs seeded k-means++ initialization and Lloyd iterations over a fixed
    number of restarts, polishing each run with single-point exchanges and
    a final Lloyd pass, and keeps the lowest-inertia run.  Deterministic
    for a fixed seed; every returned assignment indexes its nearest
    centroid (ties to the lowest index).
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts[:, None]
    n = pts.shape[0]
    if not (1 <= k <= n):
        raise OutOfRange(f"k={k} not in [1, {n}]")
    if max_iter < 1:
        raise OutOfRange("max_iter must be >= 1")

    rng = np.random.default_rng(seed)
    best: tuple[float, np.ndarray, np.ndarray] | None = None
    for _ in range(_RESTARTS):
        cents = _kmeanspp_init(pts, k, rng)
        cents, assign, _ = _lloyd(pts, cents, max_iter)
        assign = _exchange_polish(pts, cents, assign)
        for c in range(k):
            members = assign == c
            if members.any():
                cents[c] = pts[members].mean(axis=0)
        cents, assign, _ = _lloyd(pts, cents, max_iter)
        d2 = _squared_distances(pts, cents)
        inertia = float(d2[np.arange(n), assign].sum())
        if best is None or inertia < best[0]:
            best = (inertia, cents.copy(), assign.copy())

    inertia, cents, assign = best
    d2 = _squared_distances(pts, cents)
    assign = d2.argmin(axis=1)  # argmin takes the lowest index on ties
    inertia = float(d2[np.arange(n), assign].sum())
    return ClusterResult(centroids=cents, assignments=assign, inertia=inertia)


def knn_classify(train, train_labels, query, k: int) -> str:
    """Majority label among the k nearest training rows by Euclidean distance.

    Distance ties prefer the lower row index; vote ties prefer the label
    that sorts first.
    """
    pts = np.asarray(train, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts[:, None]
    labels = list(train_labels)
    if len(labels) != pts.shape[0]:
        raise LabelMismatch(f"{len(labels)} labels for {pts.shape[0]} rows")
    if not labels:
        raise LabelMismatch("empty training set")
    q = np.asarray(query, dtype=np.float64).reshape(-1)
    if not (1 <= k <= pts.shape[0]):
        raise OutOfRange(f"k={k} not in [1, {pts.shape[0]}]")
    if q.shape[0] != pts.shape[1]:
        raise LengthMismatch(f"query length {q.shape[0]} != row length {pts.shape[1]}")
    dists = np.sqrt(((pts - q) ** 2).sum(axis=1))
    order = np.argsort(dists, kind="stable")[:k]
    votes = Counter(labels[i] for i in order)
    top = max(votes.values())
    return min(label for label, count in votes.items() if count == top)
