"""Centroid decomposition of a matrix into loading and relation factors.

The decomposition peels off one component per step: find a sign vector z
maximizing ||X^T z||, normalize X^T z into a unit relation column c, take
the loading column l = X c, and subtract the rank-one product from the
residual.  With full order the product L R^T reconstructs the input to
machine precision and the relation columns form an orthonormal set.

The sign-vector subproblem is solved by greedy single-entry flips on
V = (X X^T - diag(X X^T)) z: while any entry disagrees in sign with V,
flip the disagreeing entry with the largest |V_i|.  A single all-ones
start can stall in a local maximum, so several deterministic starts are
raced and the best objective wins (all-ones first, then per-column sign
patterns, a power-iteration estimate of the dominant direction, and a
fixed set of seeded random patterns on small inputs).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import EmptyMatrix, OutOfRange

# Inputs with at most this many rows cache the Gram matrix so each flip
# updates V in O(n) instead of O(n*m).
_GRAM_ROW_LIMIT = 4096

# Below this row count the start set is widened; the exhaustive-search
# regime in the tests lives well inside it.
_SMALL_ROWS = 24

_RANDOM_STARTS = 8
_START_SEED = 0x5157


def _as_matrix(X) -> np.ndarray:
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise EmptyMatrix(f"expected a non-empty 2-D matrix, got shape {np.shape(X)}")
    return arr


def _greedy_gram(Gt: np.ndarray, z0: np.ndarray) -> np.ndarray:
    """Greedy flips with incremental V updates against a zero-diagonal Gram."""
    z = z0.copy()
    n = z.size
    V = Gt @ z
    flips = 0
    while True:
        disagree = (z * V) < 0
        if not disagree.any():
            return z
        idx = np.flatnonzero(disagree)
        i = idx[np.argmax(np.abs(V[idx]))]
        z[i] = -z[i]
        V += (2.0 * z[i]) * Gt[:, i]
        flips += 1
        if flips % (2 * n) == 0:
            V = Gt @ z  # shed accumulated float drift


def _greedy_matvec(X: np.ndarray, diag: np.ndarray, z0: np.ndarray) -> np.ndarray:
    """Greedy flips recomputing V from the data matrix (no Gram cache)."""
    z = z0.copy()
    while True:
        V = X @ (X.T @ z) - diag * z
        disagree = (z * V) < 0
        if not disagree.any():
            return z
        idx = np.flatnonzero(disagree)
        i = idx[np.argmax(np.abs(V[idx]))]
        z[i] = -z[i]


def _power_start(X: np.ndarray) -> np.ndarray:
    """Sign pattern of (approximately) the leading left singular vector."""
    n = X.shape[0]
    u = np.full(n, 1.0 / np.sqrt(n))
    for _ in range(8):
        w = X @ (X.T @ u)
        nrm = float(np.linalg.norm(w))
        if nrm == 0.0:
            break
        u = w / nrm
    return np.where(u >= 0, 1.0, -1.0)


def _start_vectors(X: np.ndarray) -> list[np.ndarray]:
    n, m = X.shape
    starts = [np.ones(n)]
    if n <= _SMALL_ROWS:
        for j in range(m):
            starts.append(np.where(X[:, j] >= 0, 1.0, -1.0))
    starts.append(_power_start(X))
    if n <= _SMALL_ROWS:
        rng = np.random.default_rng(_START_SEED)
        for _ in range(_RANDOM_STARTS):
            starts.append(np.where(rng.random(n) < 0.5, -1.0, 1.0))
    return starts


def _best_sign_vector(X: np.ndarray, Gt: np.ndarray | None) -> np.ndarray:
    diag = None if Gt is not None else np.einsum("ij,ij->i", X, X)
    best_z = None
    best_obj = -1.0
    for z0 in _start_vectors(X):
        if Gt is not None:
            z = _greedy_gram(Gt, z0)
        else:
            z = _greedy_matvec(X, diag, z0)
        obj = float(np.linalg.norm(X.T @ z))
        if obj > best_obj:
            best_obj = obj
            best_z = z
    return best_z


def sign_vector(X) -> np.ndarray:
    """Sign vector in {-1, +1}^n maximizing ||X^T z|| over greedy ascents.

    The result is a fixed point of the flip rule: no entry disagrees in
    sign with (X X^T - diag(X X^T)) z, and the objective is at least that
    of the all-ones start.
    """
    arr = _as_matrix(X)
    n = arr.shape[0]
    Gt = None
    if n <= _GRAM_ROW_LIMIT:
        Gt = arr @ arr.T
        np.fill_diagonal(Gt, 0.0)
    return _best_sign_vector(arr, Gt)


@dataclass(frozen=True)
class CentroidFactors:
    """Loading matrix L (n x k) and relation matrix R (m x k)."""

    L: np.ndarray
    R: np.ndarray
    k: int

    def reconstruct(self) -> np.ndarray:
        return self.L @ self.R.T


def centroid_decomposition(X, k: int | None = None) -> CentroidFactors:
    """Decompose X (n x m) into L R^T using k sign-vector steps.

    ``k`` defaults to the column count, in which case L R^T reproduces X
    to machine precision.  Relation columns are unit vectors (zero columns
    only for an exactly zero residual) oriented so their first non-zero
    entry is positive, which pins down the otherwise arbitrary sign of
    each component.
    """
    arr = _as_matrix(X)
    n, m = arr.shape
    if k is None:
        k = m
    if not (1 <= k <= m):
        raise OutOfRange(f"k={k} not in [1, {m}]")

    residual = arr.copy()
    use_gram = n <= _GRAM_ROW_LIMIT
    Gt = None
    if use_gram:
        Gt = residual @ residual.T
        np.fill_diagonal(Gt, 0.0)

    L = np.zeros((n, k))
    R = np.zeros((m, k))
    # Each step annihilates one direction of the column space, so steps
    # beyond rank(X) <= min(n, m) contribute exactly zero columns.
    effective = min(k, n, m)
    for step in range(effective):
        z = _best_sign_vector(residual, Gt)
        v = residual.T @ z
        nrm = float(np.linalg.norm(v))
        if nrm > 0.0:
            c = v / nrm
            nz = np.flatnonzero(c)
            if nz.size and c[nz[0]] < 0:
                c = -c
        else:
            c = np.zeros(m)
        loading = residual @ c
        L[:, step] = loading
        R[:, step] = c
        residual -= np.outer(loading, c)
        if use_gram and step < effective - 1:
            _downdate(Gt, loading)
    return CentroidFactors(L=L, R=R, k=k)


def _downdate(Gt: np.ndarray, loading: np.ndarray, block: int = 1024) -> None:
    """In-place Gt -= loading loading^T without materializing the outer product."""
    n = loading.size
    for b0 in range(0, n, block):
        b1 = min(b0 + block, n)
        Gt[b0:b1] -= loading[b0:b1, None] * loading[None, :]
    np.fill_diagonal(Gt, 0.0)
