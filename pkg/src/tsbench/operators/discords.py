"""Discord discovery: the subsequences farthest from their nearest match.

A discord of window length ``win`` is the subsequence of the z-normalized
series maximizing the Euclidean distance to its nearest non-self match
(windows overlapping fewer than ``win`` positions apart are "self").  The
search orders candidates by the rarity of their SAX word and abandons a
candidate as soon as its running nearest-match distance drops below the
best discord found so far; both devices only skip work, so the result is
identical to the quadratic scan the tests compare against.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ..errors import OutOfRange
from .normalize import sax, znormalize

_SAX_SEGMENTS = 3
_SAX_ALPHABET = 3
_BATCH = 512


@dataclass(frozen=True)
class Discord:
    series: str
    start: int
    length: int
    distance: float


def _candidate_starts(n: int, win: int) -> list[int]:
    # A window qualifies only if at least one non-self match exists.
    return [i for i in range(n - win + 1) if i >= win or i + win <= n - win]


def hotsax_discords(x, win: int, count: int, name: str = "") -> list[Discord]:
    """Top ``count`` discords of the z-normalized series, strongest first.

    Returned discords are mutually non-self-matching; ties in distance
    prefer the lower start index.  If the non-overlap rule exhausts the
    candidates early, fewer than ``count`` discords are returned.
    """
    arr = np.asarray(x, dtype=np.float64)
    n = arr.size
    if win < 2:
        raise OutOfRange("win must be >= 2")
    if count < 1:
        raise OutOfRange("count must be >= 1")
    if n < 2 * win:
        raise OutOfRange(f"series length {n} is shorter than two windows of {win}")
    candidates = _candidate_starts(n, win)
    if count > len(candidates):
        raise OutOfRange(f"count={count} exceeds {len(candidates)} candidate windows")

    z = znormalize(arr)
    windows = sliding_window_view(z, win)
    n_windows = windows.shape[0]

    words = [sax(windows[i], min(_SAX_SEGMENTS, win), _SAX_ALPHABET).letters
             for i in range(n_windows)]
    freq = Counter(words)
    by_word: dict[str, np.ndarray] = {}
    for j, word in enumerate(words):
        by_word.setdefault(word, []).append(j)
    by_word = {word: np.asarray(starts) for word, starts in by_word.items()}
    # Rarest words first: unusual shapes are the likeliest discords, which
    # tightens the abandonment threshold early.
    outer_order = sorted(candidates, key=lambda i: (freq[words[i]], i))

    found: list[Discord] = []
    taken: list[int] = []
    all_starts = np.arange(n_windows)
    for _ in range(count):
        best_d2 = -1.0
        best_start = -1
        for i in outer_order:
            if any(abs(i - s) < win for s in taken):
                continue
            non_self = np.abs(all_starts - i) >= win
            peers = by_word[words[i]]
            same = peers[np.abs(peers - i) >= win]
            rest_mask = non_self.copy()
            rest_mask[same] = False
            rest = all_starts[rest_mask]
            running = np.inf
            abandoned = False
            for batch in _batches(same, rest):
                d2 = ((windows[batch] - windows[i]) ** 2).sum(axis=1)
                running = min(running, float(d2.min()))
                if running < best_d2:
                    abandoned = True
                    break
            if abandoned:
                continue
            if running > best_d2 or (running == best_d2 and i < best_start):
                best_d2 = running
                best_start = i
        if best_start < 0:
            break  # non-overlap rule exhausted the candidates
        found.append(Discord(series=name, start=int(best_start), length=win,
                             distance=float(np.sqrt(best_d2))))
        taken.append(best_start)
    return found


def _batches(same: np.ndarray, rest: np.ndarray):
    if same.size:
        yield same
    for off in range(0, rest.size, _BATCH):
        yield rest[off:off + _BATCH]
