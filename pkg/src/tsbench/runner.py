"""Benchmark execution: timed inserts and repeated operator runs per engine.

A benchmark inserts the sliced dataset into a fresh instance of every
requested engine (timed), runs the requested operator a configurable
number of warmup times (discarded) and repetitions (timed), and reports
one row per measured section.  Measured sections run strictly
sequentially; the clock is injectable so tests can pin exact timings.
The ranking statistic is the median of the query repetitions, which is
robust to warmup and scheduling outliers.
"""

from __future__ import annotations

import io
import time
from dataclasses import dataclass

from .data import BUILTIN_PROFILES, Dataset, DatasetProfile, generate_synthetic, slice_dataset
from .engines import DEFAULT_CHUNK_SIZE, OperatorRequest, create_engine
from .errors import (
    BenchError,
    DuplicateDataset,
    NoResults,
    OperatorError,
    OutOfRange,
    UnknownDataset,
)

PHASE_INSERT = "insert"
PHASE_QUERY = "query"

CSV_HEADER = "engine,operator,dataset,rows,cols,phase,rep,elapsed_ms"


@dataclass(frozen=True)
class BenchmarkSpec:
    engines: tuple[str, ...]
    operator: OperatorRequest
    dataset: str | DatasetProfile
    rows: int
    cols: int
    reps: int = 5
    warmups: int = 1

    def __post_init__(self):
        object.__setattr__(self, "engines", tuple(self.engines))
        if not self.engines:
            raise OutOfRange("at least one engine is required")
        if self.reps < 1:
            raise OutOfRange("reps must be >= 1")
        if self.warmups < 0:
            raise OutOfRange("warmups must be >= 0")
        if self.rows < 1 or self.cols < 1:
            raise OutOfRange("rows and cols must be >= 1")


@dataclass(frozen=True)
class BenchmarkResult:
    engine: str
    operator: str
    dataset: str
    rows: int
    cols: int
    phase: str
    rep: int
    elapsed_ms: float


@dataclass(frozen=True)
class Recommendation:
    ranking: tuple[str, ...]
    winner: str
    medians: dict[str, float]


class DatasetStore:
    """Built-in synthetic profiles plus uploaded datasets, lazily generated."""

    def __init__(self):
        import threading

        self._lock = threading.Lock()
        self._generated: dict[str, Dataset] = {}
        self._uploaded: dict[str, Dataset] = {}

    def resolve(self, ref: str | DatasetProfile) -> Dataset:
        if isinstance(ref, DatasetProfile):
            return generate_synthetic(ref)
        with self._lock:
            if ref in self._uploaded:
                return self._uploaded[ref]
            if ref in self._generated:
                return self._generated[ref]
        if ref in BUILTIN_PROFILES:
            dataset = generate_synthetic(BUILTIN_PROFILES[ref])
            with self._lock:
                self._generated.setdefault(ref, dataset)
            return dataset
        raise UnknownDataset(str(ref))

    def upload(self, name: str, dataset: Dataset) -> None:
        with self._lock:
            if name in BUILTIN_PROFILES or name in self._uploaded:
                raise DuplicateDataset(name)
            self._uploaded[name] = dataset

    def entries(self) -> list[dict]:
        out = []
        for pid, profile in BUILTIN_PROFILES.items():
            out.append({
                "id": pid,
                "kind": "builtin",
                "n_series": profile.n_series,
                "n_rows": profile.n_rows,
                "regularity": profile.regularity,
                "features": list(profile.features),
            })
        with self._lock:
            uploads = list(self._uploaded.items())
        for name, dataset in uploads:
            out.append({
                "id": name,
                "kind": "uploaded",
                "n_series": dataset.n_series,
                "n_rows": dataset.n_rows,
                "regularity": dataset.regularity,
                "features": [],
            })
        return out


class BenchmarkFailure(BenchError):
    """An engine or operator error, tagged with where the run stood."""

    def __init__(self, engine: str, phase: str, rep: int, cause: Exception):
        super().__init__(f"{engine}/{phase}[rep {rep}]: {cause}")
        self.engine = engine
        self.phase = phase
        self.rep = rep
        self.cause = cause

    @property
    def code(self) -> str:
        if isinstance(self.cause, OperatorError):
            return self.cause.code
        if isinstance(self.cause, BenchError):
            return self.cause.code
        return "BenchmarkFailure"


def run_benchmark(spec: BenchmarkSpec, store: DatasetStore | None = None,
                  engine_factory=create_engine, clock=time.perf_counter,
                  chunk_size: int = DEFAULT_CHUNK_SIZE) -> list[BenchmarkResult]:
    """Execute one benchmark and return (engine, phase, rep)-ordered results."""
    store = store or DatasetStore()
    dataset = store.resolve(spec.dataset)
    sliced = slice_dataset(dataset, spec.rows, spec.cols)
    ctx = {
        "operator": spec.operator.operator,
        "dataset": dataset.name,
        "rows": spec.rows,
        "cols": spec.cols,
    }

    results: list[BenchmarkResult] = []
    for engine_id in spec.engines:
        engine = engine_factory(engine_id, chunk_size=chunk_size)
        try:
            t0 = clock()
            engine.insert(sliced)
            t1 = clock()
        except BenchError as e:
            raise BenchmarkFailure(engine_id, PHASE_INSERT, 0, e) from e
        results.append(BenchmarkResult(engine=engine_id, phase=PHASE_INSERT,
                                       rep=0, elapsed_ms=(t1 - t0) * 1000.0, **ctx))
        for rep in range(spec.warmups):
            try:
                engine.run(sliced.name, spec.operator)
            except BenchError as e:
                raise BenchmarkFailure(engine_id, PHASE_QUERY, rep, e) from e
        for rep in range(spec.reps):
            try:
                t0 = clock()
                engine.run(sliced.name, spec.operator)
                t1 = clock()
            except BenchError as e:
                raise BenchmarkFailure(engine_id, PHASE_QUERY, rep, e) from e
            results.append(BenchmarkResult(engine=engine_id, phase=PHASE_QUERY,
                                           rep=rep, elapsed_ms=(t1 - t0) * 1000.0,
                                           **ctx))
    return results


def _median(values: list[float]) -> float:
    ordered = sorted(values)
    n = len(ordered)
    mid = n // 2
    if n % 2:
        return ordered[mid]
    return (ordered[mid - 1] + ordered[mid]) / 2.0


def recommend(results: list[BenchmarkResult]) -> Recommendation:
    """Rank engines by ascending median query time; ties break on engine id."""
    per_engine: dict[str, list[float]] = {}
    for r in results:
        if r.phase == PHASE_QUERY:
            per_engine.setdefault(r.engine, []).append(r.elapsed_ms)
    if not per_engine:
        raise NoResults("no query-phase results to rank")
    medians = {engine: _median(times) for engine, times in per_engine.items()}
    ranking = tuple(sorted(medians, key=lambda e: (medians[e], e)))
    return Recommendation(ranking=ranking, winner=ranking[0], medians=medians)


def results_to_csv(results: list[BenchmarkResult],
                   recommendation: Recommendation | None = None) -> bytes:
    """Result rows as CSV; the recommendation rides along as # comment lines."""
    if not results:
        raise NoResults("no results to serialize")
    if recommendation is None:
        recommendation = recommend(results)
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for r in results:
        buf.write(f"{r.engine},{r.operator},{r.dataset},{r.rows},{r.cols},"
                  f"{r.phase},{r.rep},{r.elapsed_ms:.3f}\n")
    buf.write(f"# winner,{recommendation.winner}\n")
    for engine in recommendation.ranking:
        buf.write(f"# median,{engine},{recommendation.medians[engine]:.3f}\n")
    return buf.getvalue().encode("utf-8")


def parse_results_csv(data: bytes) -> tuple[list[BenchmarkResult], Recommendation | None]:
    """Inverse of results_to_csv (timings at their 3-decimal precision)."""
    lines = data.decode("utf-8").splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise NoResults("not a benchmark result CSV")
    results = []
    winner = None
    medians: dict[str, float] = {}
    for line in lines[1:]:
        if not line:
            continue
        if line.startswith("#"):
            parts = [p.strip() for p in line[1:].split(",")]
            if parts[0] == "winner":
                winner = parts[1]
            elif parts[0] == "median":
                medians[parts[1]] = float(parts[2])
            continue
        engine, operator, dataset, rows, cols, phase, rep, elapsed = line.split(",")
        results.append(BenchmarkResult(
            engine=engine, operator=operator, dataset=dataset, rows=int(rows),
            cols=int(cols), phase=phase, rep=int(rep), elapsed_ms=float(elapsed)))
    rec = None
    if winner is not None:
        ranking = tuple(sorted(medians, key=lambda e: (medians[e], e)))
        rec = Recommendation(ranking=ranking, winner=winner, medians=medians)
    return results, rec
