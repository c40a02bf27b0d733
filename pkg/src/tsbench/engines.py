"""Embedded storage engines: a row store and a column store, time-chunked.

Both engines hold inserted datasets as a sequence of chunks covering
disjoint consecutive row ranges.  The row store lays each chunk out row
by row (one record's fields contiguous); the column store keeps one
contiguous slab per series per chunk.  Results never depend on the chunk
size or layout: an operator runs either as a UDF (reassemble the stored
data, apply the pure catalog function) or natively inside the engine's
scan code for the operators the engine declares built in.

Sums and window means accumulate strictly left to right in row order in
every code path, so the two engines agree bit for bit on them.

Concurrency: one writer at a time per engine; readers never observe a
partially inserted dataset because tables are built fully before being
published under the engine lock.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from . import catalog
from .data import Dataset, TimeSeries, slice_dataset
from .errors import (
    BenchError,
    DuplicateDataset,
    EngineUnavailable,
    OperatorError,
    OutOfRange,
    UnknownDataset,
    UnknownEngine,
    UnknownSeries,
    UnsupportedMode,
)

BY_ROW = "by_row"
BY_COLUMN = "by_column"

DEFAULT_CHUNK_SIZE = 10000


@dataclass(frozen=True)
class InsertStats:
    rows: int
    cells: int  # unmasked cells actually stored
    elapsed_ms: float


@dataclass
class OperatorRequest:
    operator: str
    params: dict = field(default_factory=dict)
    mode: str = catalog.UDF
    rows: int | None = None
    cols: int | None = None


@dataclass(frozen=True)
class OperatorResult:
    payload: object
    elapsed_ms: float


@dataclass
class _Chunk:
    timestamps: np.ndarray  # (r,)
    data: np.ndarray        # by_row: (r, M) C-order; by_column: (M, r) C-order
    mask: np.ndarray        # same layout as data


class ChunkedTable:
    """One inserted dataset, split into consecutive row chunks."""

    def __init__(self, dataset: Dataset, layout: str, chunk_size: int):
        if chunk_size < 1:
            raise OutOfRange("chunk_size must be >= 1")
        self.layout = layout
        self.chunk_size = chunk_size
        self.name = dataset.name
        self.series_names = list(dataset.series_names)
        self.regularity = dataset.regularity
        self.labels = dataset.labels
        self.n_rows = dataset.n_rows

        values = dataset.values_matrix()
        mask = dataset.mask_matrix()
        self.chunks: list[_Chunk] = []
        for start in range(0, dataset.n_rows, chunk_size):
            stop = min(start + chunk_size, dataset.n_rows)
            block = values[start:stop]
            mblock = mask[start:stop]
            if layout == BY_ROW:
                data = np.ascontiguousarray(block)
                m = np.ascontiguousarray(mblock)
            else:
                data = np.ascontiguousarray(block.T)
                m = np.ascontiguousarray(mblock.T)
            self.chunks.append(_Chunk(
                timestamps=dataset.timestamps[start:stop].copy(),
                data=data, mask=m))

    def column_index(self, name: str) -> int:
        try:
            return self.series_names.index(name)
        except ValueError:
            raise UnknownSeries(name) from None

    def reconstruct(self) -> Dataset:
        if not self.chunks:
            return Dataset(name=self.name, timestamps=np.empty(0, dtype=np.int64),
                           series=tuple(TimeSeries(name, np.empty(0), np.empty(0, bool))
                                        for name in self.series_names),
                           regularity=self.regularity, labels=self.labels)
        ts = np.concatenate([c.timestamps for c in self.chunks])
        if self.layout == BY_ROW:
            values = np.vstack([c.data for c in self.chunks])
            mask = np.vstack([c.mask for c in self.chunks])
        else:
            values = np.hstack([c.data for c in self.chunks]).T
            mask = np.hstack([c.mask for c in self.chunks]).T
        series = tuple(
            TimeSeries(name, values[:, j].copy(), mask[:, j].copy())
            for j, name in enumerate(self.series_names)
        )
        return Dataset(name=self.name, timestamps=ts, series=series,
                       regularity=self.regularity, labels=self.labels)


class StorageEngine:
    """Shared behaviour of the embedded engines."""

    engine_id = ""
    display_name = ""
    layout = BY_ROW

    def __init__(self, chunk_size: int = DEFAULT_CHUNK_SIZE):
        self.chunk_size = chunk_size
        self._tables: dict[str, ChunkedTable] = {}
        self._lock = threading.Lock()

    # -- storage ---------------------------------------------------------

    def insert(self, dataset: Dataset) -> InsertStats:
        with self._lock:
            if dataset.name in self._tables:
                raise DuplicateDataset(dataset.name)
        t0 = time.perf_counter()
        table = ChunkedTable(dataset, self.layout, self.chunk_size)
        elapsed = (time.perf_counter() - t0) * 1000.0
        with self._lock:
            if dataset.name in self._tables:
                raise DuplicateDataset(dataset.name)
            self._tables[dataset.name] = table
        cells = int((~dataset.mask_matrix()).sum())
        return InsertStats(rows=dataset.n_rows, cells=cells, elapsed_ms=elapsed)

    def table(self, name: str) -> ChunkedTable:
        with self._lock:
            try:
                return self._tables[name]
            except KeyError:
                raise UnknownDataset(name) from None

    def datasets(self) -> list[str]:
        with self._lock:
            return sorted(self._tables)

    # -- execution ---------------------------------------------------------

    def capabilities(self) -> dict[str, tuple[str, ...]]:
        return {name: catalog.supported_modes(name, self.engine_id)
                for name in catalog.OPERATOR_NAMES}

    def run(self, dataset_name: str, req: OperatorRequest) -> OperatorResult:
        table = self.table(dataset_name)
        spec = catalog.operator_spec(req.operator)
        mode = spec.forced_mode or req.mode
        if mode not in catalog.supported_modes(req.operator, self.engine_id):
            raise UnsupportedMode(
                f"{req.operator} does not support mode {mode!r} on {self.engine_id}")
        params = catalog.validate_params(req.operator, req.params)
        base_op = spec.base or spec.name

        t0 = time.perf_counter()
        try:
            if mode == catalog.NATIVE:
                payload = self._native(table, base_op, params, req.rows)
            else:
                dataset = table.reconstruct()
                if req.rows is not None or req.cols is not None:
                    dataset = slice_dataset(dataset,
                                            req.rows or dataset.n_rows,
                                            req.cols or dataset.n_series)
                payload = catalog.execute(base_op, params, dataset)
        except BenchError as e:
            raise OperatorError(f"{req.operator} failed: {e}", cause=e) from e
        elapsed = (time.perf_counter() - t0) * 1000.0
        return OperatorResult(payload=payload, elapsed_ms=elapsed)

    # -- native paths ------------------------------------------------------

    def _native(self, table: ChunkedTable, op: str, params: dict,
                rows_limit: int | None):
        raise UnsupportedMode(f"{self.engine_id} has no native operators")

    def _series_param(self, table: ChunkedTable, params: dict) -> int:
        name = params.get("series")
        if name is None:
            if not table.series_names:
                raise UnknownSeries("dataset has no series")
            return 0
        return table.column_index(str(name))


def _cells(chunk: _Chunk, layout: str, j: int) -> tuple[np.ndarray, np.ndarray]:
    """Value and mask vectors of column j within one chunk."""
    if layout == BY_ROW:
        return chunk.data[:, j], chunk.mask[:, j]
    return chunk.data[j], chunk.mask[j]


class RowStore(StorageEngine):
    """Row-oriented engine: each chunk stores whole records contiguously."""

    engine_id = "row_store"
    display_name = "Embedded row store"
    layout = BY_ROW

    def _native(self, table: ChunkedTable, op: str, params: dict,
                rows_limit: int | None):
        if op == "sum":
            j = self._series_param(table, params)
            acc = 0.0
            seen = 0
            for chunk in table.chunks:
                rows = chunk.data.shape[0]
                for i in range(rows):
                    if rows_limit is not None and seen >= rows_limit:
                        return acc
                    seen += 1
                    if not chunk.mask[i, j]:
                        acc += float(chunk.data[i, j])
            return acc
        if op == "select":
            return _native_select(table, params, rows_limit)
        raise UnsupportedMode(f"{self.engine_id} cannot run {op} natively")


class ColumnStore(StorageEngine):
    """Column-oriented engine: each chunk stores one contiguous slab per series."""

    engine_id = "column_store"
    display_name = "Embedded column store"
    layout = BY_COLUMN

    def _gather_column(self, table: ChunkedTable, j: int,
                       rows_limit: int | None) -> list[float]:
        out: list[float] = []
        seen = 0
        for chunk in table.chunks:
            slab = chunk.data[j]
            miss = chunk.mask[j]
            rows = slab.shape[0]
            take = rows if rows_limit is None else min(rows, rows_limit - seen)
            if take <= 0:
                break
            for v, m in zip(slab[:take].tolist(), miss[:take].tolist()):
                if not m:
                    out.append(v)
            seen += take
        return out

    def _native(self, table: ChunkedTable, op: str, params: dict,
                rows_limit: int | None):
        if op == "sum":
            j = self._series_param(table, params)
            acc = 0.0
            seen = 0
            for chunk in table.chunks:
                slab = chunk.data[j]
                miss = chunk.mask[j]
                rows = slab.shape[0]
                take = rows if rows_limit is None else min(rows, rows_limit - seen)
                if take <= 0:
                    break
                for v, m in zip(slab[:take].tolist(), miss[:take].tolist()):
                    if not m:
                        acc += v
                seen += take
            return acc
        if op == "select":
            return _native_select(table, params, rows_limit)
        if op == "znormalize":
            j = self._series_param(table, params)
            values = self._gather_column(table, j, rows_limit)
            if not values:
                raise OutOfRange("series has no observed values")
            n = len(values)
            total = 0.0
            for v in values:
                total += v
            mean = total / n
            sq = 0.0
            for v in values:
                sq += (v - mean) ** 2
            sigma = (sq / n) ** 0.5
            arr = np.asarray(values)
            if sigma == 0.0:
                return np.zeros(n)
            return (arr - mean) / sigma
        if op == "moving_average":
            j = self._series_param(table, params)
            values = np.asarray(self._gather_column(table, j, rows_limit))
            w = params.get("w", 10)
            if not (1 <= w <= values.size):
                raise OutOfRange(f"w={w} not in [1, {values.size}]")
            windows = sliding_window_view(values, w)
            acc = windows[:, 0].copy()
            for col in range(1, w):
                acc += windows[:, col]
            return acc / w
        raise UnsupportedMode(f"{self.engine_id} cannot run {op} natively")


def _native_select(table: ChunkedTable, params: dict,
                   rows_limit: int | None) -> list[tuple[int, float]]:
    """Chunk-pruned range scan shared by both layouts."""
    if not table.series_names:
        raise UnknownSeries("dataset has no series")
    name = params.get("series")
    j = table.column_index(str(name)) if name is not None else 0
    t0 = params.get("t0")
    t1 = params.get("t1")
    if table.chunks:
        if t0 is None:
            t0 = int(table.chunks[0].timestamps[0])
        if t1 is None:
            t1 = int(table.chunks[-1].timestamps[-1])
    if t0 is None or t1 is None:
        return []
    if t0 > t1:
        raise OutOfRange(f"t0={t0} > t1={t1}")

    out: list[tuple[int, float]] = []
    seen = 0
    for chunk in table.chunks:
        ts = chunk.timestamps
        rows = ts.shape[0]
        take = rows if rows_limit is None else min(rows, rows_limit - seen)
        if take <= 0:
            break
        seen += take
        if ts[take - 1] < t0 or ts[0] > t1:
            continue  # chunk's time range misses the window entirely
        values, miss = _cells(chunk, table.layout, j)
        lo = int(np.searchsorted(ts[:take], t0, side="left"))
        hi = int(np.searchsorted(ts[:take], t1, side="right"))
        for i in range(lo, hi):
            if not miss[i]:
                out.append((int(ts[i]), float(values[i])))
    return out


# ---------------------------------------------------------------------------
# Registry (extension point for external adapters)
# ---------------------------------------------------------------------------

_ENGINE_TYPES: dict[str, type[StorageEngine]] = {
    RowStore.engine_id: RowStore,
    ColumnStore.engine_id: ColumnStore,
}


def register_engine(engine_id: str, engine_type: type[StorageEngine]) -> None:
    _ENGINE_TYPES[engine_id] = engine_type


def engine_ids() -> list[str]:
    return sorted(_ENGINE_TYPES)


def create_engine(engine_id: str, chunk_size: int = DEFAULT_CHUNK_SIZE) -> StorageEngine:
    try:
        engine_type = _ENGINE_TYPES[engine_id]
    except KeyError:
        raise UnknownEngine(engine_id) from None
    try:
        return engine_type(chunk_size=chunk_size)
    except BenchError:
        raise
    except Exception as e:
        # registered external adapters may fail to come up
        raise EngineUnavailable(f"{engine_id}: {e}") from e


def engine_display_name(engine_id: str) -> str:
    if engine_id not in _ENGINE_TYPES:
        raise UnknownEngine(engine_id)
    return _ENGINE_TYPES[engine_id].display_name or engine_id


def list_capabilities(engine_id: str) -> dict[str, tuple[str, ...]]:
    if engine_id not in _ENGINE_TYPES:
        raise UnknownEngine(engine_id)
    return {name: catalog.supported_modes(name, engine_id)
            for name in catalog.OPERATOR_NAMES}
