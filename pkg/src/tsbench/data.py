"""In-memory time-series model: datasets, CSV interchange, synthetic profiles.

A :class:`Dataset` is a set of equally long named series aligned to one
strictly increasing integer timestamp axis (milliseconds).  Missing values
are carried as an explicit boolean mask; the numeric content of a masked
cell is never read.  All objects are immutable after construction and safe
to share across threads.

CSV interchange format (the only on-disk format):

    timestamp,<name1>,...,<nameM>
    0,1.25,,3.0

UTF-8, LF line endings, integer timestamps, decimal floats; an empty cell
or a literal ``NaN`` marks a missing value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DuplicateSeriesName,
    InvalidDataset,
    InvalidProfile,
    LengthMismatch,
    MalformedCsv,
    NonMonotonicTimestamps,
    OutOfRange,
)

REGULAR = "regular"
IRREGULAR = "irregular"

_BASE_DELTA_MS = 1000


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """One named column of a dataset plus its missing-value mask."""

    name: str
    values: np.ndarray
    missing: np.ndarray

    def __post_init__(self):
        values = _frozen(np.asarray(self.values, dtype=np.float64))
        missing = _frozen(np.asarray(self.missing, dtype=bool))
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "missing", missing)
        if self.values.ndim != 1 or self.missing.ndim != 1:
            raise InvalidDataset("series values and mask must be one-dimensional")
        if len(self.values) != len(self.missing):
            raise LengthMismatch(
                f"series {self.name!r}: {len(self.values)} values vs "
                f"{len(self.missing)} mask entries"
            )

    def __len__(self) -> int:
        return len(self.values)

    def __eq__(self, other) -> bool:
        # Masked cells compare equal regardless of their numeric content.
        if not isinstance(other, TimeSeries):
            return NotImplemented
        if self.name != other.name or len(self) != len(other):
            return False
        if not np.array_equal(self.missing, other.missing):
            return False
        keep = ~self.missing
        a = self.values[keep]
        b = other.values[keep]
        return a.tobytes() == b.tobytes()


@dataclass(frozen=True, eq=False)
class Dataset:
    name: str
    timestamps: np.ndarray
    series: tuple[TimeSeries, ...]
    regularity: str = REGULAR
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        ts = _frozen(np.asarray(self.timestamps, dtype=np.int64))
        object.__setattr__(self, "timestamps", ts)
        object.__setattr__(self, "series", tuple(self.series))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
        if self.regularity not in (REGULAR, IRREGULAR):
            raise InvalidDataset(f"unknown regularity {self.regularity!r}")
        if len(ts) and np.any(np.diff(ts) <= 0):
            raise NonMonotonicTimestamps(f"dataset {self.name!r}")
        names = [s.name for s in self.series]
        if len(set(names)) != len(names):
            raise DuplicateSeriesName(f"dataset {self.name!r}")
        for s in self.series:
            if len(s) != len(ts):
                raise LengthMismatch(
                    f"series {s.name!r} has {len(s)} rows, dataset has {len(ts)}"
                )
        if self.labels is not None and len(self.labels) != len(ts):
            raise LengthMismatch("labels must match the timestamp count")

    # -- shape ---------------------------------------------------------------

    @property
    def n_rows(self) -> int:
        return len(self.timestamps)

    @property
    def n_series(self) -> int:
        return len(self.series)

    @property
    def series_names(self) -> list[str]:
        return [s.name for s in self.series]

    def series_by_name(self, name: str) -> TimeSeries:
        from .errors import UnknownSeries

        for s in self.series:
            if s.name == name:
                return s
        raise UnknownSeries(name)

    def values_matrix(self) -> np.ndarray:
        """Row-major (n_rows, n_series) value matrix."""
        if not self.series:
            return np.empty((self.n_rows, 0))
        return np.column_stack([s.values for s in self.series])

    def mask_matrix(self) -> np.ndarray:
        if not self.series:
            return np.empty((self.n_rows, 0), dtype=bool)
        return np.column_stack([s.missing for s in self.series])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            self.name == other.name
            and self.regularity == other.regularity
            and np.array_equal(self.timestamps, other.timestamps)
            and self.series == other.series
            and self.labels == other.labels
        )


# ---------------------------------------------------------------------------
# CSV interchange
# ---------------------------------------------------------------------------

def parse_dataset_csv(data: bytes, name: str) -> Dataset:
    """Parse the CSV interchange format into a Dataset.

    Raises MalformedCsv for structural problems (bad arity, unparseable
    numbers), NonMonotonicTimestamps, or DuplicateSeriesName.
    """
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise MalformedCsv(f"not valid UTF-8: {e}") from e
    lines = text.splitlines()
    if not lines:
        raise MalformedCsv("empty input")
    header = lines[0].split(",")
    if header[0] != "timestamp" or len(header) < 2:
        raise MalformedCsv("header must be 'timestamp,<name>,...'")
    col_names = header[1:]
    if len(set(col_names)) != len(col_names):
        raise DuplicateSeriesName("duplicate column name in header")

    n_cols = len(col_names)
    timestamps: list[int] = []
    columns: list[list[float]] = [[] for _ in range(n_cols)]
    masks: list[list[bool]] = [[] for _ in range(n_cols)]

    for lineno, line in enumerate(lines[1:], start=2):
        if line == "":
            continue
        cells = line.split(",")
        if len(cells) != n_cols + 1:
            raise MalformedCsv(f"line {lineno}: expected {n_cols + 1} cells, got {len(cells)}")
        try:
            ts = int(cells[0])
        except ValueError as e:
            raise MalformedCsv(f"line {lineno}: bad timestamp {cells[0]!r}") from e
        if timestamps and ts <= timestamps[-1]:
            raise NonMonotonicTimestamps(f"line {lineno}: {ts} after {timestamps[-1]}")
        timestamps.append(ts)
        for j, cell in enumerate(cells[1:]):
            cell = cell.strip()
            if cell == "" or cell == "NaN":
                columns[j].append(math.nan)
                masks[j].append(True)
                continue
            try:
                v = float(cell)
            except ValueError as e:
                raise MalformedCsv(f"line {lineno}: bad value {cell!r}") from e
            if math.isnan(v):
                columns[j].append(math.nan)
                masks[j].append(True)
            else:
                columns[j].append(v)
                masks[j].append(False)

    if not timestamps:
        raise MalformedCsv("no data rows")

    series = tuple(
        TimeSeries(col_names[j], np.array(columns[j]), np.array(masks[j], dtype=bool))
        for j in range(n_cols)
    )
    deltas = np.diff(np.asarray(timestamps, dtype=np.int64))
    regularity = REGULAR if len(deltas) == 0 or deltas.min() == deltas.max() else IRREGULAR
    return Dataset(name=name, timestamps=np.array(timestamps), series=series,
                   regularity=regularity)


def serialize_dataset_csv(d: Dataset) -> bytes:
    """Serialize a Dataset to the CSV interchange format.

    Floats use the shortest representation that round-trips; masked cells
    become empty cells.  Labels are session metadata and are not part of
    the interchange format.
    """
    if d.n_series == 0:
        raise InvalidDataset("cannot serialize a dataset with no series")
    out = ["timestamp," + ",".join(s.name for s in d.series)]
    for i in range(d.n_rows):
        cells = [str(int(d.timestamps[i]))]
        for s in d.series:
            cells.append("" if s.missing[i] else repr(float(s.values[i])))
        out.append(",".join(cells))
    return ("\n".join(out) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# Slicing
# ---------------------------------------------------------------------------

def slice_dataset(d: Dataset, rows: int, cols: int) -> Dataset:
    """First ``rows`` timestamps and first ``cols`` series, original order."""
    if not (1 <= rows <= d.n_rows):
        raise OutOfRange(f"rows={rows} not in [1, {d.n_rows}]")
    if not (1 <= cols <= d.n_series):
        raise OutOfRange(f"cols={cols} not in [1, {d.n_series}]")
    return Dataset(
        name=d.name,
        timestamps=d.timestamps[:rows].copy(),
        series=tuple(
            TimeSeries(s.name, s.values[:rows].copy(), s.missing[:rows].copy())
            for s in d.series[:cols]
        ),
        regularity=d.regularity,
        labels=None if d.labels is None else d.labels[:rows],
    )


# ---------------------------------------------------------------------------
# Synthetic profiles
# ---------------------------------------------------------------------------

PROFILE_IDS = ("alabama_mini", "sports_mini", "mex_mini", "hydraulic_mini", "custom")


@dataclass(frozen=True)
class DatasetProfile:
    """Shape and character of one synthetic dataset."""

    profile_id: str
    n_series: int
    n_rows: int
    anomaly_rate: float = 0.0
    missing_rate: float = 0.0
    regularity: str = REGULAR
    seed: int = 0
    features: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.profile_id not in PROFILE_IDS:
            raise InvalidProfile(f"unknown profile id {self.profile_id!r}")
        if self.n_series < 1:
            raise InvalidProfile("n_series must be >= 1")
        if self.n_rows < 2:
            raise InvalidProfile("n_rows must be >= 2")
        for rate, what in ((self.anomaly_rate, "anomaly_rate"), (self.missing_rate, "missing_rate")):
            if not (0.0 <= rate <= 1.0):
                raise InvalidProfile(f"{what} must lie in [0, 1]")
        if self.regularity not in (REGULAR, IRREGULAR):
            raise InvalidProfile(f"unknown regularity {self.regularity!r}")


# The four built-in shapes keep the relative proportions of the reference
# datasets (46x3.5M, 360x142.5k, 512x7k, 43680x2205) scaled to desk size.
BUILTIN_PROFILES: dict[str, DatasetProfile] = {
    "alabama_mini": DatasetProfile(
        "alabama_mini", n_series=46, n_rows=3500, anomaly_rate=0.005,
        regularity=REGULAR, seed=101, features=("anomalies", "regular")),
    "sports_mini": DatasetProfile(
        "sports_mini", n_series=360, n_rows=1425, anomaly_rate=0.005,
        regularity=REGULAR, seed=202, features=("regular", "anomalies")),
    "mex_mini": DatasetProfile(
        "mex_mini", n_series=512, n_rows=700, anomaly_rate=0.005,
        regularity=IRREGULAR, seed=303, features=("irregular", "anomalies")),
    "hydraulic_mini": DatasetProfile(
        "hydraulic_mini", n_series=4368, n_rows=220, anomaly_rate=0.005,
        regularity=REGULAR, seed=404, features=("regular", "anomalies")),
}

LABEL_HI = "hi"
LABEL_LO = "lo"


def generate_synthetic(p: DatasetProfile) -> Dataset:
    """Deterministically generate a dataset matching a profile.

    Each series is the sum of two seeded sinusoids plus unit Gaussian
    noise.  Anomalies are additive spikes of magnitude ten sigma on
    ``anomaly_rate`` of the rows; ``missing_rate`` of the cells are masked.
    Irregular profiles draw every inter-timestamp gap from {1..5} base
    deltas.  Row labels split into two classes by the sign of a sinusoid
    shared across all series (the classification target).
    """
    rng = np.random.default_rng(p.seed)
    n = p.n_rows

    if p.regularity == REGULAR:
        ts = np.arange(n, dtype=np.int64) * _BASE_DELTA_MS
    else:
        gaps = rng.integers(1, 6, size=n - 1).astype(np.int64) * _BASE_DELTA_MS
        ts = np.concatenate(([0], np.cumsum(gaps)))

    u = np.arange(n) / n
    shared_freq = rng.uniform(2.0, 6.0)
    shared_phase = rng.uniform(0.0, 2.0 * np.pi)
    shared_wave = np.sin(2.0 * np.pi * shared_freq * u + shared_phase)

    series = []
    for j in range(p.n_series):
        amp1 = rng.uniform(0.5, 2.0)
        amp2 = rng.uniform(0.5, 2.0)
        freq2 = rng.uniform(5.0, 20.0)
        phase2 = rng.uniform(0.0, 2.0 * np.pi)
        noise = rng.normal(0.0, 1.0, size=n)
        values = amp1 * shared_wave + amp2 * np.sin(2.0 * np.pi * freq2 * u + phase2) + noise
        if p.anomaly_rate > 0:
            spike_at = rng.random(n) < p.anomaly_rate
            spike_sign = np.where(rng.random(n) < 0.5, -1.0, 1.0)
            values = values + spike_at * spike_sign * 10.0
        if p.missing_rate > 0:
            missing = rng.random(n) < p.missing_rate
        else:
            missing = np.zeros(n, dtype=bool)
        series.append(TimeSeries(f"s{j}", values, missing))

    labels = tuple(LABEL_HI if w >= 0 else LABEL_LO for w in shared_wave)
    return Dataset(name=p.profile_id, timestamps=ts, series=tuple(series),
                   regularity=p.regularity, labels=labels)
