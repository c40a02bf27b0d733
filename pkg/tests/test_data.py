import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tsbench.data import (
    BUILTIN_PROFILES,
    Dataset,
    DatasetProfile,
    TimeSeries,
    generate_synthetic,
    parse_dataset_csv,
    serialize_dataset_csv,
    slice_dataset,
)
from tsbench.errors import (
    DuplicateSeriesName,
    InvalidDataset,
    InvalidProfile,
    MalformedCsv,
    NonMonotonicTimestamps,
    OutOfRange,
)
from util import strip_labels


class TestParse:
    def test_minimal_two_rows(self):
        d = parse_dataset_csv(b"timestamp,a\n0,1.0\n10,2.0", "t")
        assert d.n_rows == 2
        assert d.n_series == 1
        assert d.regularity == "regular"
        assert list(d.timestamps) == [0, 10]
        assert list(d.series[0].values) == [1.0, 2.0]

    def test_empty_cell_is_missing(self):
        d = parse_dataset_csv(b"timestamp,a\n0,\n10,3", "t")
        assert list(d.series[0].missing) == [True, False]

    def test_nan_literal_is_missing(self):
        d = parse_dataset_csv(b"timestamp,a\n0,NaN\n10,3", "t")
        assert list(d.series[0].missing) == [True, False]

    def test_non_monotonic(self):
        with pytest.raises(NonMonotonicTimestamps):
            parse_dataset_csv(b"timestamp,a\n10,1\n0,2", "t")

    def test_duplicate_timestamp(self):
        with pytest.raises(NonMonotonicTimestamps):
            parse_dataset_csv(b"timestamp,a\n5,1\n5,2", "t")

    def test_bad_arity(self):
        with pytest.raises(MalformedCsv):
            parse_dataset_csv(b"timestamp,a\n0,1,2", "t")

    def test_bad_number(self):
        with pytest.raises(MalformedCsv):
            parse_dataset_csv(b"timestamp,a\n0,zap", "t")

    def test_bad_timestamp(self):
        with pytest.raises(MalformedCsv):
            parse_dataset_csv(b"timestamp,a\nfoo,1", "t")

    def test_duplicate_series_name(self):
        with pytest.raises(DuplicateSeriesName):
            parse_dataset_csv(b"timestamp,a,a\n0,1,2", "t")

    def test_missing_header(self):
        with pytest.raises(MalformedCsv):
            parse_dataset_csv(b"time,a\n0,1", "t")

    def test_irregular_detected(self):
        d = parse_dataset_csv(b"timestamp,a\n0,1\n10,2\n15,3", "t")
        assert d.regularity == "irregular"


class TestSerialize:
    def test_round_trip_basic(self):
        d = parse_dataset_csv(b"timestamp,a\n0,1.0\n10,2.0", "t")
        assert parse_dataset_csv(serialize_dataset_csv(d), "t") == d

    def test_missing_emitted_as_empty_cell(self):
        d = parse_dataset_csv(b"timestamp,a\n0,\n10,3", "t")
        text = serialize_dataset_csv(d).decode()
        assert text.splitlines()[1] == "0,"

    def test_zero_series_rejected(self):
        d = Dataset(name="x", timestamps=np.array([0, 1]), series=())
        with pytest.raises(InvalidDataset):
            serialize_dataset_csv(d)

    def test_float_rendering_round_trips(self):
        values = np.array([0.1, 1 / 3, 1e-12, 123456.789])
        d = Dataset(name="x", timestamps=np.arange(4),
                    series=(TimeSeries("a", values, np.zeros(4, bool)),))
        back = parse_dataset_csv(serialize_dataset_csv(d), "x")
        assert back.series[0].values.tobytes() == values.tobytes()


class TestSlice:
    @pytest.fixture()
    def dataset(self):
        return generate_synthetic(DatasetProfile("custom", 5, 100, seed=3))

    def test_identity(self, dataset):
        assert slice_dataset(dataset, 100, 5) == dataset

    def test_prefix(self, dataset):
        s = slice_dataset(dataset, 10, 2)
        assert s.n_rows == 10
        assert s.series_names == dataset.series_names[:2]
        assert s.labels == dataset.labels[:10]
        assert np.array_equal(s.timestamps, dataset.timestamps[:10])

    def test_out_of_range(self, dataset):
        with pytest.raises(OutOfRange):
            slice_dataset(dataset, 0, 1)
        with pytest.raises(OutOfRange):
            slice_dataset(dataset, 1, 6)
        with pytest.raises(OutOfRange):
            slice_dataset(dataset, 101, 1)

    @given(rows=st.integers(1, 100), cols=st.integers(1, 5))
    @settings(max_examples=25, deadline=None)
    def test_idempotent(self, rows, cols):
        dataset = generate_synthetic(DatasetProfile("custom", 5, 100, seed=3))
        once = slice_dataset(dataset, rows, cols)
        assert slice_dataset(once, rows, cols) == once


class TestGenerate:
    def test_deterministic_bitwise(self):
        p = BUILTIN_PROFILES["alabama_mini"]
        a = generate_synthetic(p)
        b = generate_synthetic(p)
        assert a == b
        for sa, sb in zip(a.series, b.series):
            assert sa.values.tobytes() == sb.values.tobytes()

    def test_builtin_shapes(self):
        shapes = {
            "alabama_mini": (46, 3500),
            "sports_mini": (360, 1425),
            "mex_mini": (512, 700),
            "hydraulic_mini": (4368, 220),
        }
        for pid, (n_series, n_rows) in shapes.items():
            p = BUILTIN_PROFILES[pid]
            assert (p.n_series, p.n_rows) == (n_series, n_rows)
        d = generate_synthetic(BUILTIN_PROFILES["mex_mini"])
        assert d.regularity == "irregular"
        assert (d.n_series, d.n_rows) == (512, 700)

    def test_zero_rates(self):
        d = generate_synthetic(DatasetProfile("custom", 2, 10, anomaly_rate=0,
                                              missing_rate=0, seed=7))
        assert (d.n_series, d.n_rows) == (2, 10)
        assert not d.mask_matrix().any()
        deltas = np.diff(d.timestamps)
        assert deltas.min() == deltas.max()

    def test_missing_fraction_near_rate(self):
        d = generate_synthetic(DatasetProfile("custom", 2, 1000, missing_rate=0.5,
                                              seed=11))
        frac = d.mask_matrix().mean()
        assert abs(frac - 0.5) <= 0.05

    def test_regular_deltas_constant(self):
        d = generate_synthetic(BUILTIN_PROFILES["sports_mini"])
        deltas = np.diff(d.timestamps)
        assert deltas.min() == deltas.max()

    def test_irregular_gaps_from_allowed_set(self):
        d = generate_synthetic(BUILTIN_PROFILES["mex_mini"])
        deltas = set(np.diff(d.timestamps).tolist())
        assert deltas <= {1000, 2000, 3000, 4000, 5000}
        assert len(deltas) > 1

    def test_labels_two_classes(self):
        d = generate_synthetic(BUILTIN_PROFILES["sports_mini"])
        assert set(d.labels) == {"hi", "lo"}

    def test_invalid_profiles(self):
        with pytest.raises(InvalidProfile):
            DatasetProfile("custom", 0, 10)
        with pytest.raises(InvalidProfile):
            DatasetProfile("custom", 1, 1)
        with pytest.raises(InvalidProfile):
            DatasetProfile("custom", 1, 10, anomaly_rate=1.5)
        with pytest.raises(InvalidProfile):
            DatasetProfile("bogus", 1, 10)

    def test_anomaly_spikes_present(self):
        clean = generate_synthetic(DatasetProfile("custom", 1, 2000, seed=5))
        spiky = generate_synthetic(DatasetProfile("custom", 1, 2000, seed=5,
                                                  anomaly_rate=0.01))
        # same seed, same base draws: the spiky run adds |10| at ~1% of rows
        diff = spiky.series[0].values - clean.series[0].values
        assert np.abs(diff).max() == 10.0
        assert 0.001 <= (diff != 0).mean() <= 0.05

    @given(seed=st.integers(0, 2**32 - 1))
    @settings(max_examples=20, deadline=None)
    def test_csv_round_trip_generated(self, seed):
        d = generate_synthetic(DatasetProfile("custom", 3, 40, anomaly_rate=0.05,
                                              missing_rate=0.1, seed=seed))
        bare = strip_labels(d)
        assert parse_dataset_csv(serialize_dataset_csv(bare), d.name) == bare
