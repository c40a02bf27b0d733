import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tsbench.data import Dataset, TimeSeries
from tsbench.errors import LengthMismatch, OutOfRange, UnknownSeries
from tsbench.operators import euclid_distance, moving_average, select_range, sum_series

from oracles import fold_sum_oracle


def make_dataset(timestamps, values, missing=None):
    values = np.asarray(values, dtype=float)
    if missing is None:
        missing = np.zeros(len(values), bool)
    return Dataset(name="d", timestamps=np.asarray(timestamps),
                   series=(TimeSeries("a", values, np.asarray(missing)),))


class TestSelect:
    def test_inner_window(self):
        d = make_dataset([0, 10, 20], [1.0, 2.0, 3.0])
        assert select_range(d, "a", 5, 15) == [(10, 2.0)]

    def test_full_range_returns_unmasked(self):
        d = make_dataset([0, 10, 20], [1.0, 2.0, 3.0], [False, True, False])
        assert select_range(d, "a", 0, 20) == [(0, 1.0), (20, 3.0)]

    def test_disjoint_range_empty(self):
        d = make_dataset([0, 10, 20], [1.0, 2.0, 3.0])
        assert select_range(d, "a", 100, 200) == []

    def test_unknown_series(self):
        d = make_dataset([0], [1.0])
        with pytest.raises(UnknownSeries):
            select_range(d, "b", 0, 1)

    def test_inverted_range(self):
        d = make_dataset([0], [1.0])
        with pytest.raises(OutOfRange):
            select_range(d, "a", 5, 1)

    def test_bounds_inclusive(self):
        d = make_dataset([0, 10, 20], [1.0, 2.0, 3.0])
        assert select_range(d, "a", 0, 20) == [(0, 1.0), (10, 2.0), (20, 3.0)]


class TestSum:
    def test_hand_sum(self):
        assert sum_series(make_dataset([0, 1, 2], [1.0, 2.0, 3.0]), "a") == 6.0

    def test_all_masked_sums_to_zero(self):
        d = make_dataset([0, 1], [5.0, 6.0], [True, True])
        assert sum_series(d, "a") == 0.0

    def test_left_fold_bitwise(self):
        values = [0.1] * 10
        d = make_dataset(range(10), values)
        assert sum_series(d, "a") == fold_sum_oracle(values)

    @given(st.lists(st.floats(-1e6, 1e6, allow_nan=False), min_size=0, max_size=50))
    @settings(max_examples=50, deadline=None)
    def test_matches_reference_fold(self, values):
        d = make_dataset(range(len(values) + 1), values + [0.0])
        assert sum_series(d, "a") == fold_sum_oracle(values + [0.0])


class TestMovingAverage:
    def test_window_two(self):
        assert np.allclose(moving_average([1, 2, 3, 4], 2), [1.5, 2.5, 3.5],
                           atol=1e-12)

    def test_window_one_is_identity(self):
        x = np.array([3.0, -1.0, 4.0])
        assert np.array_equal(moving_average(x, 1), x)

    def test_full_window_is_single_mean(self):
        out = moving_average([1.0, 2.0, 3.0, 4.0], 4)
        assert out.shape == (1,)
        assert abs(out[0] - 2.5) <= 1e-12

    def test_output_length(self):
        assert moving_average(np.arange(10.0), 4).shape == (7,)

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            moving_average([1.0], 2)
        with pytest.raises(OutOfRange):
            moving_average([1.0], 0)

    @given(values=st.lists(st.floats(-100, 100, allow_nan=False), min_size=1,
                           max_size=40),
           data=st.data())
    @settings(max_examples=50, deadline=None)
    def test_matches_reference_windows(self, values, data):
        w = data.draw(st.integers(1, len(values)))
        out = moving_average(values, w)
        for i in range(len(values) - w + 1):
            want = fold_sum_oracle(values[i:i + w]) / w
            assert out[i] == want  # same fold order, bitwise


class TestDistance:
    def test_identical_series(self):
        assert euclid_distance([1.0, 2.0], [1.0, 2.0]) == 0.0

    def test_three_four_five(self):
        assert euclid_distance([0.0, 0.0], [3.0, 4.0]) == 5.0

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            euclid_distance([1.0, 2.0], [1.0, 2.0, 3.0])
