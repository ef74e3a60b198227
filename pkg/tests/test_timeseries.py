import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import business_dates, write_pair_csv, write_price_csv
from wavehedge.errors import InputError
from wavehedge.timeseries import (
    PriceSeries,
    load_pair,
    log_returns,
    read_paired_csv,
    read_price_csv,
    rolling_windows,
    subsample_returns,
)


def prices(values):
    return PriceSeries(np.arange(len(values)), np.asarray(values, dtype=float))


def test_log_returns_simple():
    r = log_returns(prices([100, 110]))
    assert r.values[0] == pytest.approx(0.0953102, abs=1e-7)
    assert r.horizon == 1
    np.testing.assert_array_equal(log_returns(prices([5, 5, 5])).values, [0, 0])


def test_log_returns_length_6260_prices():
    p = np.exp(np.cumsum(np.random.default_rng(0).normal(0, 0.01, 6260)))
    assert len(log_returns(prices(p))) == 6259


def test_return_dates_are_period_ends():
    r = log_returns(PriceSeries(np.array([10, 20, 30]), np.array([1.0, 2.0, 4.0])))
    np.testing.assert_array_equal(r.dates, [20, 30])


@pytest.mark.parametrize("bad", [0.0, -1.0, np.nan])
def test_nonpositive_price_names_date(bad):
    dates = business_dates(4)
    with pytest.raises(InputError, match=str(dates[2])):
        PriceSeries(dates, np.array([1.0, 2.0, bad, 3.0]))


def test_dates_must_increase():
    with pytest.raises(InputError, match="strictly increasing"):
        PriceSeries(np.array([1, 2, 2]), np.array([1.0, 1.0, 1.0]))


def test_too_short():
    with pytest.raises(InputError):
        PriceSeries(np.array([1]), np.array([1.0]))


def test_subsample_indices():
    p = prices([1, 2, 3, 4, 5, 6, 7])
    r = subsample_returns(p, 3)
    np.testing.assert_allclose(r.values, [math.log(4 / 1), math.log(7 / 4)])
    np.testing.assert_array_equal(r.dates, [3, 6])
    assert r.horizon == 3


def test_subsample_k1_is_log_returns(rng):
    p = prices(np.exp(np.cumsum(rng.normal(size=50))))
    np.testing.assert_array_equal(subsample_returns(p, 1).values, log_returns(p).values)


def test_subsample_window_points():
    # a 200-day window at a 12-day horizon holds 16 returns
    p = prices(np.linspace(1, 2, 201))
    assert len(subsample_returns(p, 12)) == 16


def test_subsample_rejects_large_k():
    with pytest.raises(InputError):
        subsample_returns(prices([1, 2, 3]), 3)
    with pytest.raises(InputError):
        subsample_returns(prices([1, 2, 3]), 0)


@settings(max_examples=50, deadline=None)
@given(
    steps=st.lists(st.floats(-0.2, 0.2), min_size=2, max_size=80),
    k=st.integers(1, 10),
)
def test_subsample_is_sum_of_daily_returns(steps, k):
    p = prices(100 * np.exp(np.concatenate([[0], np.cumsum(steps)])))
    if len(p) < k + 1:
        return
    daily = log_returns(p).values
    sub = subsample_returns(p, k).values
    for i, v in enumerate(sub):
        assert v == pytest.approx(daily[i * k:(i + 1) * k].sum(), abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(steps=st.lists(st.floats(-0.2, 0.2), min_size=2, max_size=80), data=st.data())
def test_returns_concatenate_to_price_ratio(steps, data):
    v = 50 * np.exp(np.concatenate([[0], np.cumsum(steps)]))
    r = log_returns(prices(v)).values
    a = data.draw(st.integers(0, len(r) - 1))
    b = data.draw(st.integers(a + 1, len(r)))
    assert math.exp(r[a:b].sum()) == pytest.approx(v[b] / v[a], rel=1e-12)


def test_rolling_windows_small():
    assert rolling_windows(5, 3, 1) == [range(0, 3), range(1, 4), range(2, 5)]


def test_rolling_windows_count_matches_enumeration():
    n, w = 6259, 1000
    starts = [i for i in range(n) if i + w <= n]
    windows = rolling_windows(n, w, 1)
    assert len(windows) == len(starts) == 5260
    assert [r.start for r in windows] == starts


def test_rolling_windows_single():
    n, w = 20, 7
    assert len(rolling_windows(n, w, n - w + 1)) == 1


@settings(max_examples=100, deadline=None)
@given(n=st.integers(1, 300), w=st.integers(1, 300), s=st.integers(1, 50))
def test_rolling_windows_cover_admissible_starts(n, w, s):
    if w > n:
        with pytest.raises(InputError):
            rolling_windows(n, w, s)
        return
    windows = rolling_windows(n, w, s)
    assert [r.start for r in windows] == list(range(0, n - w + 1, s))
    assert len(windows) == (n - w) // s + 1
    assert all(r.stop <= n and len(r) == w for r in windows)


def test_read_price_csv(tmp_path):
    dates = business_dates(3)
    path = write_price_csv(tmp_path / "spot.csv", dates, [1.0, 1.5, 2.0])
    p = read_price_csv(path)
    np.testing.assert_array_equal(p.dates, dates)
    np.testing.assert_array_equal(p.values, [1.0, 1.5, 2.0])


def test_read_price_csv_names_bad_row(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("date,price\n2001-01-02,1.0\n2001-01-03,abc\n")
    with pytest.raises(InputError, match="row 3"):
        read_price_csv(path)


def test_read_empty_file_names_file(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("")
    with pytest.raises(InputError, match="empty.csv"):
        read_price_csv(path)


def test_read_paired_and_load_pair(tmp_path):
    dates = business_dates(4)
    path = write_pair_csv(tmp_path / "pair.csv", dates, [1, 2, 3, 4], [1, 2, 3, 5])
    spot, fut = read_paired_csv(path)
    assert fut.values[-1] == 5
    s2, f2 = load_pair(data_path=path)
    np.testing.assert_array_equal(s2.values, spot.values)


def test_load_pair_rejects_misaligned_dates(tmp_path):
    d = business_dates(5)
    a = write_price_csv(tmp_path / "a.csv", d[:4], [1, 2, 3, 4])
    b = write_price_csv(tmp_path / "b.csv", d[1:], [1, 2, 3, 4])
    with pytest.raises(InputError, match="dates differ"):
        load_pair(a, b)
