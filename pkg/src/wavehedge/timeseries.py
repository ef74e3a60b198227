"""Dated price series, log returns, subsampling and rolling windows.

Series are treated as evenly indexed sequences of trading observations:
calendar gaps are never interpolated.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InputError

__all__ = [
    "PriceSeries",
    "ReturnSeries",
    "log_returns",
    "subsample_returns",
    "rolling_windows",
    "read_price_csv",
    "read_paired_csv",
    "load_pair",
]


def _check_increasing(dates: np.ndarray) -> None:
    for i in range(1, len(dates)):
        if not dates[i - 1] < dates[i]:
            raise InputError(
                f"dates must be strictly increasing: {dates[i - 1]!s} followed by {dates[i]!s}"
            )


@dataclass(frozen=True)
class PriceSeries:
    """Strictly positive price levels indexed by strictly increasing dates."""

    dates: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        dates = np.asarray(self.dates)
        values = np.asarray(self.values, dtype=float)
        if dates.ndim != 1 or values.ndim != 1 or len(dates) != len(values):
            raise InputError("dates and values must be 1-d and of equal length")
        if len(values) < 2:
            raise InputError(f"a price series needs at least 2 observations, got {len(values)}")
        bad = np.flatnonzero(~np.isfinite(values) | (values <= 0))
        if bad.size:
            i = bad[0]
            raise InputError(f"price must be finite and > 0; got {values[i]!r} on {dates[i]!s}")
        _check_increasing(dates)
        values.setflags(write=False)
        object.__setattr__(self, "dates", dates)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class ReturnSeries:
    """Log returns; ``dates[i]`` is the date at the end of return ``i``.

    ``horizon`` is the sampling step, in observations, of the source prices.
    """

    dates: np.ndarray
    values: np.ndarray
    horizon: int = 1

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        dates = np.asarray(self.dates)
        if len(dates) != len(values):
            raise InputError("dates and values must have equal length")
        if self.horizon < 1:
            raise InputError(f"horizon must be >= 1, got {self.horizon}")
        values.setflags(write=False)
        object.__setattr__(self, "dates", dates)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)


def log_returns(prices: PriceSeries) -> ReturnSeries:
    """Natural-log differences ``ln p[t+1] - ln p[t]`` of a price series."""
    logp = np.log(prices.values)
    return ReturnSeries(prices.dates[1:], np.diff(logp), horizon=1)


def subsample_returns(prices: PriceSeries, k: int) -> ReturnSeries:
    """Log returns of the prices kept at indices ``0, k, 2k, ...``.

    A trailing partial interval (fewer than ``k`` observations past the last
    kept price) is dropped.
    """
    if int(k) != k or k < 1:
        raise InputError(f"subsampling step must be a positive integer, got {k!r}")
    k = int(k)
    if len(prices) < k + 1:
        raise InputError(
            f"subsampling step {k} exceeds the series span ({len(prices)} prices)"
        )
    kept = np.log(prices.values[::k])
    return ReturnSeries(prices.dates[::k][1:], np.diff(kept), horizon=k)


def rolling_windows(series, window: int, stride: int = 1) -> list[range]:
    """Index ranges ``[i, i + window)`` for ``i = 0, stride, 2*stride, ...``.

    ``series`` may be anything with a length, or an integer length.
    """
    n = series if isinstance(series, (int, np.integer)) else len(series)
    if window < 1 or stride < 1:
        raise InputError(f"window and stride must be >= 1 (window={window}, stride={stride})")
    if window > n:
        raise InputError(f"window {window} is longer than the series ({n} observations)")
    count = (n - window) // stride + 1
    return [range(i * stride, i * stride + window) for i in range(count)]


def _parse_date(text: str, where: str):
    try:
        return np.datetime64(text.strip(), "D")
    except ValueError:
        raise InputError(f"{where}: cannot parse date {text!r} (expected ISO-8601)") from None


def _parse_number(text: str, where: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise InputError(f"{where}: cannot parse number {text!r}") from None


def _read_rows(path) -> tuple[list[str], list[tuple[int, list[str]]]]:
    path = Path(path)
    if not path.is_file():
        raise InputError(f"{path}: no such file")
    with path.open(newline="") as fh:
        rows = [
            (lineno, row)
            for lineno, row in enumerate(csv.reader(fh), start=1)
            if row and not row[0].lstrip().startswith("#")
        ]
    if not rows:
        raise InputError(f"{path}: file is empty")
    header = [c.strip().lower() for c in rows[0][1]]
    if len(rows) < 2:
        raise InputError(f"{path}: no data rows after the header")
    return header, rows[1:]


def read_price_csv(path) -> PriceSeries:
    """Read a ``date,price`` CSV into a :class:`PriceSeries`."""
    header, rows = _read_rows(path)
    if header != ["date", "price"]:
        raise InputError(f"{path}: expected header 'date,price', got {','.join(header)!r}")
    dates, prices = [], []
    for lineno, row in rows:
        where = f"{path}, row {lineno}"
        if len(row) != 2:
            raise InputError(f"{where}: expected 2 fields, got {len(row)}")
        dates.append(_parse_date(row[0], where))
        prices.append(_parse_number(row[1], where))
    try:
        return PriceSeries(np.array(dates), np.array(prices))
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def read_paired_csv(path) -> tuple[PriceSeries, PriceSeries]:
    """Read a ``date,spot,futures`` CSV into (spot, futures) price series."""
    header, rows = _read_rows(path)
    if header != ["date", "spot", "futures"]:
        raise InputError(
            f"{path}: expected header 'date,spot,futures', got {','.join(header)!r}"
        )
    dates, spot, fut = [], [], []
    for lineno, row in rows:
        where = f"{path}, row {lineno}"
        if len(row) != 3:
            raise InputError(f"{where}: expected 3 fields, got {len(row)}")
        dates.append(_parse_date(row[0], where))
        spot.append(_parse_number(row[1], where))
        fut.append(_parse_number(row[2], where))
    dates = np.array(dates)
    try:
        return PriceSeries(dates, np.array(spot)), PriceSeries(dates, np.array(fut))
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def load_pair(spot_path=None, futures_path=None, data_path=None) -> tuple[PriceSeries, PriceSeries]:
    """Load aligned spot/futures prices from two files or one combined file.

    Separate files must carry identical date vectors; calendars are never
    reconciled here.
    """
    if data_path is not None:
        return read_paired_csv(data_path)
    if spot_path is None or futures_path is None:
        raise InputError("need both spot and futures files, or one combined file")
    spot = read_price_csv(spot_path)
    fut = read_price_csv(futures_path)
    if len(spot) != len(fut) or not np.array_equal(spot.dates, fut.dates):
        raise InputError(
            f"spot ({spot_path}) and futures ({futures_path}) dates differ; "
            "align the series before hedging"
        )
    return spot, fut
