"""Minimum-variance hedge ratios and the two hedging experiments.

Scale 0 is the raw return series, hedged with moments about the window
sample mean. Scales 1..J use MODWT detail coefficients with zero-mean
moments over non-boundary coefficients only. Each window (in-sample and
out-of-sample alike) is decomposed afresh with circular boundaries.

Undefined quantities never abort a study: they come back as NaN with a
reason code in ``reasons`` (per metric) or ``reason`` (whole scale).
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .effectiveness import MIN_VAR_OBS, value_at_risk
from .errors import InputError, NoHedgeError
from .filters import equivalent_filter_width, filter_table
from .modwt import modwt, nonboundary_range
from .timeseries import PriceSeries, ReturnSeries, rolling_windows, subsample_returns

__all__ = [
    "HedgeConfig",
    "PortfolioStats",
    "ScaleHedge",
    "HedgeResult",
    "SummaryRow",
    "RollingStudy",
    "SubsampleRow",
    "SubsampleSeries",
    "SubsampledStudy",
    "min_variance_ratio",
    "hedge_portfolio",
    "run_multiscale_window",
    "run_rolling_study",
    "summarize",
    "static_hedge_ratios",
    "run_subsampled_study",
    "default_threads",
]

# Windows per batch. Fixed so results never depend on the thread count.
CHUNK = 64

# Reason codes for NA cells.
ZERO_FUTURES_VARIANCE = "zero_futures_variance"
ZERO_UNHEDGED_VARIANCE = "zero_unhedged_variance"
ZERO_VARIANCE = "zero_variance"
NONPOSITIVE_UNHEDGED_VAR = "nonpositive_unhedged_var"
TOO_FEW_OBSERVATIONS = "too_few_observations"
WINDOW_SHORTER_THAN_FILTER = "window_shorter_than_filter"


@dataclass(frozen=True)
class HedgeConfig:
    """Parameters of the rolling multiscale study.

    ``full_series_decomposition`` is experimental: it slices one circular
    MODWT of the whole series instead of decomposing each window.
    """

    window: int = 1000
    stride: int = 1
    levels: int = 6
    filter: str = "la8"
    oos_window: int = 1000
    alpha: float = 0.95
    full_series_decomposition: bool = False

    def __post_init__(self):
        filt = filter_table(self.filter)
        object.__setattr__(self, "filter", filt.name)
        if self.levels < 1:
            raise InputError(f"levels must be >= 1, got {self.levels}")
        if self.stride < 1:
            raise InputError(f"stride must be >= 1, got {self.stride}")
        if self.oos_window < 1:
            raise InputError(f"oos_window must be >= 1, got {self.oos_window}")
        if not 0 < self.alpha < 1:
            raise InputError(f"alpha must lie in (0, 1), got {self.alpha}")
        top = equivalent_filter_width(filt.width, self.levels)
        if self.window < top:
            raise InputError(
                f"window {self.window} is shorter than the level-{self.levels} "
                f"{filt.name} filter width {top}"
            )

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class PortfolioStats:
    """Effectiveness and moments of one hedged/unhedged pair."""

    count: int
    he_variance: float
    he_var: float
    stdev_unhedged: float
    stdev_hedged: float
    skew_unhedged: float
    skew_hedged: float
    kurt_unhedged: float
    kurt_hedged: float
    reasons: dict = field(default_factory=dict)


STAT_FIELDS = (
    "he_variance",
    "he_var",
    "stdev_unhedged",
    "stdev_hedged",
    "skew_unhedged",
    "skew_hedged",
    "kurt_unhedged",
    "kurt_hedged",
)


@dataclass(frozen=True)
class ScaleHedge:
    level: int
    hedge_ratio: float
    in_sample: PortfolioStats | None
    out_of_sample: PortfolioStats | None
    reason: str | None = None


@dataclass(frozen=True)
class HedgeResult:
    window_start: int
    scales: tuple

    def scale(self, level: int) -> ScaleHedge:
        return self.scales[level]

    @property
    def hedge_ratios(self) -> np.ndarray:
        return np.array([s.hedge_ratio for s in self.scales])


def min_variance_ratio(s, f, width: int | None = None) -> float:
    """``Cov(s, f) / Var(f)``.

    With ``width=None`` the inputs are raw returns and moments are taken
    about the sample mean. Otherwise they are detail coefficients of a
    level with equivalent filter width ``width``; the boundary coefficients
    are dropped and moments are taken about zero.
    """
    s = np.asarray(s, dtype=float)
    f = np.asarray(f, dtype=float)
    if s.shape != f.shape:
        raise InputError(f"spot and futures shapes differ: {s.shape} vs {f.shape}")
    if width is None:
        s = s - s.mean()
        f = f - f.mean()
    else:
        start = nonboundary_range(len(s), width)[0].start
        s, f = s[start:], f[start:]
    var_f = np.mean(f * f)
    if var_f <= 0:
        raise NoHedgeError("futures variance is zero; hedge ratio undefined")
    return float(np.mean(s * f) / var_f)


def hedge_portfolio(s, f, h: float) -> np.ndarray:
    """Hedged returns ``s - h * f`` for a long spot, short futures position."""
    s = np.asarray(s, dtype=float)
    f = np.asarray(f, dtype=float)
    if s.shape != f.shape:
        raise InputError(f"spot and futures lengths differ: {s.shape} vs {f.shape}")
    return s - h * f


def default_threads() -> int:
    """Worker count from ``WAVEHEDGE_THREADS``, else the CPU count."""
    env = os.environ.get("WAVEHEDGE_THREADS", "").strip()
    if env:
        try:
            n = int(env)
        except ValueError:
            raise InputError(f"WAVEHEDGE_THREADS must be an integer, got {env!r}") from None
        return max(1, n)
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# batched kernel: rows are windows, last axis is time


def _moments(x: np.ndarray, centered: bool):
    if centered:
        x = x - np.mean(x, axis=-1, keepdims=True)
    m2 = np.mean(x * x, axis=-1)
    m3 = np.mean(x**3, axis=-1)
    m4 = np.mean(x**4, axis=-1)
    ok = m2 > 0
    safe = np.where(ok, m2, 1.0)
    skew = np.where(ok, m3 / safe**1.5, np.nan)
    kurt = np.where(ok, m4 / safe**2, np.nan)
    return m2, skew, kurt, ok


def _ratio(s: np.ndarray, f: np.ndarray, centered: bool):
    if centered:
        s = s - np.mean(s, axis=-1, keepdims=True)
        f = f - np.mean(f, axis=-1, keepdims=True)
    var_f = np.mean(f * f, axis=-1)
    cov = np.mean(s * f, axis=-1)
    ok = var_f > 0
    return np.where(ok, cov / np.where(ok, var_f, 1.0), np.nan), ok


def _portfolio_block(s, f, h, centered: bool, alpha: float | None) -> list[PortfolioStats]:
    """Stats of ``s - h f`` against ``s`` for every row."""
    r = s - h[:, None] * f
    m = s.shape[-1]
    var_s, skew_s, kurt_s, ok_s = _moments(s, centered)
    var_r, skew_r, kurt_r, ok_r = _moments(r, centered)
    he_v = np.where(ok_s, 1.0 - var_r / np.where(ok_s, var_s, 1.0), np.nan)
    if alpha is not None and m >= MIN_VAR_OBS:
        q_s = value_at_risk(s, alpha)
        q_r = value_at_risk(r, alpha)
        ok_q = q_s > 0
        he_q = np.where(ok_q, 1.0 - q_r / np.where(ok_q, q_s, 1.0), np.nan)
        var_reason = np.where(ok_q, "", NONPOSITIVE_UNHEDGED_VAR)
    else:
        he_q = np.full(len(h), np.nan)
        var_reason = np.full(len(h), TOO_FEW_OBSERVATIONS)
    out = []
    for i in range(len(h)):
        reasons = {}
        if not ok_s[i]:
            reasons.update(
                he_variance=ZERO_UNHEDGED_VARIANCE, skew_unhedged=ZERO_VARIANCE,
                kurt_unhedged=ZERO_VARIANCE,
            )
        if not ok_r[i]:
            reasons.update(skew_hedged=ZERO_VARIANCE, kurt_hedged=ZERO_VARIANCE)
        if var_reason[i]:
            reasons["he_var"] = str(var_reason[i])
        out.append(
            PortfolioStats(
                count=m,
                he_variance=float(he_v[i]),
                he_var=float(he_q[i]),
                stdev_unhedged=float(np.sqrt(var_s[i])),
                stdev_hedged=float(np.sqrt(var_r[i])),
                skew_unhedged=float(skew_s[i]),
                skew_hedged=float(skew_r[i]),
                kurt_unhedged=float(kurt_s[i]),
                kurt_hedged=float(kurt_r[i]),
                reasons=reasons,
            )
        )
    return out


def _nan_stats(count: int, reason: str) -> PortfolioStats:
    nan = float("nan")
    return PortfolioStats(count, *([nan] * len(STAT_FIELDS)), reasons={k: reason for k in STAT_FIELDS})


class _Source:
    """Produces raw and per-level coefficient windows for a set of starts."""

    def __init__(self, s, f, config: HedgeConfig):
        self.s = s
        self.f = f
        self.config = config
        self.filt = filter_table(config.filter)
        self.full = None
        if config.full_series_decomposition:
            self.full = (
                modwt(s, self.filt, config.levels).details,
                modwt(f, self.filt, config.levels).details,
            )

    def windows(self, starts: np.ndarray, length: int):
        """(raw_s, raw_f, details_s, details_f) with shapes (B, n) / (J, B, n)."""
        raw_s = sliding_window_view(self.s, length)[starts]
        raw_f = sliding_window_view(self.f, length)[starts]
        if self.full is None:
            ds = modwt(raw_s, self.filt, self.config.levels).details
            df = modwt(raw_f, self.filt, self.config.levels).details
        else:
            idx = starts[:, None] + np.arange(length)
            ds = self.full[0][:, idx]
            df = self.full[1][:, idx]
        return raw_s, raw_f, ds, df


def _evaluate(source: _Source, starts: np.ndarray, with_oos: bool) -> list[HedgeResult]:
    cfg = source.config
    n_in, n_out = cfg.window, cfg.oos_window
    raw_s, raw_f, ds, df = source.windows(starts, n_in)
    if with_oos:
        oraw_s, oraw_f, ods, odf = source.windows(starts + n_in, n_out)
    per_scale = []

    # scale 0: raw returns, moments about the window mean
    h0, ok0 = _ratio(raw_s, raw_f, centered=True)
    per_scale.append((h0, ok0, _block(raw_s, raw_f, h0, ok0, True, cfg.alpha),
                      _block(oraw_s, oraw_f, h0, ok0, True, cfg.alpha) if with_oos else None,
                      n_out))

    for j in range(1, cfg.levels + 1):
        width = equivalent_filter_width(source.filt.width, j)
        a = width - 1
        s_j, f_j = ds[j - 1][:, a:], df[j - 1][:, a:]
        h, ok = _ratio(s_j, f_j, centered=False)
        ins = _block(s_j, f_j, h, ok, False, cfg.alpha)
        oos = None
        if with_oos:
            if width > n_out:
                oos = [_nan_stats(0, WINDOW_SHORTER_THAN_FILTER)] * len(starts)
            else:
                oos = _block(ods[j - 1][:, a:], odf[j - 1][:, a:], h, ok, False, cfg.alpha)
        per_scale.append((h, ok, ins, oos, n_out))

    results = []
    for i, start in enumerate(starts):
        scales = []
        for level, (h, ok, ins, oos, _) in enumerate(per_scale):
            if not ok[i]:
                scales.append(ScaleHedge(level, float("nan"), None, None, ZERO_FUTURES_VARIANCE))
            else:
                scales.append(
                    ScaleHedge(level, float(h[i]), ins[i], oos[i] if oos is not None else None)
                )
        results.append(HedgeResult(int(start), tuple(scales)))
    return results


def _block(s, f, h, ok, centered, alpha):
    # rows with no hedge ratio get a placeholder; their ScaleHedge is replaced
    hh = np.where(ok, h, 0.0)
    return _portfolio_block(s, f, hh, centered, alpha)


def _as_array(x) -> np.ndarray:
    if isinstance(x, ReturnSeries):
        x = x.values
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise InputError("return series must be 1-d")
    if not np.all(np.isfinite(x)):
        raise InputError("return series contains non-finite values")
    return x


def _pair(s, f):
    s, f = _as_array(s), _as_array(f)
    if len(s) != len(f):
        raise InputError(f"spot and futures lengths differ: {len(s)} vs {len(f)}")
    return s, f


def run_multiscale_window(s, f, config: HedgeConfig, window_start: int) -> HedgeResult:
    """Hedge one in-sample window and evaluate it on the following window."""
    s, f = _pair(s, f)
    end = window_start + config.window + config.oos_window
    if window_start < 0 or end > len(s):
        raise InputError(
            f"window starting at {window_start} needs {config.window + config.oos_window} "
            f"observations but only {len(s) - window_start} remain"
        )
    return _evaluate(_Source(s, f, config), np.array([window_start]), True)[0]


@dataclass(frozen=True)
class SummaryRow:
    """Per-scale averages across windows for one sample (in or out)."""

    sample: str
    level: int
    windows: int
    hedge_ratio: float
    he_variance: float
    he_var: float
    stdev_unhedged: float
    stdev_hedged: float
    skew_unhedged: float
    skew_hedged: float
    kurt_unhedged: float
    kurt_hedged: float


def summarize(results, levels: int, sample: str = "in") -> list[SummaryRow]:
    """Average each scale's metrics over windows, skipping NaN cells."""
    attr = {"in": "in_sample", "out": "out_of_sample"}[sample]
    rows = []
    for level in range(levels + 1):
        hs, cols = [], {k: [] for k in STAT_FIELDS}
        used = 0
        for res in results:
            sc = res.scales[level]
            stats = getattr(sc, attr)
            if sc.reason is not None or stats is None:
                continue
            used += 1
            hs.append(sc.hedge_ratio)
            for k in STAT_FIELDS:
                cols[k].append(getattr(stats, k))
        rows.append(
            SummaryRow(sample, level, used, _nanmean(hs), *(_nanmean(cols[k]) for k in STAT_FIELDS))
        )
    return rows


def _nanmean(values) -> float:
    a = np.asarray(values, dtype=float)
    a = a[~np.isnan(a)]
    return float(a.mean()) if a.size else float("nan")


def static_hedge_ratios(s, f, levels: int = 6, filt="la8") -> list[float]:
    """Full-sample hedge ratio for scale 0 and each wavelet scale (NaN if unusable)."""
    s, f = _pair(s, f)
    filt = filter_table(filt)
    out = [min_variance_ratio(s, f)]
    ds = modwt(s, filt, levels).details
    df = modwt(f, filt, levels).details
    for j in range(1, levels + 1):
        width = equivalent_filter_width(filt.width, j)
        if width > len(s):
            out.append(float("nan"))
            continue
        try:
            out.append(min_variance_ratio(ds[j - 1], df[j - 1], width))
        except NoHedgeError:
            out.append(float("nan"))
    return out


@dataclass(frozen=True)
class RollingStudy:
    """Output of :func:`run_rolling_study`.

    ``results`` has one entry per window with a complete out-of-sample
    window. ``insample_tail`` holds the later windows that only have an
    in-sample part. ``summary_strict`` averages ``results`` (in and out);
    ``summary_all_insample`` averages the in-sample part of both lists.
    """

    config: HedgeConfig
    results: tuple
    insample_tail: tuple
    static_ratios: tuple
    summary_strict: tuple
    summary_all_insample: tuple


def _run_chunks(source, starts, with_oos, threads) -> list[HedgeResult]:
    chunks = [starts[i:i + CHUNK] for i in range(0, len(starts), CHUNK)]
    if not chunks:
        return []
    if threads <= 1 or len(chunks) == 1:
        parts = [_evaluate(source, c, with_oos) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda c: _evaluate(source, c, with_oos), chunks))
    return [r for part in parts for r in part]


def run_rolling_study(s, f, config: HedgeConfig | None = None, threads: int | None = None) -> RollingStudy:
    """Rolling in-sample/out-of-sample multiscale hedging over the whole series.

    Output is identical for any ``threads`` value; windows are evaluated in
    fixed-size batches and merged in window order.
    """
    config = config or HedgeConfig()
    s, f = _pair(s, f)
    n = len(s)
    need = config.window + config.oos_window
    if n < need:
        raise InputError(
            f"rolling study needs at least {need} returns (window {config.window} + "
            f"out-of-sample {config.oos_window}), got {n}"
        )
    threads = default_threads() if threads is None else max(1, int(threads))
    starts = np.array([r.start for r in rolling_windows(n - config.oos_window, config.window, config.stride)])
    tail = np.arange(starts[-1] + config.stride, n - config.window + 1, config.stride)
    source = _Source(s, f, config)
    results = tuple(_run_chunks(source, starts, True, threads))
    tail_results = tuple(_run_chunks(source, tail, False, threads))
    static = tuple(static_hedge_ratios(s, f, config.levels, config.filter))
    strict = tuple(summarize(results, config.levels, "in") + summarize(results, config.levels, "out"))
    all_in = tuple(summarize(results + tail_results, config.levels, "in"))
    return RollingStudy(config, results, tail_results, static, strict, all_in)


# ---------------------------------------------------------------------------
# subsampled-horizon baseline


@dataclass(frozen=True)
class SubsampleRow:
    horizon: int
    data_points: int
    windows: int
    hedge_ratio: float
    he_variance: float
    stdev_unhedged: float
    stdev_hedged: float
    skew_unhedged: float
    skew_hedged: float
    kurt_unhedged: float
    kurt_hedged: float


@dataclass(frozen=True)
class SubsampleSeries:
    """Per-window hedge ratio and in-sample effectiveness at one horizon."""

    horizon: int
    starts: np.ndarray  # in subsampled observations
    hedge_ratio: np.ndarray
    he_variance: np.ndarray

    @property
    def start_days(self) -> np.ndarray:
        """Window starts in daily observations."""
        return self.starts * self.horizon


@dataclass(frozen=True)
class SubsampledStudy:
    window: int
    rows: tuple
    series: tuple


def _as_prices(p) -> PriceSeries:
    if isinstance(p, PriceSeries):
        return p
    values = np.asarray(p, dtype=float)
    return PriceSeries(np.arange(len(values)), values)


def run_subsampled_study(spot_prices, futures_prices, horizons=(1, 3, 6, 12),
                         window: int = 200) -> SubsampledStudy:
    """Rolling in-sample hedge on returns sampled every ``k`` days.

    A ``window``-day window holds ``window // k`` returns at horizon ``k``;
    it moves forward one subsampled observation at a time.
    """
    spot, fut = _as_prices(spot_prices), _as_prices(futures_prices)
    if len(spot) != len(fut):
        raise InputError(f"spot and futures lengths differ: {len(spot)} vs {len(fut)}")
    rows, series = [], []
    for k in horizons:
        points = window // k
        if points < 4:
            raise InputError(
                f"horizon {k} leaves {points} returns per {window}-day window; need at least 4"
            )
        rs = subsample_returns(spot, k).values
        rf = subsample_returns(fut, k).values
        if len(rs) < points:
            raise InputError(
                f"horizon {k}: {len(rs)} subsampled returns, fewer than one window of {points}"
            )
        win_s = sliding_window_view(rs, points)
        win_f = sliding_window_view(rf, points)
        h, ok = _ratio(win_s, win_f, centered=True)
        if not np.all(ok):
            raise NoHedgeError(f"horizon {k}: zero futures variance in some window")
        stats = _portfolio_block(win_s, win_f, h, True, None)
        he = np.array([st.he_variance for st in stats])
        rows.append(
            SubsampleRow(
                horizon=k,
                data_points=points,
                windows=len(h),
                hedge_ratio=float(h.mean()),
                he_variance=_nanmean(he),
                **{key: _nanmean([getattr(st, key) for st in stats]) for key in STAT_FIELDS[2:]},
            )
        )
        series.append(SubsampleSeries(k, np.arange(len(h)), h, he))
    return SubsampledStudy(window, tuple(rows), tuple(series))
