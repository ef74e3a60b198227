"""``wavehedge`` command line: stats, decompose, subsample and hedge.

Exit codes: 0 success, 2 input or validation failure, 3 numeric degeneracy.
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np
from scipy.stats import chi2

from . import __version__
from .errors import DegenerateError, InputError, UndefinedMomentError, WaveHedgeError
from .filters import equivalent_filter_width, filter_table
from .hedge import (
    STAT_FIELDS,
    ZERO_FUTURES_VARIANCE,
    HedgeConfig,
    default_threads,
    run_rolling_study,
    run_subsampled_study,
)
from .modwt import imodwt, modwt
from .moments import sample_stats, scale_moments
from .report import NA, ReportTable, config_hash, file_digest
from .timeseries import PriceSeries, load_pair, log_returns, read_paired_csv, read_price_csv

COMMANDS = ("stats", "decompose", "subsample", "hedge")
DEFAULT_WINDOW = {"hedge": 1000, "subsample": 200}
ZERO_VARIANCE_REASON = "zero_variance"


@dataclass(frozen=True)
class RunConfig:
    command: str
    spot: str | None = None
    futures: str | None = None
    data: str | None = None
    window: int | None = None
    oos: int = 1000
    stride: int = 1
    levels: int = 6
    filter: str = "la8"
    alpha: float = 0.95
    out: str = "wavehedge-out"
    format: str = "csv"
    horizons: tuple = (1, 3, 6, 12)
    series: str = "spot"
    roundtrip: bool = False

    @property
    def inputs(self) -> list[str]:
        return [p for p in (self.data, self.spot, self.futures) if p is not None]

    def resolved_window(self) -> int:
        return self.window if self.window is not None else DEFAULT_WINDOW.get(self.command, 1000)

    def hedge_config(self) -> HedgeConfig:
        return HedgeConfig(
            window=self.resolved_window(), stride=self.stride, levels=self.levels,
            filter=self.filter, oos_window=self.oos, alpha=self.alpha,
        )

    def provenance(self) -> dict:
        cfg = asdict(self)
        # where the files land does not change their content
        del cfg["out"]
        cfg["horizons"] = list(self.horizons)
        cfg["window"] = self.resolved_window()
        return {
            "config": cfg,
            "config_hash": config_hash(cfg),
            "input_digest": file_digest(self.inputs),
            "wavehedge_version": __version__,
        }


def _na_or(value: float, reason: str):
    return value if math.isfinite(value) else NA(reason)


def _returns(cfg: RunConfig):
    spot, fut = load_pair(cfg.spot, cfg.futures, cfg.data)
    return log_returns(spot), log_returns(fut)


def cmd_stats(cfg: RunConfig) -> ReportTable:
    """Full-sample moments of raw returns and of each wavelet scale."""
    filt = filter_table(cfg.filter)
    rs, rf = _returns(cfg)
    rows = []
    for name, r in (("cash", rs.values), ("futures", rf.values)):
        try:
            st = sample_stats(r)
            rows.append((name, 0, st.n, st.mean, st.stdev, st.skewness, st.kurtosis,
                         st.jarque_bera, st.jb_pvalue))
        except UndefinedMomentError:
            rows.append((name, 0, len(r), float(np.mean(r)), 0.0) + (NA("zero_variance"),) * 4)
        details = modwt(r, filt, cfg.levels).details
        for j in range(1, cfg.levels + 1):
            width = equivalent_filter_width(filt.width, j)
            if width > len(r):
                rows.append((name, j, 0) + (NA("window_shorter_than_filter"),) * 6)
                continue
            try:
                m = scale_moments(details[j - 1], width, j)
            except UndefinedMomentError:
                rows.append((name, j, len(r) - width + 1, 0.0, 0.0) + (NA("zero_variance"),) * 4)
                continue
            jb = m.jarque_bera
            # detail coefficients are zero-mean by construction
            rows.append((name, j, m.count, 0.0, m.stdev, m.skewness, m.kurtosis, jb,
                         float(chi2.sf(jb, 2))))
    return ReportTable(
        "stats",
        ("series", "scale", "n", "mean", "stdev", "skewness", "kurtosis", "jarque_bera",
         "jb_pvalue"),
        rows,
        cfg.provenance(),
    )


def _single_series(cfg: RunConfig) -> PriceSeries:
    if cfg.data is not None:
        spot, fut = read_paired_csv(cfg.data)
        return spot if cfg.series == "spot" else fut
    path = cfg.spot if cfg.spot is not None else cfg.futures
    if path is None:
        raise InputError("decompose needs --spot, --futures or --data")
    return read_price_csv(path)


def cmd_decompose(cfg: RunConfig) -> dict[str, ReportTable]:
    """Coefficient dump and energy budget for one return series."""
    filt = filter_table(cfg.filter)
    r = log_returns(_single_series(cfg)).values
    dec = modwt(r, filt, cfg.levels)
    prov = cfg.provenance()
    coef_rows = [
        (t, j, dec.details[j - 1][t], dec.smooth[t])
        for j in range(1, cfg.levels + 1)
        for t in range(len(r))
    ]
    total = float(np.sum(r * r))
    energy_rows = []
    parts = 0.0
    for j in range(1, cfg.levels + 1):
        e = float(np.sum(dec.details[j - 1] ** 2))
        parts += e
        energy_rows.append((f"detail_{j}", e, _na_or(e / total if total > 0 else math.nan, "zero_energy")))
    e = float(np.sum(dec.smooth**2))
    parts += e
    energy_rows.append((f"smooth_{cfg.levels}", e, _na_or(e / total if total > 0 else math.nan, "zero_energy")))
    energy_rows.append(("components_total", parts, _na_or(parts / total if total > 0 else math.nan, "zero_energy")))
    energy_rows.append(("input_total", total, 1.0 if total > 0 else NA("zero_energy")))
    rel = abs(parts - total) / total if total > 0 else abs(parts)
    energy_rows.append(("relative_error", rel, NA("not_a_share")))
    if cfg.roundtrip:
        err = float(np.max(np.abs(imodwt(dec) - r)))
        energy_rows.append(("roundtrip_max_abs_error", err, NA("not_a_share")))
    return {
        "decompose_coefficients": ReportTable(
            "decompose_coefficients", ("t", "level", "detail", "smooth_at_J"), coef_rows, prov
        ),
        "decompose_energy": ReportTable(
            "decompose_energy", ("component", "sum_of_squares", "share"), energy_rows, prov
        ),
    }


def _fmt_date(d) -> str:
    return str(d)


def cmd_subsample(cfg: RunConfig) -> dict[str, ReportTable]:
    """Hedge ratios on returns sampled every k days (averaged table and per-window series)."""
    spot, fut = load_pair(cfg.spot, cfg.futures, cfg.data)
    window = cfg.resolved_window()
    study = run_subsampled_study(spot, fut, cfg.horizons, window)
    prov = cfg.provenance()
    n_prices = len(spot)
    rows = []
    for row in study.rows:
        k = row.horizon
        returns = (n_prices - 1) // k
        dropped = (n_prices - 1) - returns * k
        rows.append(
            (k, row.data_points, returns, dropped, row.windows, row.hedge_ratio,
             _na_or(row.he_variance, "zero_unhedged_variance"))
            + tuple(_na_or(getattr(row, name), ZERO_VARIANCE_REASON) for name in STAT_FIELDS[2:])
        )
    summary = ReportTable(
        "subsample_summary",
        ("horizon", "data_points", "returns", "dropped_prices", "windows", "hedge_ratio",
         "he_variance") + STAT_FIELDS[2:],
        rows,
        prov,
    )
    win_rows = []
    for ser in study.series:
        dates = spot.dates[:: ser.horizon][1:]
        for i, start in enumerate(ser.starts):
            win_rows.append(
                (ser.horizon, int(start), int(ser.start_days[i]), _fmt_date(dates[start]),
                 float(ser.hedge_ratio[i]), _na_or(float(ser.he_variance[i]), "zero_unhedged_variance"))
            )
    windows = ReportTable(
        "subsample_windows",
        ("horizon", "window_index", "start_day", "start_date", "hedge_ratio", "he_variance"),
        win_rows,
        prov,
    )
    return {"subsample_summary": summary, "subsample_windows": windows}



def _stat_cell(sc, sample: str, name: str):
    if sc.reason is not None:
        return NA(sc.reason)
    stats = getattr(sc, sample)
    if stats is None:
        return NA("no_out_of_sample_window")
    v = getattr(stats, name)
    return v if math.isfinite(v) else NA(stats.reasons.get(name, "undefined"))


def _summary_table(name: str, rows, prov) -> ReportTable:
    out = []
    for r in rows:
        vals = [r.hedge_ratio] + [getattr(r, k) for k in STAT_FIELDS]
        out.append(
            (r.sample, r.level, r.windows)
            + tuple(_na_or(v, "no_valid_windows") for v in vals)
        )
    return ReportTable(name, ("sample", "scale", "windows", "hedge_ratio") + STAT_FIELDS, out, prov)


def cmd_hedge(cfg: RunConfig, threads: int | None = None) -> dict[str, ReportTable]:
    """Rolling multiscale hedge: per-window figure data and averaged tables."""
    rs, rf = _returns(cfg)
    hc = cfg.hedge_config()
    study = run_rolling_study(rs.values, rf.values, hc, threads=threads)
    if all(res.scales[0].reason == ZERO_FUTURES_VARIANCE for res in study.results):
        raise DegenerateError("futures variance is zero in every window; nothing to hedge")
    prov = cfg.provenance()
    prov["unhedged_moments"] = (
        "in rows use the in-sample window; out rows use the out-of-sample window"
    )
    win_rows = []
    for res in study.results:
        date = _fmt_date(rs.dates[res.window_start])
        for sc in res.scales:
            h = NA(sc.reason) if sc.reason else sc.hedge_ratio
            win_rows.append(
                (res.window_start, date, sc.level, h,
                 _stat_cell(sc, "in_sample", "he_variance"),
                 _stat_cell(sc, "out_of_sample", "he_variance"),
                 _stat_cell(sc, "in_sample", "he_var"),
                 _stat_cell(sc, "out_of_sample", "he_var"))
            )
    windows = ReportTable(
        "hedge_windows",
        ("window_start", "start_date", "scale", "hedge_ratio", "he_variance_in",
         "he_variance_out", "he_var_in", "he_var_out"),
        win_rows,
        prov,
    )
    static = ReportTable(
        "hedge_static",
        ("scale", "hedge_ratio"),
        [(j, _na_or(h, "window_shorter_than_filter")) for j, h in enumerate(study.static_ratios)],
        prov,
    )
    return {
        "hedge_windows": windows,
        "hedge_summary": _summary_table("hedge_summary", study.summary_strict, prov),
        "hedge_summary_insample_all": _summary_table(
            "hedge_summary_insample_all", study.summary_all_insample, prov
        ),
        "hedge_static": static,
    }


def _parse_horizons(text: str) -> tuple:
    try:
        values = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"horizons must be comma-separated integers: {text!r}")
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError("horizons must be positive integers")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wavehedge",
        description="Dynamic multiscale minimum-variance hedging with the MODWT.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--spot", help="spot prices CSV (date,price)")
        p.add_argument("--futures", help="futures prices CSV (date,price)")
        p.add_argument("--data", help="combined CSV (date,spot,futures)")
        p.add_argument("--window", type=int, default=None,
                       help="window length (default 1000 for hedge, 200 for subsample)")
        p.add_argument("--oos", type=int, default=1000, help="out-of-sample window length")
        p.add_argument("--stride", type=int, default=1)
        p.add_argument("--levels", type=int, default=6)
        p.add_argument("--filter", default="la8", choices=["la8", "d4", "c10", "haar"])
        p.add_argument("--alpha", type=float, default=0.95)
        p.add_argument("--out", default="wavehedge-out")
        p.add_argument("--format", default="csv", choices=["csv", "json"])
        if name == "subsample":
            p.add_argument("--horizons", type=_parse_horizons, default=(1, 3, 6, 12))
        if name == "decompose":
            p.add_argument("--series", choices=["spot", "futures"], default="spot",
                           help="which column of --data to decompose")
            p.add_argument("--roundtrip", action="store_true",
                           help="report the inverse-transform reconstruction error")
    return parser


def run(cfg: RunConfig, threads: int | None = None) -> list[Path]:
    """Execute one command and write its tables; returns the written paths."""
    for p in cfg.inputs:
        if not Path(p).is_file():
            raise InputError(f"{p}: no such file")
    if cfg.command == "stats":
        tables = {"stats": cmd_stats(cfg)}
    elif cfg.command == "decompose":
        tables = cmd_decompose(cfg)
    elif cfg.command == "subsample":
        tables = cmd_subsample(cfg)
    elif cfg.command == "hedge":
        tables = cmd_hedge(cfg, threads=threads)
    else:
        raise InputError(f"unknown command {cfg.command!r}")
    return [t.write(cfg.out, cfg.format) for t in tables.values()]


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    kwargs = {k: v for k, v in vars(args).items() if v is not None or k == "window"}
    try:
        cfg = RunConfig(**kwargs)
        paths = run(cfg, threads=default_threads())
    except DegenerateError as exc:
        print(f"wavehedge: {exc}", file=sys.stderr)
        return 3
    except (WaveHedgeError, OSError) as exc:
        print(f"wavehedge: {exc}", file=sys.stderr)
        return 2
    for p in paths:
        print(p)
    return 0


if __name__ == "__main__":
    sys.exit(main())
