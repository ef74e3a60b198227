"""Hedging effectiveness: variance, Value-at-Risk and semivariance reduction.

Losses are negated returns, so VaR is positive for a loss-making tail. The
quantile is the linear interpolation between order statistics at rank
``alpha * (n - 1) + 1`` (1-based) of the ascending losses. Nothing here
clamps: out-of-sample effectiveness can be negative.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError, InputError

__all__ = [
    "EffectivenessReport",
    "variance",
    "he_variance",
    "value_at_risk",
    "he_var",
    "semivariance",
    "he_semivariance",
    "evaluate",
]

MIN_VAR_OBS = 20


def variance(x, centered: bool = True):
    """Mean squared deviation; about the sample mean or, if not ``centered``, about 0."""
    x = np.asarray(x, dtype=float)
    if centered:
        x = x - np.mean(x, axis=-1, keepdims=True)
    v = np.mean(x * x, axis=-1)
    return float(v) if np.ndim(v) == 0 else v


def he_variance(hedged, unhedged, centered: bool = True) -> float:
    """``1 - Var(hedged) / Var(unhedged)``.

    Use ``centered=False`` for wavelet coefficients, which are zero-mean by
    construction.
    """
    denom = variance(unhedged, centered)
    if denom <= 0:
        raise DegenerateError("unhedged variance is zero; variance effectiveness undefined")
    return 1.0 - variance(hedged, centered) / denom


def value_at_risk(x, alpha: float = 0.95):
    """Empirical loss quantile at confidence ``alpha``.

    Works on the last axis, so a 2-d array gives one VaR per row.
    """
    if not 0 < alpha < 1:
        raise InputError(f"alpha must lie in (0, 1), got {alpha}")
    x = np.asarray(x, dtype=float)
    n = x.shape[-1]
    if n < MIN_VAR_OBS:
        raise InputError(f"VaR needs at least {MIN_VAR_OBS} observations, got {n}")
    losses = np.sort(-x, axis=-1)
    rank = alpha * (n - 1)  # 0-based position of the 1-based rank alpha*(n-1)+1
    lo = int(np.floor(rank))
    frac = rank - lo
    hi = min(lo + 1, n - 1)
    q = losses[..., lo] + frac * (losses[..., hi] - losses[..., lo])
    return float(q) if np.ndim(q) == 0 else q


def he_var(hedged, unhedged, alpha: float = 0.95) -> float:
    """``1 - VaR(hedged) / VaR(unhedged)``; undefined when VaR(unhedged) <= 0."""
    denom = value_at_risk(unhedged, alpha)
    if denom <= 0:
        raise DegenerateError(
            f"unhedged VaR is {denom!r} (not a loss); VaR effectiveness not applicable"
        )
    return 1.0 - value_at_risk(hedged, alpha) / denom


def semivariance(x, target: float = 0.0) -> float:
    """Mean of ``min(x - target, 0)**2``."""
    below = np.minimum(np.asarray(x, dtype=float) - target, 0.0)
    return float(np.mean(below * below))


def he_semivariance(hedged, unhedged, target: float = 0.0) -> float:
    """``1 - SV(hedged) / SV(unhedged)`` with downside semivariance SV."""
    denom = semivariance(unhedged, target)
    if denom <= 0:
        raise DegenerateError("unhedged series has no observations below target")
    return 1.0 - semivariance(hedged, target) / denom


@dataclass(frozen=True)
class EffectivenessReport:
    he_variance: float
    var_unhedged: float
    var_hedged: float
    he_var: float
    he_semivariance: float | None = None


def evaluate(hedged, unhedged, alpha: float = 0.95, centered: bool = True,
             semivariance_target: float | None = None) -> EffectivenessReport:
    """All effectiveness measures for one hedged/unhedged pair.

    ``he_var`` is NaN when the unhedged VaR is not a loss.
    """
    var_s = value_at_risk(unhedged, alpha)
    var_r = value_at_risk(hedged, alpha)
    sv = None
    if semivariance_target is not None:
        sv = he_semivariance(hedged, unhedged, semivariance_target)
    return EffectivenessReport(
        he_variance=he_variance(hedged, unhedged, centered),
        var_unhedged=var_s,
        var_hedged=var_r,
        he_var=1.0 - var_r / var_s if var_s > 0 else float("nan"),
        he_semivariance=sv,
    )
