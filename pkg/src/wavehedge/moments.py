"""Scale-by-scale wavelet moments and classical sample statistics.

Wavelet moments are taken about zero over the non-boundary coefficients
``t = L_j - 1, ..., N - 1`` only; detail coefficients have zero mean by
construction, so no sample mean is subtracted. Classical statistics on raw
returns are central moments about the sample mean. Kurtosis is raw
(3 for a Gaussian) throughout.

Estimators accept batched input and reduce over the last axis.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import InputError, UndefinedMomentError
from .modwt import nonboundary_range

__all__ = [
    "ScaleMoments",
    "SampleStats",
    "wavelet_variance",
    "wavelet_skewness",
    "wavelet_kurtosis",
    "wavelet_covariance",
    "scale_moments",
    "sample_stats",
    "jarque_bera",
]


def _interior(d, width: int) -> np.ndarray:
    d = np.asarray(d, dtype=float)
    rng, _ = nonboundary_range(d.shape[-1], width)
    return d[..., rng.start:]


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def wavelet_variance(d, width: int):
    """Mean of squared non-boundary coefficients."""
    w = _interior(d, width)
    return _scalar(np.mean(w * w, axis=-1))


def wavelet_covariance(d_f, d_g, width: int):
    """Mean product of paired non-boundary coefficients."""
    d_f = np.asarray(d_f, dtype=float)
    d_g = np.asarray(d_g, dtype=float)
    if d_f.shape != d_g.shape:
        raise InputError(f"coefficient shapes differ: {d_f.shape} vs {d_g.shape}")
    return _scalar(np.mean(_interior(d_f, width) * _interior(d_g, width), axis=-1))


def _standardized_moment(d, width: int, order: int):
    w = _interior(d, width)
    var = np.mean(w * w, axis=-1)
    if np.any(var <= 0):
        raise UndefinedMomentError("zero wavelet variance; higher moments are undefined")
    return _scalar(np.mean(w**order, axis=-1) / var ** (order / 2))


def wavelet_skewness(d, width: int):
    """Third moment about zero over the variance to the power 3/2."""
    return _standardized_moment(d, width, 3)


def wavelet_kurtosis(d, width: int):
    """Fourth moment about zero over the squared variance."""
    return _standardized_moment(d, width, 4)


@dataclass(frozen=True)
class ScaleMoments:
    level: int
    variance: float
    skewness: float
    kurtosis: float
    count: int

    @property
    def stdev(self) -> float:
        return float(np.sqrt(self.variance))

    @property
    def jarque_bera(self) -> float:
        return jarque_bera(self.count, self.skewness, self.kurtosis)


def scale_moments(d, width: int, level: int) -> ScaleMoments:
    """Variance, skewness and kurtosis of one detail vector."""
    d = np.asarray(d, dtype=float)
    _, count = nonboundary_range(d.shape[-1], width)
    return ScaleMoments(
        level=level,
        variance=wavelet_variance(d, width),
        skewness=wavelet_skewness(d, width),
        kurtosis=wavelet_kurtosis(d, width),
        count=count,
    )


def jarque_bera(n: int, skewness: float, kurtosis: float) -> float:
    """``n/6 * (S**2 + (K - 3)**2 / 4)`` for raw kurtosis ``K``."""
    return n / 6.0 * (skewness**2 + (kurtosis - 3.0) ** 2 / 4.0)


@dataclass(frozen=True)
class SampleStats:
    n: int
    mean: float
    stdev: float
    skewness: float
    kurtosis: float
    jarque_bera: float

    @property
    def jb_pvalue(self) -> float:
        """Asymptotic chi-square(2) p-value of the Jarque-Bera statistic."""
        return float(stats.chi2.sf(self.jarque_bera, 2))


def sample_stats(x) -> SampleStats:
    """Classical moments about the sample mean (1/n normalisation) and JB."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise InputError("sample_stats expects a 1-d vector")
    n = len(x)
    if n < 4:
        raise InputError(f"need at least 4 observations, got {n}")
    mean = np.mean(x)
    dev = x - mean
    m2 = np.mean(dev * dev)
    if m2 <= 0:
        raise UndefinedMomentError("zero sample variance; moments are undefined")
    skew = np.mean(dev**3) / m2**1.5
    kurt = np.mean(dev**4) / m2**2
    return SampleStats(
        n=n,
        mean=float(mean),
        stdev=float(np.sqrt(m2)),
        skewness=float(skew),
        kurtosis=float(kurt),
        jarque_bera=jarque_bera(n, float(skew), float(kurt)),
    )
