"""Synthetic spot/futures pairs with a known scale structure.

Both returns share a common AR(1) factor. Each also carries its own basis
noise: the first difference of a stationary AR(1) level, so the noise fades
at long horizons the way a mean-reverting basis does. The futures noise is
sized so the daily hedge ratio equals ``daily_ratio``.
"""
from __future__ import annotations

import numpy as np
from scipy.signal import lfilter

__all__ = [
    "common_factor_pair",
    "pair_spectra",
    "prices_from_returns",
]


def _noise_scale(phi: float, rho: float, daily_ratio: float) -> float:
    var_common = 1.0 / (1.0 - phi**2)
    var_diff = 2.0 / (1.0 + rho)  # variance of the differenced unit AR(1)
    return float(np.sqrt(var_common * (1.0 - daily_ratio) / daily_ratio / var_diff))


def common_factor_pair(n: int, phi: float = 0.5, rho: float = 0.75, spot_noise: float = 0.3,
                       daily_ratio: float = 0.7, scale: float = 0.01, seed=None):
    """Return ``(spot, futures)`` log-return arrays of length ``n``.

    ``spot_noise`` is the spot basis-noise amplitude relative to the futures
    one. ``scale`` multiplies both series (it does not change hedge ratios).
    """
    rng = np.random.default_rng(seed)
    common = lfilter([1.0], [1.0, -phi], rng.normal(size=n))
    k = _noise_scale(phi, rho, daily_ratio)

    def basis_noise():
        level = lfilter([1.0], [1.0, -rho], rng.normal(size=n + 1))
        return np.diff(level)

    spot = common + spot_noise * k * basis_noise()
    fut = common + k * basis_noise()
    return scale * spot, scale * fut


def pair_spectra(freqs, phi: float = 0.5, rho: float = 0.75, spot_noise: float = 0.3,
                 daily_ratio: float = 0.7):
    """Spectral densities (common, spot noise, futures noise) of the model at ``freqs``.

    Densities are for ``scale=1`` and integrate over (-1/2, 1/2] to the
    variances.
    """
    z = np.exp(-2j * np.pi * np.asarray(freqs, dtype=float))
    common = 1.0 / np.abs(1.0 - phi * z) ** 2
    k = _noise_scale(phi, rho, daily_ratio)
    diff_ar = np.abs(1.0 - z) ** 2 / np.abs(1.0 - rho * z) ** 2
    return common, (spot_noise * k) ** 2 * diff_ar, k**2 * diff_ar


def prices_from_returns(returns, start: float = 100.0) -> np.ndarray:
    """Price path whose log returns are ``returns``."""
    return start * np.exp(np.concatenate([[0.0], np.cumsum(returns)]))
