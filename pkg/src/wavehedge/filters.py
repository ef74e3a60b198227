"""MODWT filter pairs.

Coefficients are stored already rescaled for the MODWT, i.e. the usual
orthonormal filters divided by sqrt(2), so the scaling filter sums to 1 and
each filter has squared norm 1/2. The wavelet filter follows from the
scaling filter by the quadrature-mirror relation
``wavelet[l] = (-1)**l * scaling[L - 1 - l]``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError

__all__ = [
    "WaveletFilter",
    "filter_table",
    "FILTER_NAMES",
    "equivalent_filter_width",
    "equivalent_filters",
]

# Rescaled scaling filters g~_l, 20+ significant digits.
_SCALING = {
    "haar": (0.5, 0.5),
    # Daubechies extremal phase, 4 taps.
    "d4": (
        0.34150635094610966169,
        0.59150635094610966169,
        0.15849364905389033831,
        -0.091506350946109661691,
    ),
    # Daubechies least asymmetric, 8 taps.
    "la8": (
        -0.0535744507091029091163,
        -0.0209554825625297637862,
        0.351869534328149943804,
        0.568329121703820359404,
        0.210617267101788542921,
        -0.0701588120892717242694,
        -0.00891235072083557760903,
        0.0227851729479811286512,
    ),
    # Coiflet-type, 10 taps: wavelet moments 0..3 vanish, scaling moments
    # 1..3 vanish about t = 2.452275108347404263.
    "c10": (
        -0.02869100938336929114581,
        0.06485705677475323555605,
        0.4320766874129096695858,
        0.5308243227336701222104,
        0.1060285996962750904542,
        -0.1205370917581669606398,
        -0.006592001184653091011946,
        0.02610421112945954667405,
        -0.002822276541162377524534,
        -0.001248498879715944158375,
    ),
}

FILTER_NAMES = tuple(_SCALING)


@dataclass(frozen=True)
class WaveletFilter:
    """A named MODWT filter pair: scaling (father) and wavelet (mother)."""

    name: str
    scaling: np.ndarray
    wavelet: np.ndarray

    @property
    def width(self) -> int:
        """Number of taps, ``L``."""
        return len(self.scaling)

    def level_width(self, level: int) -> int:
        return equivalent_filter_width(self.width, level)


def _make(name: str) -> WaveletFilter:
    g = np.array(_SCALING[name], dtype=float)
    L = len(g)
    h = g[::-1] * (-1.0) ** np.arange(L)
    g.setflags(write=False)
    h.setflags(write=False)
    return WaveletFilter(name, g, h)


_CACHE = {name: _make(name) for name in FILTER_NAMES}


def filter_table(name) -> WaveletFilter:
    """Look up a filter pair by (case-insensitive) name.

    Passing a :class:`WaveletFilter` returns it unchanged.
    """
    if isinstance(name, WaveletFilter):
        return name
    key = str(name).strip().lower()
    try:
        return _CACHE[key]
    except KeyError:
        raise InputError(
            f"unknown wavelet filter {name!r}; supported: {', '.join(FILTER_NAMES)}"
        ) from None


def equivalent_filter_width(width: int, level: int) -> int:
    """Width ``(2**level - 1) * (width - 1) + 1`` of the level-``level`` filter."""
    if width < 2 or width % 2:
        raise InputError(f"base filter width must be even and >= 2, got {width}")
    if level < 1:
        raise InputError(f"level must be >= 1, got {level}")
    return (2**level - 1) * (width - 1) + 1


def _upsample(taps: np.ndarray, factor: int) -> np.ndarray:
    out = np.zeros((len(taps) - 1) * factor + 1)
    out[::factor] = taps
    return out


def equivalent_filters(filt, level: int) -> tuple[np.ndarray, np.ndarray]:
    """Explicit level-``level`` (wavelet, scaling) filters.

    The level-j wavelet filter is the base wavelet filter upsampled by
    ``2**(j-1)`` convolved with the level-(j-1) scaling filter; likewise for
    the scaling filter. Both have ``equivalent_filter_width(L, j)`` taps.
    """
    filt = filter_table(filt)
    if level < 1:
        raise InputError(f"level must be >= 1, got {level}")
    g_prev = np.array([1.0])
    for j in range(1, level + 1):
        factor = 2 ** (j - 1)
        h_j = np.convolve(g_prev, _upsample(filt.wavelet, factor))
        g_prev = np.convolve(g_prev, _upsample(filt.scaling, factor))
    return h_j, g_prev
