"""Maximal overlap discrete wavelet transform with circular boundaries.

The forward transform uses the pyramid algorithm: at level ``j`` the base
filters, upsampled by ``2**(j-1)``, are circularly applied to the level
``j-1`` scaling coefficients. All routines operate along the last axis, so a
2-d array decomposes one series per row.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, ScaleUnusableError
from .filters import WaveletFilter, equivalent_filter_width, filter_table

__all__ = ["ScaleDecomposition", "modwt", "imodwt", "nonboundary_range"]


@dataclass(frozen=True)
class ScaleDecomposition:
    """Detail coefficients for levels 1..J and the level-J smooth.

    ``details[j - 1]`` holds level ``j`` and has the same shape as the
    input; ``smooth`` holds the level-J scaling coefficients.
    """

    details: np.ndarray
    smooth: np.ndarray
    filter: WaveletFilter

    @property
    def levels(self) -> int:
        return self.details.shape[0]

    @property
    def length(self) -> int:
        return self.smooth.shape[-1]

    @property
    def boundary_widths(self) -> tuple[int, ...]:
        """Equivalent filter width ``L_j`` for each level."""
        return tuple(
            equivalent_filter_width(self.filter.width, j) for j in range(1, self.levels + 1)
        )

    def detail(self, level: int) -> np.ndarray:
        if not 1 <= level <= self.levels:
            raise InputError(f"level must be in 1..{self.levels}, got {level}")
        return self.details[level - 1]


def _circular_filter(taps: np.ndarray, v: np.ndarray, step: int, sign: int) -> np.ndarray:
    # out[t] = sum_l taps[l] * v[t - sign*step*l  (mod N)]
    out = taps[0] * v
    for l in range(1, len(taps)):
        out = out + taps[l] * np.roll(v, sign * step * l, axis=-1)
    return out


def modwt(x, filt="la8", levels: int = 6) -> ScaleDecomposition:
    """Decompose ``x`` to ``levels`` levels with circular boundary conditions."""
    filt = filter_table(filt)
    x = np.asarray(x, dtype=float)
    if x.ndim == 0 or x.shape[-1] < 2:
        raise InputError("modwt needs at least 2 observations")
    if not np.all(np.isfinite(x)):
        raise InputError("modwt input contains non-finite values")
    if int(levels) != levels or levels < 1:
        raise InputError(f"levels must be a positive integer, got {levels!r}")
    details = np.empty((levels,) + x.shape)
    v = x
    for j in range(1, levels + 1):
        step = 2 ** (j - 1)
        details[j - 1] = _circular_filter(filt.wavelet, v, step, +1)
        v = _circular_filter(filt.scaling, v, step, +1)
    return ScaleDecomposition(details, v, filt)


def imodwt(decomp: ScaleDecomposition) -> np.ndarray:
    """Invert :func:`modwt` by running the pyramid backwards."""
    details = np.asarray(decomp.details, dtype=float)
    v = np.asarray(decomp.smooth, dtype=float)
    if details.ndim < 2 or details.shape[1:] != v.shape:
        raise InputError(
            f"detail shape {details.shape} does not match smooth shape {v.shape}"
        )
    filt = decomp.filter
    for j in range(details.shape[0], 0, -1):
        step = 2 ** (j - 1)
        v = _circular_filter(filt.wavelet, details[j - 1], step, -1) + _circular_filter(
            filt.scaling, v, step, -1
        )
    return v


def nonboundary_range(n: int, width: int) -> tuple[range, int]:
    """Indices unaffected by circular wrap-around and their count ``n - width + 1``."""
    if width < 1:
        raise InputError(f"filter width must be >= 1, got {width}")
    if width > n:
        raise ScaleUnusableError(
            f"filter width {width} exceeds series length {n}; no non-boundary coefficients"
        )
    return range(width - 1, n), n - width + 1
