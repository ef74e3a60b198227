"""Exception hierarchy shared by the wavehedge modules."""


class WaveHedgeError(ValueError):
    """Base class for all errors raised by wavehedge."""


class InputError(WaveHedgeError):
    """Invalid input data or arguments (bad prices, dates, lengths, names)."""


class ScaleUnusableError(WaveHedgeError):
    """A decomposition level has no non-boundary coefficients for this length."""


class DegenerateError(WaveHedgeError):
    """A statistic is undefined because a variance (or VaR) is zero or negative."""


class UndefinedMomentError(DegenerateError):
    """Skewness, kurtosis or a variance ratio with a zero-variance denominator."""


class NoHedgeError(DegenerateError):
    """The futures series has zero variance, so no hedge ratio exists."""
