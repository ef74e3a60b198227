"""Dynamic multiscale futures hedging with the maximal overlap discrete wavelet transform."""

__version__ = "0.1.0"

from .errors import (
    DegenerateError,
    InputError,
    NoHedgeError,
    ScaleUnusableError,
    UndefinedMomentError,
    WaveHedgeError,
)
from .filters import WaveletFilter, equivalent_filter_width, equivalent_filters, filter_table
from .modwt import ScaleDecomposition, imodwt, modwt, nonboundary_range
from .moments import (
    sample_stats,
    scale_moments,
    wavelet_covariance,
    wavelet_kurtosis,
    wavelet_skewness,
    wavelet_variance,
)
from .effectiveness import he_semivariance, he_var, he_variance, value_at_risk
from .hedge import (
    HedgeConfig,
    hedge_portfolio,
    min_variance_ratio,
    run_multiscale_window,
    run_rolling_study,
    run_subsampled_study,
)
from .timeseries import PriceSeries, ReturnSeries, log_returns, rolling_windows, subsample_returns
