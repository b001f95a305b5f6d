"""Trend and spectrum estimation for locally stationary wavelet processes.

The model is an additive decomposition X_t = T_t + eps_t with a smooth
deterministic trend and zero-mean noise whose second-order structure
evolves slowly in rescaled time.  The package simulates such processes,
estimates the evolutionary wavelet spectrum with optional differencing to
protect against trend leakage, mixes the spectrum into local
autocovariance, and extracts the trend with linear (boundary-coefficient)
or nonlinear (thresholded) wavelet estimators with pointwise intervals.
"""

from .errors import (
    DimensionMismatch,
    InvalidBinwidth,
    InvalidDiffSpec,
    MatrixMismatch,
    MethodMismatch,
    MissingSpectrum,
    ModeMismatch,
    NegativeSpectrum,
    NegativeThreshold,
    NonDyadicFunctionalSpec,
    NonDyadicLength,
    ScaleTooDeep,
    SeriesTooShort,
    SingularMatrix,
    TooFewReps,
    UnsupportedFilter,
    WavetrendError,
)
from .filters import EXTREMAL_PHASE, LEAST_ASYMMETRIC, WaveletFilter, wavelet_filter
from .lacv import LacvEstimate, default_lag_max, lacv_from_spectrum
from .scenarios import Scenario, scenario, scenario_names
from .simulate import max_scales, sample_spec, sample_trend, tlsw_sim
from .spectrum import (
    EPAN,
    MEAN,
    MEDIAN,
    NONE,
    Periodogram,
    SmootherConfig,
    SpectrumEstimate,
    correct_periodogram,
    correction_for,
    default_binwidth,
    default_levels,
    estimate_spectrum,
    max_levels,
    smooth_periodogram,
    wavelet_periodogram,
)
from .transforms import (
    DECIMATED,
    NONDECIMATED,
    SYMMETRIC_TRIPLE,
    TREND_REFLECT,
    CoefficientPyramid,
    ExtensionDescriptor,
    dwt_forward,
    dwt_inverse,
    extend_series,
    ndwt_average_basis,
    ndwt_forward,
)
from .trend import (
    ANALYTIC,
    BOOT_NORMAL,
    BOOT_PERCENTILE,
    CI_NONE,
    HARD,
    LINEAR,
    NONLINEAR,
    SOFT,
    EstimatorConfig,
    ThresholdPolicy,
    TrendEstimate,
    analytic_ci,
    bootstrap_ci,
    coefficient_variance,
    estimate_trend,
    linear_trend,
    nonlinear_trend,
    threshold,
)
from .wavelets import (
    AutocorrelationWavelet,
    CorrectionMatrix,
    DiscreteWavelet,
    a_matrix,
    autocorrelation_wavelets,
    cross_a_matrix,
    d_matrix,
    difference_series,
    discrete_wavelets,
)

__version__ = "0.1.0"

__all__ = [
    "ANALYTIC",
    "BOOT_NORMAL",
    "BOOT_PERCENTILE",
    "CI_NONE",
    "DECIMATED",
    "EPAN",
    "EXTREMAL_PHASE",
    "HARD",
    "LEAST_ASYMMETRIC",
    "LINEAR",
    "MEAN",
    "MEDIAN",
    "NONDECIMATED",
    "NONE",
    "NONLINEAR",
    "SOFT",
    "SYMMETRIC_TRIPLE",
    "TREND_REFLECT",
    "AutocorrelationWavelet",
    "CoefficientPyramid",
    "CorrectionMatrix",
    "DimensionMismatch",
    "DiscreteWavelet",
    "EstimatorConfig",
    "ExtensionDescriptor",
    "InvalidBinwidth",
    "InvalidDiffSpec",
    "LacvEstimate",
    "MatrixMismatch",
    "MethodMismatch",
    "MissingSpectrum",
    "ModeMismatch",
    "NegativeSpectrum",
    "NegativeThreshold",
    "NonDyadicFunctionalSpec",
    "NonDyadicLength",
    "Periodogram",
    "ScaleTooDeep",
    "Scenario",
    "SeriesTooShort",
    "SingularMatrix",
    "SmootherConfig",
    "SpectrumEstimate",
    "ThresholdPolicy",
    "TooFewReps",
    "TrendEstimate",
    "UnsupportedFilter",
    "WaveletFilter",
    "WavetrendError",
    "a_matrix",
    "analytic_ci",
    "autocorrelation_wavelets",
    "bootstrap_ci",
    "coefficient_variance",
    "correct_periodogram",
    "correction_for",
    "cross_a_matrix",
    "d_matrix",
    "default_binwidth",
    "default_lag_max",
    "default_levels",
    "difference_series",
    "discrete_wavelets",
    "dwt_forward",
    "dwt_inverse",
    "estimate_spectrum",
    "estimate_trend",
    "extend_series",
    "lacv_from_spectrum",
    "linear_trend",
    "max_levels",
    "max_scales",
    "ndwt_average_basis",
    "ndwt_forward",
    "nonlinear_trend",
    "sample_spec",
    "sample_trend",
    "scenario",
    "scenario_names",
    "smooth_periodogram",
    "threshold",
    "tlsw_sim",
    "wavelet_filter",
    "wavelet_periodogram",
]
