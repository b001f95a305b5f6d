"""Trend estimators and pointwise confidence intervals.

Two estimators share one mechanism: transform, edit coefficients, invert.
The linear estimator zeroes every detail coefficient whose wavelet support
sits entirely inside the original data window and keeps the rest (boundary
details and all scaling coefficients carry the trend).  The nonlinear
estimator instead thresholds every detail coefficient against its own
estimated standard deviation, which adapts to inhomogeneous trends at the
price of needing a spectrum estimate first.

Confidence intervals come in two flavours.  The analytic interval
materialises the linear estimator as a matrix (one transform per unit
vector) and propagates the estimated local autocovariance through it; it
is restricted to the decimated linear estimator, where the operator is
small enough and the coefficient edits are data independent.  The
bootstrap interval resimulates noise from the estimated spectrum around
the fitted trend and re-runs the identical estimator, which works for any
configuration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from statistics import NormalDist

import numpy as np

from .errors import (
    MatrixMismatch,
    MethodMismatch,
    MissingSpectrum,
    NegativeThreshold,
    SeriesTooShort,
    TooFewReps,
)
from .filters import EXTREMAL_PHASE, WaveletFilter, wavelet_filter
from .lacv import LacvEstimate
from .simulate import max_scales, tlsw_sim
from .spectrum import SpectrumEstimate, default_levels
from .transforms import (
    DECIMATED,
    NONDECIMATED,
    SYMMETRIC_TRIPLE,
    ExtensionDescriptor,
    centre_shift,
    dwt_forward,
    dwt_inverse,
    extend_series,
    ndwt_average_basis,
    ndwt_forward,
)
from .wavelets import (
    autocorrelation_wavelets,
    cross_a_matrix,
    support_length,
)

LINEAR = "linear"
NONLINEAR = "nonlinear"
HARD = "hard"
SOFT = "soft"
ANALYTIC = "analytic"
BOOT_NORMAL = "boot_normal"
BOOT_PERCENTILE = "boot_percentile"
CI_NONE = "none"


@dataclass(frozen=True)
class ThresholdPolicy:
    """Shrinkage rule and threshold scale for the nonlinear estimator.

    With the normal assumption the threshold is sigma * sqrt(2 ln n); without
    it the heavier sigma * ln n guards against fat-tailed innovations.
    """

    kind: str = HARD
    normal_assumption: bool = True

    def scale(self, n: int) -> float:
        if self.normal_assumption:
            return math.sqrt(2.0 * math.log(n))
        return math.log(n)


@dataclass(frozen=True)
class EstimatorConfig:
    """Everything needed to rerun a trend estimate on new data."""

    method: str = LINEAR
    transform: str = NONDECIMATED
    boundary: bool = True
    levels: int | None = None
    filter_number: int = 4
    family: str = EXTREMAL_PHASE
    policy: ThresholdPolicy = ThresholdPolicy()


@dataclass(frozen=True)
class TrendEstimate:
    """Fitted trend with optional pointwise interval."""

    values: np.ndarray = field(repr=False)
    config: EstimatorConfig
    filter: WaveletFilter
    levels: int
    ci_lo: np.ndarray | None = field(repr=False, default=None)
    ci_hi: np.ndarray | None = field(repr=False, default=None)
    ci_type: str = CI_NONE
    alpha: float | None = None
    reps: int | None = None

    @property
    def length(self) -> int:
        return self.values.size


def threshold(values, lam, kind: str = HARD):
    """Hard or soft shrinkage; lam may vary per coefficient."""
    values = np.asarray(values, dtype=np.float64)
    lam = np.asarray(lam, dtype=np.float64)
    if np.any(lam < 0):
        raise NegativeThreshold("threshold must be nonnegative")
    keep = np.abs(values) > lam
    if kind == HARD:
        out = np.where(keep, values, 0.0)
    elif kind == SOFT:
        out = np.where(keep, np.sign(values) * (np.abs(values) - lam), 0.0)
    else:
        raise MethodMismatch(f"unknown threshold kind {kind!r}")
    if out.ndim == 0:
        return float(out)
    return out


def _prepare(
    x: np.ndarray, boundary: bool
) -> tuple[np.ndarray, ExtensionDescriptor]:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise SeriesTooShort("expected a one dimensional series")
    if boundary:
        return extend_series(x, SYMMETRIC_TRIPLE)
    desc = ExtensionDescriptor(
        policy="none", original_length=x.size, extended_length=x.size, offset=0
    )
    return x, desc


def _detail_starts(mode: str, filter_length: int, level: int, count: int) -> np.ndarray:
    idx = np.arange(count)
    if mode == DECIMATED:
        return (1 << level) * idx
    return idx - centre_shift(filter_length, level)


def _interior_mask(
    mode: str, filter_length: int, level: int, count: int, desc: ExtensionDescriptor
) -> np.ndarray:
    """True where a detail coefficient's support lies inside the data window."""
    total = desc.extended_length
    if desc.original_length == total:
        return np.ones(count, dtype=bool)
    length = support_length(filter_length, level)
    start = _detail_starts(mode, filter_length, level, count) % total
    lo = desc.offset
    hi = desc.offset + desc.original_length
    return (start + length <= total) & (start >= lo) & (start + length <= hi)


def _invert(pyr, transform: str) -> np.ndarray:
    if transform == DECIMATED:
        return dwt_inverse(pyr)
    return ndwt_average_basis(pyr)


def linear_trend(
    x: np.ndarray,
    filter_number: int = 4,
    family: str = EXTREMAL_PHASE,
    levels: int | None = None,
    transform: str = NONDECIMATED,
    boundary: bool = True,
    filt: WaveletFilter | None = None,
) -> TrendEstimate:
    """Trend from boundary detail and scaling coefficients only.

    Interior details carry no trend when the filter has enough vanishing
    moments, so dropping them removes noise and keeps the trend; the edit
    is data independent, which is what makes the analytic interval possible.
    """
    if filt is None:
        filt = wavelet_filter(family, filter_number)
    x = np.asarray(x, dtype=np.float64)
    n = x.size
    if levels is None:
        levels = default_levels(n)
    ext, desc = _prepare(x, boundary)
    forward = dwt_forward if transform == DECIMATED else ndwt_forward
    pyr = forward(ext, filt, levels)
    details = []
    for j in range(1, levels + 1):
        d = pyr.detail(j).copy()
        d[_interior_mask(pyr.mode, filt.length, j, d.size, desc)] = 0.0
        details.append(d)
    fitted = _invert(pyr.with_details(tuple(details)), transform)[desc.window()]
    config = EstimatorConfig(
        method=LINEAR,
        transform=transform,
        boundary=boundary,
        levels=levels,
        filter_number=filt.number,
        family=filt.family,
    )
    return TrendEstimate(values=fitted, config=config, filter=filt, levels=levels)


def variance_matrix(
    spectrum: SpectrumEstimate | np.ndarray,
    analysis: WaveletFilter,
    levels: int,
) -> np.ndarray:
    """sigma^2[r - 1, t]: variance of the scale-r analysis coefficient at t.

    Rows pair the analysis wavelet with the generating wavelet of the
    spectrum through their autocorrelation cross products; negative mixes
    from negative spectrum estimates are floored at zero.
    """
    if isinstance(spectrum, SpectrumEstimate):
        S = spectrum.S
        gen_filter = spectrum.filter
    else:
        raise MatrixMismatch("variance_matrix needs a SpectrumEstimate for filter metadata")
    depth = max(levels, spectrum.levels)
    cross = cross_a_matrix(
        autocorrelation_wavelets(gen_filter, depth),
        autocorrelation_wavelets(analysis, depth),
        depth,
    )[:levels, : spectrum.levels]
    return np.maximum(cross @ S, 0.0)


def coefficient_variance(
    spectrum: SpectrumEstimate,
    analysis: WaveletFilter,
    scale: int,
    location: int,
    levels: int | None = None,
) -> float:
    """Variance of one analysis coefficient; see variance_matrix."""
    levels = scale if levels is None else levels
    if not 1 <= scale <= levels:
        raise MatrixMismatch(f"scale {scale} outside 1..{levels}")
    return float(variance_matrix(spectrum, analysis, levels)[scale - 1, location])


def nonlinear_trend(
    x: np.ndarray,
    spectrum: SpectrumEstimate,
    filter_number: int = 4,
    family: str = EXTREMAL_PHASE,
    levels: int | None = None,
    policy: ThresholdPolicy = ThresholdPolicy(),
    transform: str = NONDECIMATED,
    boundary: bool = True,
    filt: WaveletFilter | None = None,
) -> TrendEstimate:
    """Trend by coefficient-wise thresholding at estimated noise level.

    Every detail coefficient is compared against lambda built from its own
    variance under the estimated spectrum, so threshold strength follows the
    local noise level; coefficients in the extension reuse the nearest
    in-window variance.
    """
    if spectrum is None or not isinstance(spectrum, SpectrumEstimate):
        raise MissingSpectrum("nonlinear trend needs a spectrum estimate")
    if filt is None:
        filt = wavelet_filter(family, filter_number)
    x = np.asarray(x, dtype=np.float64)
    n = x.size
    if spectrum.length != n:
        raise MatrixMismatch(
            f"spectrum covers {spectrum.length} points, series has {n}"
        )
    if levels is None:
        levels = default_levels(n)
    ext, desc = _prepare(x, boundary)
    forward = dwt_forward if transform == DECIMATED else ndwt_forward
    pyr = forward(ext, filt, levels)
    sigma = np.sqrt(variance_matrix(spectrum, filt, levels))
    lam_scale = policy.scale(n)
    details = []
    for j in range(1, levels + 1):
        d = pyr.detail(j)
        if pyr.mode == DECIMATED:
            half = (support_length(filt.length, j) - 1) // 2
            centres = (1 << j) * np.arange(d.size) + half
        else:
            centres = np.arange(d.size)
        times = np.clip(centres - desc.offset, 0, n - 1)
        lam = lam_scale * sigma[j - 1, times]
        details.append(threshold(d, lam, policy.kind))
    fitted = _invert(pyr.with_details(tuple(details)), transform)[desc.window()]
    config = EstimatorConfig(
        method=NONLINEAR,
        transform=transform,
        boundary=boundary,
        levels=levels,
        filter_number=filt.number,
        family=filt.family,
        policy=policy,
    )
    return TrendEstimate(values=fitted, config=config, filter=filt, levels=levels)


def estimate_trend(
    x: np.ndarray,
    config: EstimatorConfig,
    spectrum: SpectrumEstimate | None = None,
) -> TrendEstimate:
    """Run the estimator a config describes."""
    if config.method == LINEAR:
        return linear_trend(
            x,
            filter_number=config.filter_number,
            family=config.family,
            levels=config.levels,
            transform=config.transform,
            boundary=config.boundary,
        )
    if config.method == NONLINEAR:
        if spectrum is None:
            raise MissingSpectrum("nonlinear trend needs a spectrum estimate")
        return nonlinear_trend(
            x,
            spectrum,
            filter_number=config.filter_number,
            family=config.family,
            levels=config.levels,
            policy=config.policy,
            transform=config.transform,
            boundary=config.boundary,
        )
    raise MethodMismatch(f"unknown trend method {config.method!r}")


_ANALYTIC_MAX_N = 8192


def analytic_ci(
    x: np.ndarray,
    trend: TrendEstimate,
    lacv: LacvEstimate,
    alpha: float = 0.05,
) -> TrendEstimate:
    """Gaussian interval from the materialised linear operator.

    Var(T_hat_t) = sum_{s,u} r_ts r_tu c(u/n, |u - s|) with the
    autocovariance read at the later time of each pair and truncated at the
    estimate's lag_max.  Only the decimated linear estimator is supported;
    for anything else use the bootstrap.
    """
    if trend.config.method != LINEAR or trend.config.transform != DECIMATED:
        raise MethodMismatch("analytic interval needs the linear decimated estimator")
    x = np.asarray(x, dtype=np.float64)
    n = x.size
    if n > _ANALYTIC_MAX_N:
        raise MethodMismatch(
            f"analytic interval refused for n = {n} > {_ANALYTIC_MAX_N}; "
            "use bootstrap_ci instead"
        )
    rows = np.empty((n, n))
    basis = np.zeros(n)
    for s in range(n):
        basis[s] = 1.0
        rows[:, s] = estimate_trend(basis, trend.config).values
        basis[s] = 0.0
    c = lacv.lacv
    if c.shape[0] != n:
        raise MatrixMismatch(f"autocovariance covers {c.shape[0]} points, series has {n}")
    var = np.zeros(n)
    for d in range(min(lacv.lag_max, n - 1) + 1):
        pair = (rows[:, : n - d] * rows[:, d:]) @ c[d:, d]
        var += pair if d == 0 else 2.0 * pair
    half = NormalDist().inv_cdf(1.0 - alpha / 2.0) * np.sqrt(np.maximum(var, 0.0))
    return replace(
        trend,
        ci_lo=trend.values - half,
        ci_hi=trend.values + half,
        ci_type=ANALYTIC,
        alpha=alpha,
    )


def _padded_spectrum(spectrum: SpectrumEstimate) -> np.ndarray:
    """Nonnegative spectrum on the full scale range the simulator expects."""
    n = spectrum.length
    full = np.zeros((max_scales(n), n))
    full[: spectrum.levels] = np.maximum(spectrum.S, 0.0)
    return full


def bootstrap_ci(
    x: np.ndarray,
    trend: TrendEstimate,
    spectrum: SpectrumEstimate,
    reps: int = 200,
    alpha: float = 0.05,
    ci_type: str = BOOT_PERCENTILE,
    seed: int | None = 0,
) -> TrendEstimate:
    """Interval from resimulated noise around the fitted trend.

    Replicate b adds simulated noise (spectrum floored at zero) to the
    fitted trend, re-estimates with the identical config, and the pointwise
    spread of the re-estimates forms the interval.  Replicate streams are
    seeded seed XOR b, so results do not depend on evaluation order.  The
    spectrum is not re-estimated per replicate.
    """
    if ci_type not in (BOOT_NORMAL, BOOT_PERCENTILE):
        raise MethodMismatch(f"unknown bootstrap interval type {ci_type!r}")
    needed = max(20, math.ceil(2.0 / alpha))
    if reps < needed:
        raise TooFewReps(f"need at least {needed} replicates for alpha = {alpha}")
    if spectrum is None or not isinstance(spectrum, SpectrumEstimate):
        raise MissingSpectrum("bootstrap needs a spectrum estimate")
    base = int(seed) if seed is not None else 0
    smat = _padded_spectrum(spectrum)
    fits = np.empty((reps, trend.length))
    for b in range(1, reps + 1):
        xb = trend.values + tlsw_sim(
            spec=smat, seed=base ^ b, filt=spectrum.filter
        )
        fits[b - 1] = estimate_trend(xb, trend.config, spectrum=spectrum).values
    if ci_type == BOOT_NORMAL:
        half = NormalDist().inv_cdf(1.0 - alpha / 2.0) * fits.std(axis=0, ddof=1)
        lo, hi = trend.values - half, trend.values + half
    else:
        lo = np.quantile(fits, alpha / 2.0, axis=0)
        hi = np.quantile(fits, 1.0 - alpha / 2.0, axis=0)
    return replace(
        trend, ci_lo=lo, ci_hi=hi, ci_type=ci_type, alpha=alpha, reps=reps
    )
