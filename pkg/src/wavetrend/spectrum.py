"""Spectrum estimation from the nondecimated wavelet periodogram.

The squared coefficients I[j, k] = d[j, k]**2 of a nondecimated transform
form the raw wavelet periodogram.  It is biased (its expectation mixes
scales through the A matrix, or a D matrix after differencing) and
inconsistent (chi-squared wiggle at every point), so the estimation
pipeline is: difference if asked, extend, transform, square, trim back to
the data window, smooth along time, then unmix the scales with the
operator inverse.  Negative corrected values are reported as-is unless the
caller asks for flooring; the correction is a plain linear unmixing and
clipping it silently would bias everything downstream.

Smoothers: running mean, running median (rescaled so that the median of a
squared standard normal maps back to its mean), and an Epanechnikov
kernel.  All three shrink their window at the series edges and renormalise
the weights instead of reflecting data in, so boundary-extended values
never leak back into interior estimates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from statistics import NormalDist

import numpy as np

from .errors import (
    InvalidBinwidth,
    MatrixMismatch,
    ScaleTooDeep,
    SeriesTooShort,
)
from .filters import WaveletFilter, wavelet_filter
from .transforms import TREND_REFLECT, extend_series, ndwt_forward
from .wavelets import (
    AutocorrelationWavelet,
    CorrectionMatrix,
    a_matrix,
    autocorrelation_wavelets,
    d_matrix,
    difference_series,
)

MEAN = "mean"
MEDIAN = "median"
EPAN = "epan"
NONE = "none"

_SMOOTHERS = (MEAN, MEDIAN, EPAN, NONE)

# E[chi2_1] / median[chi2_1]; rescales a running median of squared Gaussian
# coefficients onto the mean scale the correction matrices expect.
MEDIAN_FACTOR = 1.0 / NormalDist().inv_cdf(0.75) ** 2


@dataclass(frozen=True)
class SmootherConfig:
    """Time-direction smoother for periodogram rows."""

    kind: str = MEAN
    binwidth: int = 15

    def __post_init__(self) -> None:
        if self.kind not in _SMOOTHERS:
            raise InvalidBinwidth(f"unknown smoother kind {self.kind!r}")


@dataclass(frozen=True)
class Periodogram:
    """Squared nondecimated coefficients, optionally smoothed.

    raw and smoothed are (levels, n) with column k aligned to time k of the
    input series.  diff_lag/diff_order record the differencing applied
    before the transform (0, 0 means none); under differencing the shorter
    squared series is re-embedded at a centred offset with edge columns
    replicated, so the shape stays (levels, n).
    """

    raw: np.ndarray = field(repr=False)
    smoothed: np.ndarray | None = field(repr=False, default=None)
    smoother: SmootherConfig | None = None
    diff_lag: int = 0
    diff_order: int = 0
    filter: WaveletFilter | None = None
    boundary: bool = True

    @property
    def levels(self) -> int:
        return self.raw.shape[0]

    @property
    def length(self) -> int:
        return self.raw.shape[1]

    def values(self) -> np.ndarray:
        return self.raw if self.smoothed is None else self.smoothed


@dataclass(frozen=True)
class SpectrumEstimate:
    """Corrected spectrum matrix with full provenance.

    S[j - 1, k] estimates the spectrum at scale j and time k; negative
    entries are possible unless floored is set.
    """

    S: np.ndarray = field(repr=False)
    periodogram: Periodogram
    levels: int
    filter: WaveletFilter
    correction: CorrectionMatrix
    binwidth_clamped: bool = False
    floored: bool = False

    @property
    def length(self) -> int:
        return self.S.shape[1]


def default_levels(n: int) -> int:
    """Analysis depth used when the caller does not choose one."""
    return max(1, int(math.floor(0.7 * math.log2(n))))


def max_levels(n: int) -> int:
    return int(math.floor(math.log2(n)))


def default_binwidth(n: int) -> tuple[int, bool]:
    """(binwidth, clamped): odd floor(6 sqrt(n)), capped at n // 2."""
    b = int(math.floor(6.0 * math.sqrt(n)))
    if b % 2 == 0:
        b += 1
    cap = n // 2
    if cap % 2 == 0:
        cap -= 1
    clamped = b > cap
    b = min(b, cap)
    return max(b, 3), clamped


def _parse_diff(diff) -> tuple[int, int]:
    if diff is None or diff == (0, 0):
        return 0, 0
    lag, order = diff
    return int(lag), int(order)


def _embed_columns(rows: np.ndarray, n: int, lost: int) -> np.ndarray:
    """Centre an (levels, n - lost) block inside n columns, edges replicated."""
    m = rows.shape[1]
    left = lost // 2
    out = np.empty((rows.shape[0], n))
    out[:, left : left + m] = rows
    out[:, :left] = rows[:, :1]
    out[:, left + m :] = rows[:, -1:]
    return out


def wavelet_periodogram(
    x: np.ndarray,
    filt: WaveletFilter,
    levels: int,
    boundary: bool = True,
    diff: tuple[int, int] | None = None,
) -> Periodogram:
    """Raw wavelet periodogram of a series, aligned to the data window.

    With boundary on, the series is reflected to a dyadic length before the
    transform and the squared coefficients are trimmed back to the original
    window; with boundary off the transform is circular on the series
    itself.  diff = (lag, order) differences first (normalised so the
    matching difference operator corrects the result exactly).
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise SeriesTooShort("expected a one dimensional series")
    n = x.size
    if n < 2:
        raise SeriesTooShort("need at least 2 observations")
    if levels < 1:
        raise ScaleTooDeep("need at least one analysis level")
    cap = max_levels(n)
    if levels > cap:
        raise ScaleTooDeep(f"{levels} levels exceeds floor(log2 {n}) = {cap}")
    lag, order = _parse_diff(diff)
    lost = lag * order
    if boundary:
        # Extend before differencing: the reflected series differences
        # smoothly across the seam, whereas reflecting an already
        # differenced (noise dominated) series injects a level jump that
        # inflates boundary coefficients several-fold.
        ext, desc = extend_series(x, TREND_REFLECT)
        y = difference_series(ext, lag, order) if order else ext
        pyr = ndwt_forward(y, filt, levels)
        start = desc.offset - lost // 2
        window = slice(start, start + n)
        raw = np.stack([pyr.detail(j)[window] for j in range(1, levels + 1)])
        raw = raw**2
    else:
        y = difference_series(x, lag, order) if order else x
        pyr = ndwt_forward(y, filt, levels)
        raw = np.stack([pyr.detail(j) for j in range(1, levels + 1)])
        raw = raw**2
        if lost:
            raw = _embed_columns(raw, n, lost)
    return Periodogram(
        raw=raw,
        diff_lag=lag,
        diff_order=order,
        filter=filt,
        boundary=boundary,
    )


def _validate_binwidth(binwidth: int, n: int) -> int:
    b = int(binwidth)
    if b % 2 == 0 or b < 3 or b > n:
        raise InvalidBinwidth(f"binwidth must be odd and within [3, {n}], got {binwidth}")
    return b


def _kernel_smooth(row: np.ndarray, weights: np.ndarray) -> np.ndarray:
    # Shrink the window at the edges by renormalising over the weights that
    # fall inside the series.
    num = np.convolve(row, weights, mode="same")
    den = np.convolve(np.ones_like(row), weights, mode="same")
    return num / den


def _running_median(row: np.ndarray, binwidth: int) -> np.ndarray:
    n = row.size
    half = binwidth // 2
    out = np.empty(n)
    body = np.lib.stride_tricks.sliding_window_view(row, binwidth)
    out[half : n - half] = np.median(body, axis=1)
    for i in range(half):
        out[i] = np.median(row[: i + half + 1])
        out[n - 1 - i] = np.median(row[n - 1 - i - half :])
    return out


def smooth_periodogram(pgram: Periodogram, config: SmootherConfig) -> Periodogram:
    """Smooth each periodogram row along time."""
    raw = pgram.raw
    if config.kind == NONE:
        return replace(pgram, smoothed=raw.copy(), smoother=config)
    b = _validate_binwidth(config.binwidth, raw.shape[1])
    if config.kind == MEAN:
        weights = np.ones(b)
    elif config.kind == EPAN:
        half = b // 2
        m = np.arange(-half, half + 1)
        weights = 1.0 - (m / (half + 1)) ** 2
    else:
        smoothed = np.stack([_running_median(row, b) for row in raw])
        smoothed *= MEDIAN_FACTOR
        return replace(pgram, smoothed=smoothed, smoother=config)
    smoothed = np.stack([_kernel_smooth(row, weights) for row in raw])
    return replace(pgram, smoothed=smoothed, smoother=config)


def correct_periodogram(
    pgram: Periodogram, correction: CorrectionMatrix
) -> SpectrumEstimate:
    """Unmix periodogram scales with the inverse bias operator."""
    differenced = pgram.diff_order > 0
    if differenced != (correction.kind == "difference"):
        raise MatrixMismatch(
            f"{correction.kind} correction does not match "
            f"diff=({pgram.diff_lag}, {pgram.diff_order}) periodogram"
        )
    if differenced and (correction.lag, correction.order) != (
        pgram.diff_lag,
        pgram.diff_order,
    ):
        raise MatrixMismatch(
            "difference correction lag/order "
            f"({correction.lag}, {correction.order}) does not match periodogram "
            f"({pgram.diff_lag}, {pgram.diff_order})"
        )
    if correction.levels != pgram.levels:
        raise MatrixMismatch(
            f"correction built for {correction.levels} levels, "
            f"periodogram has {pgram.levels}"
        )
    if pgram.filter is not None and correction.filter_label != pgram.filter.label:
        raise MatrixMismatch(
            f"correction uses {correction.filter_label}, "
            f"periodogram used {pgram.filter.label}"
        )
    S = correction.inverse @ pgram.values()
    filt = pgram.filter
    if filt is None:
        raise MatrixMismatch("periodogram carries no filter metadata")
    return SpectrumEstimate(
        S=S,
        periodogram=pgram,
        levels=pgram.levels,
        filter=filt,
        correction=correction,
    )


def correction_for(
    filt: WaveletFilter,
    levels: int,
    diff: tuple[int, int] | None = None,
    acw: AutocorrelationWavelet | None = None,
) -> CorrectionMatrix:
    """Bias operator matching a periodogram configuration."""
    lag, order = _parse_diff(diff)
    if acw is None or acw.levels < levels or acw.filter.label != filt.label:
        acw = autocorrelation_wavelets(filt, levels)
    if order:
        return d_matrix(acw, levels, lag=lag, order=order)
    return a_matrix(acw, levels)


def estimate_spectrum(
    x: np.ndarray,
    filter_number: int = 4,
    family: str = "extremal_phase",
    levels: int | None = None,
    smoother: str = MEAN,
    binwidth: int | None = None,
    boundary: bool = True,
    diff: tuple[int, int] | None = None,
    correction: CorrectionMatrix | None = None,
    floor_negatives: bool = False,
    filt: WaveletFilter | None = None,
) -> SpectrumEstimate:
    """Full spectrum pipeline with the standard defaults.

    levels defaults to floor(0.7 log2 n) and binwidth to the odd value near
    6 sqrt(n) capped at n / 2.  A precomputed correction matrix can be
    passed to skip rebuilding it across replicates; it must match the
    filter, depth, and differencing or MatrixMismatch is raised.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.size < 16:
        raise SeriesTooShort(f"need at least 16 observations, got {x.size}")
    n = x.size
    if filt is None:
        filt = wavelet_filter(family, filter_number)
    if levels is None:
        levels = default_levels(n)
    clamped = False
    if binwidth is None:
        binwidth, clamped = default_binwidth(n)
    pgram = wavelet_periodogram(x, filt, levels, boundary=boundary, diff=diff)
    pgram = smooth_periodogram(pgram, SmootherConfig(kind=smoother, binwidth=binwidth))
    if correction is None:
        correction = correction_for(filt, levels, diff)
    est = correct_periodogram(pgram, correction)
    if floor_negatives:
        est = replace(est, S=np.maximum(est.S, 0.0), floored=True)
    if clamped:
        est = replace(est, binwidth_clamped=True)
    return est
