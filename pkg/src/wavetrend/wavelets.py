"""Discrete wavelet vectors, autocorrelation wavelets and correction matrices.

The discrete wavelets are built by the standard two-scale cascade

    psi_1 = g,            psi_{j+1}[l] = sum_k h[l - 2k] psi_j[k],

giving vectors of length L_j = (2**j - 1)(N - 1) + 1 for an N-tap filter.
Their autocorrelations Psi_j(tau) = sum_t psi_j(t) psi_j(t + tau) drive both
the local autocovariance and the periodogram bias correction: the raw
wavelet periodogram of a process with spectrum S satisfies E(I_j) ~ (A S)_j
with A[j, l] = sum_tau Psi_j(tau) Psi_l(tau), so premultiplying by inv(A)
debiases it.  When the series is differenced before the transform the same
role is played by the difference-adjusted matrices built in d_matrix.

Differencing normalisation: difference_series divides a first difference at
any lag by sqrt(2) and the second difference by sqrt(6) (the root of the sum
of squared difference weights).  Under that convention the bias operator for
a lag-p first difference is exactly A - A^p, where
A^p[j, l] = sum_tau Psi_j(tau) Psi_l(tau - p), and for the second difference
it is A - (4/3) A^1 + (1/3) A^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidDiffSpec,
    ScaleTooDeep,
    SeriesTooShort,
    SingularMatrix,
)
from .filters import WaveletFilter

__all__ = [
    "DiscreteWavelet",
    "AutocorrelationWavelet",
    "CorrectionMatrix",
    "discrete_wavelets",
    "autocorrelation_wavelets",
    "a_matrix",
    "lagged_a_matrix",
    "d_matrix",
    "cross_a_matrix",
    "difference_series",
    "support_length",
]

COND_LIMIT = 1e12


def support_length(filter_length: int, level: int) -> int:
    """Number of taps of the level-j discrete wavelet."""
    return (2**level - 1) * (filter_length - 1) + 1


@dataclass(frozen=True)
class DiscreteWavelet:
    """Cascade vectors psi_j (and scaling phi_j) for levels 1..levels."""

    filter: WaveletFilter
    levels: int
    vectors: tuple[np.ndarray, ...] = field(repr=False)
    scaling_vectors: tuple[np.ndarray, ...] = field(repr=False)

    def psi(self, level: int) -> np.ndarray:
        return self.vectors[level - 1]

    def phi(self, level: int) -> np.ndarray:
        return self.scaling_vectors[level - 1]


@dataclass(frozen=True)
class AutocorrelationWavelet:
    """Autocorrelations Psi_j(tau) stored symmetrically around tau = 0.

    values[j - 1] has length 2 L_j - 1 with tau = 0 at the centre index.
    """

    filter: WaveletFilter
    levels: int
    values: tuple[np.ndarray, ...] = field(repr=False)

    def radius(self, level: int) -> int:
        return (self.values[level - 1].size - 1) // 2

    def at(self, level: int, tau: int) -> float:
        row = self.values[level - 1]
        r = (row.size - 1) // 2
        if abs(tau) > r:
            return 0.0
        return float(row[tau + r])


@dataclass(frozen=True)
class CorrectionMatrix:
    """A periodogram bias operator together with its inverse.

    kind is "direct" for the plain A matrix and "difference" for the
    difference-adjusted operators; lag/order record the differencing the
    operator corrects for.
    """

    kind: str
    levels: int
    matrix: np.ndarray = field(repr=False)
    inverse: np.ndarray = field(repr=False)
    cond: float
    filter_label: str
    lag: int = 0
    order: int = 0


def _upsample(v: np.ndarray) -> np.ndarray:
    out = np.zeros(2 * v.size - 1)
    out[::2] = v
    return out


def discrete_wavelets(filt: WaveletFilter, levels: int) -> DiscreteWavelet:
    """Build psi_1..psi_levels and phi_1..phi_levels by the cascade."""
    if levels < 1:
        raise ScaleTooDeep("levels must be at least 1")
    h = filt.lowpass
    psis = [filt.highpass.copy()]
    phis = [h.copy()]
    for _ in range(levels - 1):
        psis.append(np.convolve(_upsample(psis[-1]), h))
        phis.append(np.convolve(_upsample(phis[-1]), h))
    for j, v in enumerate(psis, start=1):
        if v.size != support_length(filt.length, j):
            raise AssertionError("cascade produced an unexpected length")
    return DiscreteWavelet(
        filter=filt,
        levels=levels,
        vectors=tuple(psis),
        scaling_vectors=tuple(phis),
    )


def autocorrelation_wavelets(
    filt: WaveletFilter, levels: int, wavelet: DiscreteWavelet | None = None
) -> AutocorrelationWavelet:
    """Autocorrelation wavelets for levels 1..levels."""
    dw = wavelet if wavelet is not None and wavelet.levels >= levels else None
    if dw is None:
        dw = discrete_wavelets(filt, levels)
    rows = tuple(np.correlate(dw.psi(j), dw.psi(j), "full") for j in range(1, levels + 1))
    return AutocorrelationWavelet(filter=filt, levels=levels, values=rows)


def _shifted_overlap(u: np.ndarray, v: np.ndarray, shift: int) -> float:
    """sum_tau u(tau) v(tau - shift) for centred arrays."""
    ru = (u.size - 1) // 2
    rv = (v.size - 1) // 2
    lo = max(-ru, shift - rv)
    hi = min(ru, shift + rv)
    if lo > hi:
        return 0.0
    return float(u[lo + ru : hi + ru + 1] @ v[lo - shift + rv : hi - shift + rv + 1])


def _check_depth(acw: AutocorrelationWavelet, max_scale: int) -> None:
    if max_scale < 1:
        raise ScaleTooDeep("max_scale must be at least 1")
    if max_scale > acw.levels:
        raise DimensionMismatch(
            f"autocorrelation wavelet covers {acw.levels} levels, need {max_scale}"
        )


def lagged_a_matrix(acw: AutocorrelationWavelet, max_scale: int, lag: int) -> np.ndarray:
    """Matrix with entries sum_tau Psi_j(tau) Psi_l(tau - lag); symmetric."""
    _check_depth(acw, max_scale)
    out = np.empty((max_scale, max_scale))
    for j in range(max_scale):
        for l in range(j, max_scale):
            val = _shifted_overlap(acw.values[j], acw.values[l], lag)
            out[j, l] = val
            out[l, j] = val
    return out


def _invert(mat: np.ndarray, kind: str, filt_label: str, levels: int, lag: int, order: int) -> CorrectionMatrix:
    cond = float(np.linalg.cond(mat))
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise SingularMatrix(
            f"{kind} correction matrix at depth {levels} has condition {cond:.3g}"
        )
    inverse = np.linalg.inv(mat)
    return CorrectionMatrix(
        kind=kind,
        levels=levels,
        matrix=mat,
        inverse=inverse,
        cond=cond,
        filter_label=filt_label,
        lag=lag,
        order=order,
    )


def a_matrix(acw: AutocorrelationWavelet, max_scale: int) -> CorrectionMatrix:
    """Inner product matrix of the autocorrelation wavelets, inverted."""
    mat = lagged_a_matrix(acw, max_scale, 0)
    return _invert(mat, "direct", acw.filter.label, max_scale, 0, 0)


def d_matrix(
    acw: AutocorrelationWavelet, max_scale: int, lag: int = 1, order: int = 1
) -> CorrectionMatrix:
    """Bias operator for a periodogram of the normalised differenced series.

    order 1 allows any positive lag; order 2 is the repeated first difference
    and is only defined for lag 1.
    """
    if order == 1:
        if lag < 1:
            raise InvalidDiffSpec("difference lag must be a positive integer")
        mat = lagged_a_matrix(acw, max_scale, 0) - lagged_a_matrix(acw, max_scale, lag)
    elif order == 2:
        if lag != 1:
            raise InvalidDiffSpec("second differencing is only defined for lag 1")
        a0 = lagged_a_matrix(acw, max_scale, 0)
        a1 = lagged_a_matrix(acw, max_scale, 1)
        a2 = lagged_a_matrix(acw, max_scale, 2)
        mat = a0 - (4.0 / 3.0) * a1 + (1.0 / 3.0) * a2
    else:
        raise InvalidDiffSpec(f"difference order must be 1 or 2, got {order}")
    return _invert(mat, "difference", acw.filter.label, max_scale, lag, order)


def cross_a_matrix(
    acw_generating: AutocorrelationWavelet,
    acw_analysis: AutocorrelationWavelet,
    max_scale: int,
) -> np.ndarray:
    """Cross inner products between two autocorrelation wavelet systems.

    Entry (r, l) pairs scale r of the analysis wavelet with scale l of the
    generating wavelet, so that row r against a spectrum vector gives the
    variance of the scale-r analysis coefficient of a process generated with
    the other wavelet.
    """
    _check_depth(acw_generating, max_scale)
    _check_depth(acw_analysis, max_scale)
    out = np.empty((max_scale, max_scale))
    for r in range(max_scale):
        for l in range(max_scale):
            out[r, l] = _shifted_overlap(
                acw_analysis.values[r], acw_generating.values[l], 0
            )
    return out


_DIFF_NORM = {1: np.sqrt(2.0), 2: np.sqrt(6.0)}


def difference_series(x: np.ndarray, lag: int = 1, order: int = 1) -> np.ndarray:
    """Variance-normalised differencing.

    A single lag-p difference is divided by sqrt(2); the order-2 difference
    (lag 1 applied twice) by sqrt(6).  With this scaling the periodogram of
    the output is corrected by the matching d_matrix without extra factors.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise DimensionMismatch("expected a one dimensional series")
    if order not in _DIFF_NORM:
        raise InvalidDiffSpec(f"difference order must be 1 or 2, got {order}")
    if lag < 1:
        raise InvalidDiffSpec("difference lag must be a positive integer")
    if order == 2 and lag != 1:
        raise InvalidDiffSpec("second differencing is only defined for lag 1")
    needed = lag * order + 2
    if x.size < needed:
        raise SeriesTooShort(f"need at least {needed} observations, got {x.size}")
    if order == 1:
        out = x[lag:] - x[:-lag]
    else:
        out = x[2:] - 2.0 * x[1:-1] + x[:-2]
    return out / _DIFF_NORM[order]
