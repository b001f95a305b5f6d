"""Local autocovariance and autocorrelation from a spectrum estimate.

The local autocovariance at rescaled time z and lag tau is the spectrum
mixed through the autocorrelation wavelets, c(z, tau) =
sum_j S_j(z) Psi_j(tau).  Negative or zero variance estimates can occur
because the spectrum correction is unconstrained; the autocorrelation is
then reported as NaN for that time point rather than failing the run.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch
from .spectrum import SpectrumEstimate
from .wavelets import AutocorrelationWavelet


@dataclass(frozen=True)
class LacvEstimate:
    """Autocovariance and autocorrelation on the time x lag grid.

    lacv[t, tau] estimates c(t/n, tau) for tau = 0..lag_max; lacr rows with
    nonpositive lag-0 variance are NaN.
    """

    lacv: np.ndarray = field(repr=False)
    lacr: np.ndarray = field(repr=False)
    lag_max: int


def default_lag_max(n: int) -> int:
    return int(math.floor(10.0 * math.log(n)))


def lacv_from_spectrum(
    spectrum: SpectrumEstimate | np.ndarray,
    acw: AutocorrelationWavelet,
    lag_max: int | None = None,
) -> LacvEstimate:
    """Mix a spectrum matrix into autocovariance via Psi_j(tau).

    Accepts a SpectrumEstimate or a plain (levels, n) matrix; lag_max
    defaults to floor(10 ln n).
    """
    S = spectrum.S if isinstance(spectrum, SpectrumEstimate) else np.asarray(spectrum)
    if S.ndim != 2:
        raise DimensionMismatch("expected a levels x n spectrum matrix")
    levels, n = S.shape
    if acw.levels < levels:
        raise DimensionMismatch(
            f"autocorrelation wavelets cover {acw.levels} levels, spectrum has {levels}"
        )
    if lag_max is None:
        lag_max = default_lag_max(n)
    if lag_max < 0:
        raise DimensionMismatch("lag_max must be nonnegative")
    taus = np.arange(lag_max + 1)
    psi = np.array([[acw.at(j, int(tau)) for tau in taus] for j in range(1, levels + 1)])
    lacv = S.T @ psi
    var = lacv[:, :1]
    with np.errstate(divide="ignore", invalid="ignore"):
        lacr = np.where(var > 0, lacv / var, np.nan)
    if np.any(var <= 0):
        warnings.warn(
            "nonpositive variance estimates; autocorrelation set to NaN there",
            RuntimeWarning,
            stacklevel=2,
        )
    return LacvEstimate(lacv=lacv, lacr=lacr, lag_max=int(lag_max))
