"""Series extension and the (non)decimated wavelet transforms.

Both transforms treat their input circularly.  Boundary handling is done by
extending the series first and remembering where the original segment sits
via an ExtensionDescriptor:

* trend_reflect: point (odd) reflection about each endpoint, which continues
  a linear trend across the joins exactly.  Padded to the next power of two
  at least twice the input length, original segment centred.
* symmetric_triple: plain reflection [reverse(x), x, reverse(x)], then odd
  reflection padding to the next power of two at least three times the input
  length, original segment centred.

Alignment: a nondecimated coefficient at position k is computed from the
window of data centred on k.  Concretely the level-j detail row is the
circular correlation of the data with psi_j assigned to the rightmost filter
tap and then shifted left by floor((L_j - 1) / 2), so a unit impulse at t
produces the reversed psi_j traced around position t.

The nondecimated inverse implemented here is the usual basis-averaging
reconstruction: every level halves the pair of shifted orthogonal-basis
inverses, which equals averaging all 2**levels decimated reconstructions and
is exact on an untouched pyramid for any input length.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ModeMismatch, NonDyadicLength, ScaleTooDeep, SeriesTooShort
from .filters import WaveletFilter
from .wavelets import support_length

__all__ = [
    "TREND_REFLECT",
    "SYMMETRIC_TRIPLE",
    "NONDECIMATED",
    "DECIMATED",
    "ExtensionDescriptor",
    "CoefficientPyramid",
    "extend_series",
    "ndwt_forward",
    "ndwt_average_basis",
    "dwt_forward",
    "dwt_inverse",
    "centre_shift",
    "detail_support",
    "next_pow2",
]

TREND_REFLECT = "trend_reflect"
SYMMETRIC_TRIPLE = "symmetric_triple"
NONDECIMATED = "nondecimated"
DECIMATED = "decimated"


def next_pow2(m: int) -> int:
    if m < 1:
        raise ValueError("next_pow2 needs a positive integer")
    return 1 << (m - 1).bit_length()


@dataclass(frozen=True)
class ExtensionDescriptor:
    """Where the original data sits inside an extended series."""

    policy: str
    original_length: int
    extended_length: int
    offset: int

    def window(self) -> slice:
        return slice(self.offset, self.offset + self.original_length)


def extend_series(x: np.ndarray, policy: str) -> tuple[np.ndarray, ExtensionDescriptor]:
    """Extend a series to a dyadic length with the original segment centred."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise SeriesTooShort("expected a one dimensional series")
    n = x.size
    if n < 2:
        raise SeriesTooShort("need at least 2 observations to extend")
    if policy == TREND_REFLECT:
        base = x
        target = next_pow2(2 * n)
    elif policy == SYMMETRIC_TRIPLE:
        base = np.concatenate([x[::-1], x, x[::-1]])
        target = next_pow2(3 * n)
    else:
        raise ValueError(f"unknown extension policy {policy!r}")
    pad = target - base.size
    left = pad // 2
    right = pad - left
    ext = np.pad(base, (left, right), mode="reflect", reflect_type="odd")
    offset = left if policy == TREND_REFLECT else left + n
    return ext, ExtensionDescriptor(
        policy=policy, original_length=n, extended_length=target, offset=offset
    )


@dataclass(frozen=True)
class CoefficientPyramid:
    """Wavelet coefficients of one transform of one series.

    details[j - 1] holds the level-j detail coefficients; scaling holds the
    deepest-level scaling coefficients.  Nondecimated rows all have the
    transform length; decimated rows halve per level.
    """

    mode: str
    filter: WaveletFilter
    levels: int
    length: int
    details: tuple[np.ndarray, ...] = field(repr=False)
    scaling: np.ndarray = field(repr=False)

    def detail(self, level: int) -> np.ndarray:
        return self.details[level - 1]

    def with_details(self, details: tuple[np.ndarray, ...]) -> "CoefficientPyramid":
        if len(details) != self.levels:
            raise ModeMismatch("detail level count changed")
        return replace(self, details=tuple(details))


def centre_shift(filter_length: int, level: int) -> int:
    """Left shift applied to align coefficient k with data time k."""
    lj = support_length(filter_length, level)
    return (lj - 1) - (lj - 1) // 2  # ceil((L_j - 1) / 2)


def _check_levels(n: int, levels: int) -> None:
    if levels < 1:
        raise ScaleTooDeep("levels must be at least 1")
    if 2**levels > n:
        raise ScaleTooDeep(f"{levels} levels need at least {2**levels} observations")


def ndwt_forward(x: np.ndarray, filt: WaveletFilter, levels: int) -> CoefficientPyramid:
    """Nondecimated transform with centre-aligned coefficient rows."""
    x = np.asarray(x, dtype=np.float64)
    n = x.size
    _check_levels(n, levels)
    h = filt.lowpass
    g = filt.highpass
    approx = x
    details: list[np.ndarray] = []
    for j in range(1, levels + 1):
        step = 2 ** (j - 1)
        detail = np.zeros(n)
        nxt = np.zeros(n)
        for m in range(filt.length):
            rolled = np.roll(approx, -step * m)
            detail += g[m] * rolled
            nxt += h[m] * rolled
        details.append(np.roll(detail, centre_shift(filt.length, j)))
        approx = nxt
    scaling = np.roll(approx, centre_shift(filt.length, levels))
    return CoefficientPyramid(
        mode=NONDECIMATED,
        filter=filt,
        levels=levels,
        length=n,
        details=tuple(details),
        scaling=scaling,
    )


def ndwt_average_basis(pyr: CoefficientPyramid) -> np.ndarray:
    """Basis-averaged inverse of a nondecimated pyramid."""
    if pyr.mode != NONDECIMATED:
        raise ModeMismatch("pyramid was not produced by ndwt_forward")
    filt = pyr.filter
    h = filt.lowpass
    g = filt.highpass
    approx = np.roll(pyr.scaling, -centre_shift(filt.length, pyr.levels))
    for j in range(pyr.levels, 0, -1):
        detail = np.roll(pyr.detail(j), -centre_shift(filt.length, j))
        step = 2 ** (j - 1)
        nxt = np.zeros(pyr.length)
        for m in range(filt.length):
            nxt += h[m] * np.roll(approx, step * m)
            nxt += g[m] * np.roll(detail, step * m)
        approx = 0.5 * nxt
    return approx


def dwt_forward(x: np.ndarray, filt: WaveletFilter, levels: int) -> CoefficientPyramid:
    """Orthogonal periodic transform; needs a power-of-two length."""
    x = np.asarray(x, dtype=np.float64)
    n = x.size
    if n < 2 or n & (n - 1):
        raise NonDyadicLength(f"decimated transform needs a power-of-two length, got {n}")
    _check_levels(n, levels)
    h = filt.lowpass
    g = filt.highpass
    approx = x
    details: list[np.ndarray] = []
    for _ in range(levels):
        m = approx.size
        corr_h = np.zeros(m)
        corr_g = np.zeros(m)
        for t in range(filt.length):
            rolled = np.roll(approx, -t)
            corr_h += h[t] * rolled
            corr_g += g[t] * rolled
        details.append(corr_g[0::2])
        approx = corr_h[0::2]
    return CoefficientPyramid(
        mode=DECIMATED,
        filter=filt,
        levels=levels,
        length=n,
        details=tuple(details),
        scaling=approx,
    )


def dwt_inverse(pyr: CoefficientPyramid) -> np.ndarray:
    """Exact inverse (the adjoint) of dwt_forward."""
    if pyr.mode != DECIMATED:
        raise ModeMismatch("pyramid was not produced by dwt_forward")
    filt = pyr.filter
    h = filt.lowpass
    g = filt.highpass
    approx = pyr.scaling
    for j in range(pyr.levels, 0, -1):
        detail = pyr.detail(j)
        m = 2 * approx.size
        up_a = np.zeros(m)
        up_d = np.zeros(m)
        up_a[0::2] = approx
        up_d[0::2] = detail
        nxt = np.zeros(m)
        for t in range(filt.length):
            nxt += h[t] * np.roll(up_a, t)
            nxt += g[t] * np.roll(up_d, t)
        approx = nxt
    return approx


def detail_support(
    mode: str, filter_length: int, level: int, index: int
) -> tuple[int, int]:
    """(start, length) of the data window a detail coefficient draws on.

    Start is reported in unwrapped transform coordinates and may be negative
    or extend past the transform length, in which case the support wraps.
    """
    lj = support_length(filter_length, level)
    if mode == DECIMATED:
        return (2**level) * index, lj
    if mode == NONDECIMATED:
        return index - centre_shift(filter_length, level), lj
    raise ModeMismatch(f"unknown transform mode {mode!r}")
