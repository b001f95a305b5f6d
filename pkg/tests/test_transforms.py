"""Forward/inverse transforms, extensions, and coefficient alignment."""

import numpy as np
import pytest

from wavetrend.errors import NonDyadicLength, ScaleTooDeep
from wavetrend.filters import EXTREMAL_PHASE, LEAST_ASYMMETRIC, wavelet_filter
from wavetrend.transforms import (
    DECIMATED,
    NONDECIMATED,
    SYMMETRIC_TRIPLE,
    TREND_REFLECT,
    centre_shift,
    detail_support,
    dwt_forward,
    dwt_inverse,
    extend_series,
    ndwt_average_basis,
    ndwt_forward,
    next_pow2,
)

EP4 = wavelet_filter(EXTREMAL_PHASE, 4)


def test_dwt_perfect_reconstruction():
    rng = np.random.default_rng(0)
    for number, family in ((1, EXTREMAL_PHASE), (4, EXTREMAL_PHASE), (8, LEAST_ASYMMETRIC)):
        filt = wavelet_filter(family, number)
        x = rng.standard_normal(128)
        pyr = dwt_forward(x, filt, 5)
        assert np.allclose(dwt_inverse(pyr), x, atol=1e-10)


def test_dwt_coefficient_counts():
    x = np.zeros(64)
    pyr = dwt_forward(x, EP4, 3)
    assert [pyr.detail(j).size for j in (1, 2, 3)] == [32, 16, 8]
    assert pyr.scaling.size == 8


def test_dwt_requires_dyadic():
    with pytest.raises(NonDyadicLength):
        dwt_forward(np.zeros(100), EP4, 2)


def test_depth_guard():
    with pytest.raises(ScaleTooDeep):
        ndwt_forward(np.zeros(64), EP4, 7)
    with pytest.raises(ScaleTooDeep):
        dwt_forward(np.zeros(64), EP4, 7)


def test_ndwt_inverse_any_length():
    rng = np.random.default_rng(1)
    for n in (64, 100, 257):
        x = rng.standard_normal(n)
        pyr = ndwt_forward(x, EP4, 4)
        assert np.allclose(ndwt_average_basis(pyr), x, atol=1e-10)


def test_ndwt_rows_keep_length():
    pyr = ndwt_forward(np.zeros(96), EP4, 3)
    assert all(pyr.detail(j).size == 96 for j in (1, 2, 3))
    assert pyr.scaling.size == 96


def test_ndwt_alignment_is_shift_equivariant():
    # centred coefficients: circularly shifting the input shifts every row
    rng = np.random.default_rng(2)
    x = rng.standard_normal(128)
    shift = 17
    a = ndwt_forward(x, EP4, 3)
    b = ndwt_forward(np.roll(x, shift), EP4, 3)
    for j in (1, 2, 3):
        assert np.allclose(np.roll(a.detail(j), shift), b.detail(j), atol=1e-12)


@pytest.mark.parametrize("number,family", [(1, EXTREMAL_PHASE), (4, EXTREMAL_PHASE),
                                           (8, LEAST_ASYMMETRIC)])
def test_ndwt_matches_dwt_subsample(number, family):
    # undo the centring roll and the decimated coefficients are exactly the
    # 2^j-strided samples of the nondecimated row
    filt = wavelet_filter(family, number)
    rng = np.random.default_rng(3)
    x = rng.standard_normal(64)
    dec = dwt_forward(x, filt, 3)
    nd = ndwt_forward(x, filt, 3)
    for j in (1, 2, 3):
        aligned = np.roll(nd.detail(j), -centre_shift(filt.length, j))[0 :: 2**j]
        assert np.array_equal(aligned, dec.detail(j))


def test_extend_trend_reflect():
    x = np.arange(10.0)
    ext, desc = extend_series(x, TREND_REFLECT)
    assert desc.extended_length == next_pow2(20) == ext.size
    assert np.allclose(ext[desc.window()], x, atol=0)
    # odd reflection continues the local slope across the seam
    assert ext[desc.offset - 1] == pytest.approx(2 * x[0] - x[1])
    assert ext[desc.offset + 10] == pytest.approx(2 * x[9] - x[8])


def test_extend_symmetric_triple():
    x = np.arange(12.0)
    ext, desc = extend_series(x, SYMMETRIC_TRIPLE)
    assert desc.extended_length == next_pow2(36)
    assert np.allclose(ext[desc.window()], x, atol=0)
    assert ext[desc.offset - 1] == x[0]  # mirrored copy sits to the left


def test_detail_support_shapes():
    start, length = detail_support(DECIMATED, 8, 2, 3)
    assert (start, length) == (12, 22)
    start, length = detail_support(NONDECIMATED, 2, 1, 5)
    assert length == 2
    assert start == 5 - centre_shift(2, 1)
