"""Canned demonstration processes."""

import numpy as np
import pytest

from wavetrend.errors import DimensionMismatch
from wavetrend.scenarios import X1, X2, scenario, scenario_names


def test_names():
    assert scenario_names() == ("x1", "x2")


def test_x1_shape_and_content():
    sc = scenario(X1)
    n = sc.length
    assert n == 512
    assert sc.filter_number == 4 and sc.family == "extremal_phase"
    z = (np.arange(n) + 0.5) / n
    expected = 3.0 * (32.0 * z**3 - 48.0 * z**2 + 22.0 * z - 3.0)
    assert np.allclose(sc.trend, expected, atol=1e-12)
    assert sc.spectrum.shape == (9, n)
    active = {j for j in range(9) if np.any(sc.spectrum[j] != 0.0)}
    assert active == {1, 3}
    # scale 2 power is a downward parabola peaking inside (0, 1), scale 4 flat
    assert np.all(sc.spectrum[3] == 2.0)
    row = sc.spectrum[1]
    assert row[0] == pytest.approx(2.0, abs=0.02)
    assert row.max() == pytest.approx(5.0, abs=0.01)
    assert np.argmax(row) == pytest.approx(n // 2, abs=2)


def test_x2_shape_and_content():
    sc = scenario(X2)
    n = sc.length
    assert n == 1024
    assert sc.spectrum.shape == (10, n)
    active = {j for j in range(10) if np.any(sc.spectrum[j] != 0.0)}
    assert active == {0, 2, 4}
    # scale 1 ramps 2 -> 10, scale 3 carries a bump peaking at 6, scale 5
    # oscillates between 2 and 6
    assert sc.spectrum[0][0] == 2.0 and sc.spectrum[0][-1] == 10.0
    assert sc.spectrum[2].max() == pytest.approx(6.0)
    assert 300 <= np.argmax(sc.spectrum[2]) <= 500
    assert sc.spectrum[2][0] == 1.0 and sc.spectrum[2][-1] == 1.0
    assert sc.spectrum[4].min() == pytest.approx(2.0, abs=1e-9)
    assert sc.spectrum[4].max() == pytest.approx(6.0, abs=1e-4)
    # broken-linear component peaks where the first ramp ends
    index = np.linspace(0.0, 1.0, n)
    detrended = sc.trend - 5.0 * np.sin(np.pi * 6.0 * index)
    assert np.argmax(detrended) == 299
    assert detrended[299] == pytest.approx(10.0)
    assert detrended[-1] == pytest.approx(-4.0)


def test_simulate_deterministic():
    sc = scenario(X1)
    a = sc.simulate(seed=5)
    b = sc.simulate(seed=5)
    c = sc.simulate(seed=6)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert a.size == sc.length


def test_unknown_name_lists_options():
    with pytest.raises(DimensionMismatch, match="x1, x2"):
        scenario("x9")
