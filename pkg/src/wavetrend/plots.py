"""Static SVG renderings of simulation and estimation results.

The figures are hand-assembled SVG strings rather than matplotlib output
so that identical inputs produce identical bytes: no font metrics, no
backend or version drift, no timestamps.  Layout is deliberately plain.
Every coordinate goes through one fixed-precision formatter; callers that
need reproducible files only have to hold inputs fixed.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch

GLOBAL = "global"
BY_LEVEL = "by-level"

_WIDTH = 840
_LEFT, _RIGHT, _TOP, _BOTTOM = 64, 18, 28, 40
_PANEL_GAP = 10
_FONT = 'font-family="Helvetica, Arial, sans-serif"'

_DATA_STROKE = "#8a8f98"
_TREND_STROKE = "#1f5fbf"
_BAND_FILL = "#c7d7f2"
_NEEDLE_STROKE = "#1f5fbf"
_AXIS_STROKE = "#222222"
_ZERO_STROKE = "#bbbbbb"


def _px(v: float) -> str:
    return f"{float(v):.2f}"


def _num(v: float) -> str:
    return f"{float(v):.4g}"


class _Scale:
    """Affine map from data values to pixel coordinates."""

    def __init__(self, lo: float, hi: float, pix_lo: float, pix_hi: float):
        if hi <= lo:
            hi = lo + 1.0
        self.lo, self.hi = lo, hi
        self.pix_lo, self.pix_hi = pix_lo, pix_hi

    def __call__(self, v):
        frac = (np.asarray(v, dtype=np.float64) - self.lo) / (self.hi - self.lo)
        return self.pix_lo + frac * (self.pix_hi - self.pix_lo)

    def ticks(self, count: int = 5) -> np.ndarray:
        return np.linspace(self.lo, self.hi, count)


def _padded_range(*arrays: np.ndarray) -> tuple[float, float]:
    stacked = np.concatenate([np.asarray(a, dtype=np.float64).ravel() for a in arrays])
    stacked = stacked[np.isfinite(stacked)]
    if stacked.size == 0:
        return -1.0, 1.0
    lo, hi = float(stacked.min()), float(stacked.max())
    pad = 0.05 * (hi - lo) if hi > lo else 1.0
    return lo - pad, hi + pad


def _polyline(xs, ys, stroke: str, width: float) -> str:
    pts = " ".join(f"{_px(x)},{_px(y)}" for x, y in zip(xs, ys))
    return f'<polyline points="{pts}" fill="none" stroke="{stroke}" stroke-width="{width}"/>'


def _text(x: float, y: float, s: str, anchor: str = "middle", size: int = 11) -> str:
    return (
        f'<text x="{_px(x)}" y="{_px(y)}" text-anchor="{anchor}" '
        f'font-size="{size}" {_FONT}>{s}</text>'
    )


def _frame(x0: float, y0: float, x1: float, y1: float) -> str:
    return (
        f'<rect x="{_px(x0)}" y="{_px(y0)}" width="{_px(x1 - x0)}" '
        f'height="{_px(y1 - y0)}" fill="none" stroke="{_AXIS_STROKE}" stroke-width="1"/>'
    )


def _x_axis(sx: _Scale, y: float) -> list[str]:
    out = []
    for v in sx.ticks():
        px = float(sx(v))
        out.append(
            f'<line x1="{_px(px)}" y1="{_px(y)}" x2="{_px(px)}" y2="{_px(y + 4)}" '
            f'stroke="{_AXIS_STROKE}" stroke-width="1"/>'
        )
        out.append(_text(px, y + 16, _num(v)))
    return out


def _y_axis(sy: _Scale, x: float) -> list[str]:
    out = []
    for v in sy.ticks():
        py = float(sy(v))
        out.append(
            f'<line x1="{_px(x - 4)}" y1="{_px(py)}" x2="{_px(x)}" y2="{_px(py)}" '
            f'stroke="{_AXIS_STROKE}" stroke-width="1"/>'
        )
        out.append(_text(x - 7, py + 3.5, _num(v), anchor="end", size=10))
    return out


def _document(height: int, body: list[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{height}" '
        f'viewBox="0 0 {_WIDTH} {height}">'
    )
    background = f'<rect x="0" y="0" width="{_WIDTH}" height="{height}" fill="#ffffff"/>'
    return "\n".join([head, background, *body, "</svg>"]) + "\n"


def trend_figure(
    data: np.ndarray,
    trend: np.ndarray,
    ci_lo: np.ndarray | None = None,
    ci_hi: np.ndarray | None = None,
    title: str = "trend estimate",
) -> str:
    """Data line, fitted trend, and a shaded band when an interval exists."""
    data = np.asarray(data, dtype=np.float64)
    trend = np.asarray(trend, dtype=np.float64)
    if data.shape != trend.shape or data.ndim != 1:
        raise DimensionMismatch("data and trend must be equal-length vectors")
    n = data.size
    height = 420
    x0, x1 = _LEFT, _WIDTH - _RIGHT
    y0, y1 = _TOP, height - _BOTTOM
    sx = _Scale(0.0, float(n - 1), x0, x1)
    band = (ci_lo is not None and ci_hi is not None
            and np.asarray(ci_lo).size == n and np.asarray(ci_hi).size == n)
    ranged = (data, trend, ci_lo, ci_hi) if band else (data, trend)
    sy = _Scale(*_padded_range(*ranged), pix_lo=y1, pix_hi=y0)

    t = np.arange(n)
    body = [_text(_WIDTH / 2, 17, title, size=13)]
    if band:
        lo = np.asarray(ci_lo, dtype=np.float64)
        hi = np.asarray(ci_hi, dtype=np.float64)
        forward = " ".join(f"L {_px(v)} {_px(w)}" for v, w in zip(sx(t), sy(lo)))
        backward = " ".join(f"L {_px(v)} {_px(w)}" for v, w in zip(sx(t)[::-1], sy(hi)[::-1]))
        path = "M" + forward[1:] + " " + backward + " Z"
        body.append(f'<path d="{path}" fill="{_BAND_FILL}" stroke="none"/>')
    body.append(_polyline(sx(t), sy(data), _DATA_STROKE, 1.0))
    body.append(_polyline(sx(t), sy(trend), _TREND_STROKE, 2.0))
    body.append(_frame(x0, y0, x1, y1))
    body.extend(_x_axis(sx, y1))
    body.extend(_y_axis(sy, x0))
    body.append(_text((x0 + x1) / 2, height - 8, "time"))
    return _document(height, body)


def spectrum_figure(S: np.ndarray, scaling: str = GLOBAL, title: str = "spectrum estimate") -> str:
    """One stacked panel per scale, finest at the bottom.

    scaling="global" shares one vertical range across panels so power is
    comparable between scales; "by-level" stretches each panel to its own
    range so weak scales stay readable.
    """
    S = np.asarray(S, dtype=np.float64)
    if S.ndim != 2:
        raise DimensionMismatch("expected a levels x n spectrum matrix")
    if scaling not in (GLOBAL, BY_LEVEL):
        raise DimensionMismatch(f"scaling must be {GLOBAL!r} or {BY_LEVEL!r}")
    levels, n = S.shape
    panel_h = 62
    height = _TOP + levels * panel_h + (levels - 1) * _PANEL_GAP + _BOTTOM
    x0, x1 = _LEFT, _WIDTH - _RIGHT
    sx = _Scale(0.0, float(n - 1), x0, x1)
    t = np.arange(n)
    global_lo, global_hi = _padded_range(S, np.zeros(1))

    body = [_text(_WIDTH / 2, 17, f"{title} ({scaling} scaling)", size=13)]
    for j in range(levels, 0, -1):
        row = S[j - 1]
        top = _TOP + (levels - j) * (panel_h + _PANEL_GAP)
        bottom = top + panel_h
        if scaling == GLOBAL:
            lo, hi = global_lo, global_hi
        else:
            lo, hi = _padded_range(row, np.zeros(1))
        sy = _Scale(lo, hi, bottom, top)
        zero_y = float(sy(0.0))
        body.append(
            f'<line x1="{_px(x0)}" y1="{_px(zero_y)}" x2="{_px(x1)}" y2="{_px(zero_y)}" '
            f'stroke="{_ZERO_STROKE}" stroke-width="0.75"/>'
        )
        body.append(_polyline(sx(t), sy(row), _TREND_STROKE, 1.2))
        body.append(_frame(x0, top, x1, bottom))
        body.append(_text(x0 - 8, (top + bottom) / 2 + 4, f"scale {j}", anchor="end", size=10))
        body.append(_text(x1 - 2, top + 11, _num(hi), anchor="end", size=8))
    last_bottom = _TOP + levels * panel_h + (levels - 1) * _PANEL_GAP
    body.extend(_x_axis(sx, last_bottom))
    body.append(_text((x0 + x1) / 2, height - 8, "time"))
    return _document(height, body)


def lacf_figure(lacv: np.ndarray, times: list[int], title: str = "local autocorrelation") -> str:
    """Needle plots of the autocorrelation at the requested time rows."""
    lacv = np.asarray(lacv, dtype=np.float64)
    if lacv.ndim != 2:
        raise DimensionMismatch("expected a time x lag autocovariance matrix")
    n, lags = lacv.shape
    if not times:
        raise DimensionMismatch("need at least one time index")
    for t in times:
        if not 0 <= int(t) < n:
            raise DimensionMismatch(f"time index {t} outside 0..{n - 1}")
    panel_h = 120
    height = _TOP + len(times) * panel_h + (len(times) - 1) * _PANEL_GAP + _BOTTOM
    x0, x1 = _LEFT, _WIDTH - _RIGHT
    sx = _Scale(0.0, float(lags - 1), x0, x1)

    body = [_text(_WIDTH / 2, 17, title, size=13)]
    for i, t in enumerate(times):
        top = _TOP + i * (panel_h + _PANEL_GAP)
        bottom = top + panel_h
        row = lacv[int(t)]
        acf = row / row[0] if row[0] > 0 else np.full(lags, np.nan)
        finite = acf[np.isfinite(acf)]
        lo = min(-0.2, float(finite.min()) if finite.size else -1.0) - 0.05
        hi = max(1.0, float(finite.max()) if finite.size else 1.0) + 0.05
        sy = _Scale(lo, hi, bottom, top)
        zero_y = float(sy(0.0))
        body.append(
            f'<line x1="{_px(x0)}" y1="{_px(zero_y)}" x2="{_px(x1)}" y2="{_px(zero_y)}" '
            f'stroke="{_ZERO_STROKE}" stroke-width="0.75"/>'
        )
        for lag in range(lags):
            if not np.isfinite(acf[lag]):
                continue
            px = float(sx(lag))
            body.append(
                f'<line x1="{_px(px)}" y1="{_px(zero_y)}" x2="{_px(px)}" '
                f'y2="{_px(float(sy(acf[lag])))}" stroke="{_NEEDLE_STROKE}" stroke-width="1.5"/>'
            )
        body.append(_frame(x0, top, x1, bottom))
        body.append(_text(x0 - 8, (top + bottom) / 2 + 4, f"t = {int(t)}", anchor="end", size=10))
        body.extend(_y_axis(_Scale(lo, hi, bottom, top), x0) if i == 0 else [])
    body.extend(_x_axis(sx, _TOP + len(times) * panel_h + (len(times) - 1) * _PANEL_GAP))
    body.append(_text((x0 + x1) / 2, height - 8, "lag"))
    return _document(height, body)
