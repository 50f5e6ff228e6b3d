"""Hand-rolled SVG 1.1 box plot of RR interval lengths.

Box from Q1 to Q3 with a median line, whiskers drawn at the outlier
fences, and one dot per distinct outlier value beyond them.  Output is
deterministic for identical inputs.
"""

from __future__ import annotations

import numpy as np

from .beats import OutlierFences, percentile
from .errors import EmptyInput

_WIDTH, _HEIGHT = 640, 220
_MARGIN = 50
_BOX_HALF = 40
_MID_Y = 110


def _fmt(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


def rr_boxplot_svg(lengths, title: str = "RR interval lengths (samples)") -> str:
    """Render the pooled RR length distribution as an SVG document."""
    arr = np.asarray(lengths, dtype=np.float64)
    if arr.size == 0:
        raise EmptyInput("boxplot of an empty length list")

    fences = OutlierFences(q1=percentile(arr, 25), q3=percentile(arr, 75))
    median = percentile(arr, 50)
    lo = min(float(arr.min()), fences.lower_fence)
    hi = max(float(arr.max()), fences.upper_fence)
    span = hi - lo or 1.0

    def sx(value: float) -> float:
        return _MARGIN + (value - lo) / span * (_WIDTH - 2 * _MARGIN)

    outliers = sorted(
        {float(v) for v in arr[(arr > fences.upper_fence) | (arr < fences.lower_fence)]}
    )

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_WIDTH}" height="{_HEIGHT}" viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f"<title>{title}</title>",
        f'<rect x="0" y="0" width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        # whiskers at the fences
        f'<line class="whisker" x1="{_fmt(sx(fences.lower_fence))}" y1="{_MID_Y - _BOX_HALF}" '
        f'x2="{_fmt(sx(fences.lower_fence))}" y2="{_MID_Y + _BOX_HALF}" stroke="black"/>',
        f'<line class="whisker" x1="{_fmt(sx(fences.upper_fence))}" y1="{_MID_Y - _BOX_HALF}" '
        f'x2="{_fmt(sx(fences.upper_fence))}" y2="{_MID_Y + _BOX_HALF}" stroke="black"/>',
        f'<line class="stem" x1="{_fmt(sx(fences.lower_fence))}" y1="{_MID_Y}" '
        f'x2="{_fmt(sx(fences.q1))}" y2="{_MID_Y}" stroke="black"/>',
        f'<line class="stem" x1="{_fmt(sx(fences.q3))}" y1="{_MID_Y}" '
        f'x2="{_fmt(sx(fences.upper_fence))}" y2="{_MID_Y}" stroke="black"/>',
        # the box and the median
        f'<rect class="box" x="{_fmt(sx(fences.q1))}" y="{_MID_Y - _BOX_HALF}" '
        f'width="{_fmt(sx(fences.q3) - sx(fences.q1))}" height="{2 * _BOX_HALF}" '
        f'fill="#cfe2f3" stroke="black"/>',
        f'<line class="median" x1="{_fmt(sx(median))}" y1="{_MID_Y - _BOX_HALF}" '
        f'x2="{_fmt(sx(median))}" y2="{_MID_Y + _BOX_HALF}" stroke="black" stroke-width="2"/>',
    ]
    for value in outliers:
        parts.append(
            f'<circle class="outlier" cx="{_fmt(sx(value))}" cy="{_MID_Y}" '
            f'r="3" fill="none" stroke="black"/>'
        )
    for value, label in ((fences.lower_fence, "lower"), (fences.upper_fence, "upper")):
        parts.append(
            f'<text x="{_fmt(sx(value))}" y="{_MID_Y + _BOX_HALF + 20}" '
            f'font-size="11" text-anchor="middle">{label} {_fmt(value)}</text>'
        )
    parts.append(
        f'<text x="{_WIDTH // 2}" y="24" font-size="14" text-anchor="middle">{title}</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
