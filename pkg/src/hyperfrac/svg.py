"""Deterministic SVG rendering of interval covers.

One rectangle per interval.  Coordinates are computed in exact rationals and
only converted to decimals (12 significant digits, half-up, integer
arithmetic) when written out, so identical covers produce byte-identical
files on every platform.  The decimal conversion is presentation-only; the
persisted set-file format stays rational-exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .intervals import CompactCover
from .ratio import decimal_approx

SIGNIFICANT_DIGITS = 12
DEFAULT_WIDTH = 800
DEFAULT_HEIGHT = 40
FILL = "#1f2937"
POINT_MARKER_WIDTH = Fraction(1, 2)  # px used for singleton intervals


def render_cover_svg(
    cover: CompactCover,
    height: int = DEFAULT_HEIGHT,
    embed_dim: Optional[int] = None,
    width: int = DEFAULT_WIDTH,
) -> str:
    if height < 1 or width < 1:
        raise ValueError("width and height must be positive")
    view_lo = min(Fraction(0), cover.support_min)
    view_hi = max(Fraction(1), cover.support_max)
    span = view_hi - view_lo

    def px(value: Fraction) -> str:
        return decimal_approx((value - view_lo) / span * width, SIGNIFICANT_DIGITS)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f"<!-- interval-cover render; coordinates rounded to {SIGNIFICANT_DIGITS}"
        " significant digits (presentation only) -->",
    ]
    if embed_dim is not None:
        lines.append(
            f"<!-- embed_dim={embed_dim}: the set lives on the first axis of"
            " the cube, zero on the others -->"
        )
    lines.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}"'
        f' viewBox="0 0 {width} {height}">'
    )
    for iv in cover.intervals:
        x = px(iv.lo)
        w_exact = iv.length / span * width
        if w_exact == 0:
            w = decimal_approx(POINT_MARKER_WIDTH, SIGNIFICANT_DIGITS)
        else:
            w = decimal_approx(w_exact, SIGNIFICANT_DIGITS)
        lines.append(f'<rect x="{x}" y="0" width="{w}" height="{height}" fill="{FILL}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
