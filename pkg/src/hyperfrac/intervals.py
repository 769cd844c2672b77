"""Compact subsets of the line as finite unions of closed rational intervals.

A ``CompactCover`` is the workhorse value of the package: a normalized,
nonempty union of closed intervals with exact Fraction endpoints, plus a
``resolution`` certificate -- an upper bound on the Hausdorff distance between
the cover and the ideal (possibly infinite-depth) set it stands for.  A
resolution of 0 means the cover *is* the set.

All operations are pure; covers are immutable after construction.
"""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import ParseError
from .ratio import format_rational, parse_rational

ZERO = Fraction(0)
ONE = Fraction(1)


class RationalInterval:
    """Closed interval [lo, hi] with exact rational endpoints; lo <= hi."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        lo = Fraction(lo)
        hi = Fraction(hi)
        if lo > hi:
            raise ValueError(f"interval with lo > hi: [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"

    def __eq__(self, other):
        return isinstance(other, RationalInterval) and self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains_point(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains(self, other: "RationalInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def translate(self, shift) -> "RationalInterval":
        shift = Fraction(shift)
        return RationalInterval(self.lo + shift, self.hi + shift)

    def affine(self, scale, shift) -> "RationalInterval":
        scale = Fraction(scale)
        shift = Fraction(shift)
        a = scale * self.lo + shift
        b = scale * self.hi + shift
        return RationalInterval(min(a, b), max(a, b))


def _normalize(intervals: Iterable[RationalInterval]) -> Tuple[RationalInterval, ...]:
    items = sorted(intervals, key=lambda iv: (iv.lo, iv.hi))
    if not items:
        raise ValueError("a compact cover must be nonempty")
    merged: List[RationalInterval] = [items[0]]
    for iv in items[1:]:
        last = merged[-1]
        if iv.lo <= last.hi:  # overlapping or touching closed intervals merge
            if iv.hi > last.hi:
                merged[-1] = RationalInterval(last.lo, iv.hi)
        else:
            merged.append(iv)
    return tuple(merged)


class CompactCover:
    """Normalized union of closed rational intervals with a resolution bound."""

    __slots__ = ("intervals", "resolution")

    def __init__(self, intervals: Iterable[RationalInterval], resolution=ZERO):
        resolution = Fraction(resolution)
        if resolution < 0:
            raise ValueError("resolution must be nonnegative")
        self.intervals = _normalize(intervals)
        self.resolution = resolution

    def __repr__(self):
        shown = ", ".join(repr(iv) for iv in self.intervals[:4])
        more = "" if len(self.intervals) <= 4 else f", ... ({len(self.intervals)} total)"
        return f"CompactCover({shown}{more}; res={self.resolution})"

    def __eq__(self, other):
        return (
            isinstance(other, CompactCover)
            and self.intervals == other.intervals
            and self.resolution == other.resolution
        )

    def __hash__(self):
        return hash((self.intervals, self.resolution))

    @classmethod
    def from_pairs(cls, pairs: Sequence[Tuple], resolution=ZERO) -> "CompactCover":
        return cls([RationalInterval(lo, hi) for lo, hi in pairs], resolution)

    @classmethod
    def point(cls, value, resolution=ZERO) -> "CompactCover":
        return cls([RationalInterval(value, value)], resolution)

    @property
    def support_min(self) -> Fraction:
        return self.intervals[0].lo

    @property
    def support_max(self) -> Fraction:
        return self.intervals[-1].hi

    @property
    def midpoint(self) -> Fraction:
        return (self.support_min + self.support_max) / 2

    @property
    def total_length(self) -> Fraction:
        return sum((iv.length for iv in self.intervals), ZERO)

    def with_resolution(self, resolution) -> "CompactCover":
        return CompactCover(self.intervals, resolution)

    def intervals_equal(self, other: "CompactCover") -> bool:
        return self.intervals == other.intervals

    def translate(self, shift) -> "CompactCover":
        shift = Fraction(shift)
        return CompactCover([iv.translate(shift) for iv in self.intervals], self.resolution)

    def affine(self, scale, shift=ZERO) -> "CompactCover":
        """Image under y -> scale*y + shift; scale must be nonzero.

        A zero scale would collapse the cover to a point; use
        ``CompactCover.point`` for that instead.
        """
        scale = Fraction(scale)
        shift = Fraction(shift)
        if scale == 0:
            raise ValueError("affine image with zero scale collapses the cover; use point()")
        return CompactCover(
            [iv.affine(scale, shift) for iv in self.intervals],
            abs(scale) * self.resolution,
        )

    def recenter(self, target_mid) -> "CompactCover":
        """Translate so that (min + max) / 2 equals target_mid."""
        return self.translate(Fraction(target_mid) - self.midpoint)

    def contains_cover(self, inner: "CompactCover") -> bool:
        """True if every interval of `inner` sits inside some interval of self."""
        los = [iv.lo for iv in self.intervals]
        for iv in inner.intervals:
            idx = bisect_right(los, iv.lo) - 1
            if idx < 0 or not self.intervals[idx].contains(iv):
                return False
        return True

    def distance_to_point(self, x) -> Fraction:
        """Exact distance from x to the union."""
        x = Fraction(x)
        los = [iv.lo for iv in self.intervals]
        idx = bisect_right(los, x) - 1
        best = None
        if idx >= 0:
            iv = self.intervals[idx]
            if x <= iv.hi:
                return ZERO
            best = x - iv.hi
        if idx + 1 < len(self.intervals):
            cand = self.intervals[idx + 1].lo - x
            if best is None or cand < best:
                best = cand
        return best


def union(a: CompactCover, b: CompactCover) -> CompactCover:
    """Normalized union; resolution is the max of the inputs."""
    return CompactCover(list(a.intervals) + list(b.intervals), max(a.resolution, b.resolution))


def union_many(covers: Sequence[CompactCover]) -> CompactCover:
    if not covers:
        raise ValueError("union_many of no covers")
    intervals: List[RationalInterval] = []
    res = ZERO
    for c in covers:
        intervals.extend(c.intervals)
        res = max(res, c.resolution)
    return CompactCover(intervals, res)


# Endpoints at deep section levels carry tens of thousands of digits, so the
# distance computation runs a two-tier scheme: integer dyadic keys
# floor(x * 2^KEY_SHIFT) prune candidates that provably cannot beat the
# running maximum (|e - p| < (|key diff| + 1) / 2^shift), and only the few
# competitive candidates fall through to exact rational arithmetic.  The
# result is exact; the keys never decide anything on their own.

KEY_SHIFT = 96
KEY_SLACK = 4  # key(v) <= v * 2^KEY_SHIFT < key(v) + KEY_SLACK
_KEY_TOP_BITS = 256


class _EndpointIndex:
    __slots__ = ("los", "his", "lo_keys", "hi_keys")

    def __init__(self, cover: CompactCover):
        self.los = [iv.lo for iv in cover.intervals]
        self.his = [iv.hi for iv in cover.intervals]
        self.lo_keys = [_key(v) for v in self.los]
        self.hi_keys = [_key(v) for v in self.his]


def _key(value) -> int:
    """Integer under-approximation of value * 2^KEY_SHIFT, off by < KEY_SLACK.

    Huge components are truncated to their top bits before dividing; the
    directed rounding (numerator down, denominator up) keeps the key an
    under-approximation and the 256-bit headroom keeps the error below one
    extra unit for the magnitudes this package produces.
    """
    num = value.numerator
    den = value.denominator
    t = den.bit_length() - _KEY_TOP_BITS
    if t <= 0 or num < 0:
        return int((num << KEY_SHIFT) // den)
    return int(((num >> t) << KEY_SHIFT) // ((den >> t) + 1))


def _exact_point_distance(index: _EndpointIndex, x):
    idx = bisect_right(index.los, x) - 1
    best = None
    if idx >= 0:
        if x <= index.his[idx]:
            return ZERO
        best = x - index.his[idx]
    if idx + 1 < len(index.los):
        cand = index.los[idx + 1] - x
        if best is None or cand < best:
            best = cand
    return best


def _directed_hausdorff(a: _EndpointIndex, b: _EndpointIndex):
    """max over points of a of the distance to b, exact.

    The distance function x -> d(x, b) is piecewise linear; restricted to an
    interval of `a` its maximum sits at an endpoint or at the midpoint of a
    gap of `b`, so finitely many exact candidates suffice.
    """
    best = ZERO
    best_key = 0  # floor(best * 2^KEY_SHIFT)

    def consider(x, kx):
        nonlocal best, best_key
        idx = bisect_right(b.lo_keys, kx) - 1
        if (
            idx >= 0
            and b.lo_keys[idx] + KEY_SLACK <= kx
            and kx + KEY_SLACK <= b.hi_keys[idx]
        ):
            return  # certified inside a b-interval: distance 0
        ub = None  # key-space upper bound on the distance, scaled by 2^shift
        if idx >= 0:
            ub = abs(kx - b.hi_keys[idx]) + KEY_SLACK
        if idx + 1 < len(b.lo_keys):
            cand = abs(b.lo_keys[idx + 1] - kx) + KEY_SLACK
            ub = cand if ub is None else min(ub, cand)
        if ub is not None and ub <= best_key:
            return  # provably below the running maximum
        d = _exact_point_distance(b, x)
        if d > best:
            best = d
            best_key = _key(d)

    # reversed: distortion displacements grow to the right, so the maximum is
    # usually found early and almost everything else prunes
    for x, kx in zip(reversed(a.los), reversed(a.lo_keys)):
        consider(x, kx)
    for x, kx in zip(reversed(a.his), reversed(a.hi_keys)):
        consider(x, kx)

    for i in range(len(b.los) - 1):
        gap_ub = (b.lo_keys[i + 1] - b.hi_keys[i] + KEY_SLACK) // 2 + 1
        if gap_ub <= best_key:
            continue
        half_gap = (b.los[i + 1] - b.his[i]) / 2
        if half_gap <= best:
            continue
        mid = (b.his[i] + b.los[i + 1]) / 2
        if _exact_point_distance(a, mid) == 0:  # the gap midpoint belongs to a
            best = half_gap
            best_key = _key(best)
    return best


def hausdorff_distance(a: CompactCover, b: CompactCover) -> Fraction:
    """Exact Hausdorff distance between two finite interval unions."""
    if a.intervals == b.intervals:
        return ZERO
    a_index = _EndpointIndex(a)
    b_index = _EndpointIndex(b)
    return max(_directed_hausdorff(a_index, b_index), _directed_hausdorff(b_index, a_index))


# --- textual set-file format -------------------------------------------------
#
#   compactcover v1 resolution=<p>/<q> [embed_dim=<d>]
#   <p>/<q> <p>/<q>
#   ...
#
# Rationals are printed in lowest terms with a mandatory /1 for integers, so
# round-trips are bit-exact.

HEADER_PREFIX = "compactcover v1"


def cover_to_text(cover: CompactCover, embed_dim: Optional[int] = None) -> str:
    header = f"{HEADER_PREFIX} resolution={format_rational(cover.resolution)}"
    if embed_dim is not None:
        header += f" embed_dim={embed_dim}"
    lines = [header]
    for iv in cover.intervals:
        lines.append(f"{format_rational(iv.lo)} {format_rational(iv.hi)}")
    return "\n".join(lines) + "\n"


def cover_from_text(text: str) -> Tuple[CompactCover, Optional[int]]:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ParseError("empty set file")
    header = lines[0]
    if not header.startswith(HEADER_PREFIX):
        raise ParseError(f"bad set-file header: {header!r}")
    resolution = None
    embed_dim = None
    for token in header[len(HEADER_PREFIX):].split():
        if token.startswith("resolution="):
            resolution = parse_rational(token[len("resolution="):], require_slash=True)
        elif token.startswith("embed_dim="):
            try:
                embed_dim = int(token[len("embed_dim="):])
            except ValueError as exc:
                raise ParseError(f"bad embed_dim in header: {header!r}") from exc
            if embed_dim < 1:
                raise ParseError("embed_dim must be >= 1")
        else:
            raise ParseError(f"unknown header token {token!r}")
    if resolution is None:
        raise ParseError("set-file header is missing resolution=")
    intervals = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected two rationals, got {line!r}")
        lo = parse_rational(parts[0], require_slash=True)
        hi = parse_rational(parts[1], require_slash=True)
        if lo > hi:
            raise ParseError(f"line {lineno}: interval with lo > hi")
        intervals.append(RationalInterval(lo, hi))
    if not intervals:
        raise ParseError("set file with no intervals")
    return CompactCover(intervals, resolution), embed_dim
