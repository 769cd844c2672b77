"""Self-maps of the unit interval, contraction certificates, and attractors.

Three map kinds are supported: exact affine maps, continuous piecewise-affine
maps given by breakpoint/value lists, and a registry of parametric families
whose members are genuinely weak-but-not-strict contractions (a piecewise
affine map with all slopes below 1 is automatically strict, so the weak
demonstrations need curved families).  Registered families evaluate exactly
on rationals and carry their contraction facts as code: a closed-form slope
supremum and a chord argument for the weak certificate.

``attractor_solve`` iterates the union-of-images operator from [0, 1].  For
strict systems it stops when the a-priori geometric error bound
L^n/(1-L) * d(A0, A1) reaches the tolerance and returns that bound as an
exact certificate; for weak systems no rate exists, so it stops on a Cauchy
condition and flags the bound as heuristic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple, Union

from .addressing import BitStream, all_words
from .errors import DepthError, IterationCapExceeded, ParseError
from .intervals import CompactCover, RationalInterval, hausdorff_distance, union_many
from .ratio import format_rational, parse_rational
from .sections import SectionPlan, distorted_point, pow_fraction

ZERO = Fraction(0)
ONE = Fraction(1)

DEFAULT_ITERATION_CAP = 10 ** 6

CERTIFIED_WEAK = "certified-weak"
CERTIFIED_NOT_WEAK = "certified-not-weak"
INCONCLUSIVE = "inconclusive"


# --- map kinds -----------------------------------------------------------------

@dataclass(frozen=True)
class AffineMap:
    slope: Fraction
    offset: Fraction

    def __call__(self, x) -> Fraction:
        return self.slope * Fraction(x) + self.offset

    @property
    def kind(self) -> str:
        return "affine"


class PiecewiseAffineMap:
    """Continuous piecewise-affine map from breakpoints xs to values ys."""

    __slots__ = ("xs", "ys")

    def __init__(self, xs: Sequence, ys: Sequence):
        xs = tuple(Fraction(x) for x in xs)
        ys = tuple(Fraction(y) for y in ys)
        if len(xs) != len(ys) or len(xs) < 2:
            raise ValueError("need matching breakpoint/value lists of length >= 2")
        if any(a >= b for a, b in zip(xs, xs[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        self.xs = xs
        self.ys = ys

    @property
    def kind(self) -> str:
        return "piecewise_affine"

    @property
    def domain(self) -> Tuple[Fraction, Fraction]:
        return self.xs[0], self.xs[-1]

    def segments(self) -> List[Tuple[Fraction, Fraction, Fraction]]:
        """(x_left, x_right, slope) for every affine piece."""
        out = []
        for (x0, y0), (x1, y1) in zip(zip(self.xs, self.ys), zip(self.xs[1:], self.ys[1:])):
            out.append((x0, x1, (y1 - y0) / (x1 - x0)))
        return out

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        if not self.xs[0] <= x <= self.xs[-1]:
            raise ValueError(f"{x} outside domain [{self.xs[0]}, {self.xs[-1]}]")
        from bisect import bisect_right

        idx = min(bisect_right(self.xs, x) - 1, len(self.xs) - 2)
        x0, x1 = self.xs[idx], self.xs[idx + 1]
        y0, y1 = self.ys[idx], self.ys[idx + 1]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    def __eq__(self, other):
        return (
            isinstance(other, PiecewiseAffineMap)
            and self.xs == other.xs
            and self.ys == other.ys
        )

    def __hash__(self):
        return hash((self.xs, self.ys))


@dataclass(frozen=True)
class Family:
    """One registered parametric family with its contraction facts."""

    name: str
    evaluate: Callable[[Tuple[Fraction, ...], Fraction], Fraction]
    validate: Callable[[Tuple[Fraction, ...]], None]
    monotone_increasing: bool
    slope_supremum: Callable[[Tuple[Fraction, ...]], Fraction]
    weak_note: str


def _saturating_eval(params: Tuple[Fraction, ...], x: Fraction) -> Fraction:
    (c,) = params
    return c * x / (c + x)


def _saturating_validate(params: Tuple[Fraction, ...]) -> None:
    if len(params) != 1 or params[0] <= 0:
        raise ValueError("saturating family takes one positive parameter c")


FAMILIES = {
    "saturating": Family(
        name="saturating",
        evaluate=_saturating_eval,
        validate=_saturating_validate,
        monotone_increasing=True,
        slope_supremum=lambda params: ONE,  # derivative c^2/(c+x)^2 peaks at x=0
        weak_note=(
            "chord factor c^2/((c+x)(c+y)) < 1 for distinct x, y in [0,1]: "
            "at least one of x, y is positive, so (c+x)(c+y) > c^2"
        ),
    ),
}


@dataclass(frozen=True)
class ParametricMap:
    family: str
    params: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.family in FAMILIES:
            FAMILIES[self.family].validate(self.params)

    @property
    def kind(self) -> str:
        return "parametric"

    @property
    def registered(self) -> Optional[Family]:
        return FAMILIES.get(self.family)

    def __call__(self, x) -> Fraction:
        fam = self.registered
        if fam is None:
            raise ValueError(f"unknown parametric family {self.family!r}")
        return fam.evaluate(self.params, Fraction(x))


IntervalMap = Union[AffineMap, PiecewiseAffineMap, ParametricMap]


# --- contraction certificates -----------------------------------------------------

def lipschitz_bound(m: IntervalMap) -> Optional[Fraction]:
    """Certified Lipschitz constant, or None when no certificate is available."""
    if isinstance(m, AffineMap):
        return abs(m.slope)
    if isinstance(m, PiecewiseAffineMap):
        return max(abs(slope) for _, _, slope in m.segments())
    if isinstance(m, ParametricMap):
        fam = m.registered
        if fam is None:
            return None
        return fam.slope_supremum(m.params)
    raise TypeError(f"not an interval map: {m!r}")


@dataclass(frozen=True)
class WeakCheck:
    verdict: str
    witness: Optional[Tuple[Fraction, Fraction]] = None
    note: str = ""


def weak_contraction_check(m: IntervalMap) -> WeakCheck:
    """Symbolic weak-contraction certificate, a violating pair, or inconclusive.

    Affine and piecewise-affine maps with every |slope| < 1 are certified
    (and in fact strict); a segment with |slope| >= 1 yields its endpoints
    as an exact witness.  Parametric maps defer to the registry's chord
    argument; unknown families are inconclusive.
    """
    if isinstance(m, AffineMap):
        if abs(m.slope) < 1:
            return WeakCheck(CERTIFIED_WEAK, note="|slope| < 1 (strict)")
        return WeakCheck(CERTIFIED_NOT_WEAK, witness=(ZERO, ONE), note="|slope| >= 1")
    if isinstance(m, PiecewiseAffineMap):
        for x0, x1, slope in m.segments():
            if abs(slope) >= 1:
                return WeakCheck(
                    CERTIFIED_NOT_WEAK, witness=(x0, x1), note=f"segment slope {slope}"
                )
        return WeakCheck(CERTIFIED_WEAK, note="all |slopes| < 1 (strict)")
    if isinstance(m, ParametricMap):
        fam = m.registered
        if fam is None:
            return WeakCheck(INCONCLUSIVE, note=f"unregistered family {m.family!r}")
        return WeakCheck(CERTIFIED_WEAK, note=fam.weak_note)
    raise TypeError(f"not an interval map: {m!r}")


# --- systems and the union-of-images operator ---------------------------------------

STRICT = "strict"
WEAK = "weak"


class IfsSystem:
    """Nonempty list of maps, validated against the declared strictness."""

    __slots__ = ("maps", "strictness", "lipschitz_max")

    def __init__(self, maps: Sequence[IntervalMap], strictness: str = STRICT):
        maps = tuple(maps)
        if not maps:
            raise ValueError("a system needs at least one map")
        if strictness not in (STRICT, WEAK):
            raise ValueError(f"bad strictness {strictness!r}")
        lipschitz_max: Optional[Fraction] = None
        if strictness == STRICT:
            bounds = []
            for m in maps:
                bound = lipschitz_bound(m)
                if bound is None or bound >= 1:
                    raise ValueError(f"map {m!r} has no certified constant below 1")
                bounds.append(bound)
            lipschitz_max = max(bounds)
        else:
            for m in maps:
                check = weak_contraction_check(m)
                if check.verdict != CERTIFIED_WEAK:
                    raise ValueError(f"map {m!r} is not certified weak: {check.note}")
        self.maps = maps
        self.strictness = strictness
        self.lipschitz_max = lipschitz_max

    def __repr__(self):
        return f"IfsSystem({len(self.maps)} maps, {self.strictness})"


def _map_interval(m: IntervalMap, iv: RationalInterval) -> RationalInterval:
    if isinstance(m, AffineMap):
        if m.slope == 0:
            return RationalInterval(m.offset, m.offset)
        return iv.affine(m.slope, m.offset)
    if isinstance(m, PiecewiseAffineMap):
        lo, hi = m.domain
        if not (lo <= iv.lo and iv.hi <= hi):
            raise ValueError(f"interval {iv!r} outside map domain [{lo}, {hi}]")
        # split at interior breakpoints (extrema of non-monotone maps live there)
        candidates = [m(iv.lo), m(iv.hi)]
        candidates.extend(m.ys[k] for k, x in enumerate(m.xs) if iv.lo < x < iv.hi)
        return RationalInterval(min(candidates), max(candidates))
    if isinstance(m, ParametricMap):
        fam = m.registered
        if fam is None:
            raise ValueError(f"unknown parametric family {m.family!r}")
        a, b = m(iv.lo), m(iv.hi)
        if not fam.monotone_increasing:
            a, b = min(a, b), max(a, b)
        return RationalInterval(a, b)
    raise TypeError(f"not an interval map: {m!r}")


def hutchinson_apply(system: Union[IfsSystem, Sequence[IntervalMap]], cover: CompactCover) -> CompactCover:
    """Union of the map images of the cover, normalized.

    The image of each interval is exact for every supported map kind (the
    registered parametric families evaluate rationally), so the input's
    resolution propagates scaled by each map's Lipschitz bound.
    """
    maps = system.maps if isinstance(system, IfsSystem) else tuple(system)
    images = []
    for m in maps:
        bound = lipschitz_bound(m)
        scale = bound if bound is not None else ONE
        images.append(
            CompactCover(
                [_map_interval(m, iv) for iv in cover.intervals],
                scale * cover.resolution,
            )
        )
    return union_many(images)


@dataclass(frozen=True)
class AttractorResult:
    cover: CompactCover
    error_bound: Fraction
    iterations: int
    certified: bool  # True: exact a-priori bound; False: Cauchy heuristic


def attractor_solve(
    system: IfsSystem, tol: Fraction, cap: int = DEFAULT_ITERATION_CAP
) -> AttractorResult:
    """Iterate the operator from [0, 1] until the tolerance is certified/reached.

    Strict systems use the geometric a-priori bound L^n/(1-L) * d(A0, A1) and
    return it exactly; weak systems stop when consecutive iterates are within
    tol of each other, raising IterationCapExceeded past the cap.
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if cap < 1:
        raise ValueError("iteration cap must be >= 1")
    start = CompactCover([RationalInterval(ZERO, ONE)])
    current = start
    first = hutchinson_apply(system, start)
    if first.intervals_equal(start):
        cover = start.with_resolution(ZERO)
        return AttractorResult(cover, ZERO, 1, True)
    if system.strictness == STRICT:
        lip = system.lipschitz_max
        d1 = hausdorff_distance(start, first)
        steps = 1
        bound = lip / (1 - lip) * d1
        while bound > tol:
            steps += 1
            bound *= lip
            if steps > cap:
                raise IterationCapExceeded(f"strict solve needs {steps} > cap {cap} steps")
        current = first
        for k in range(2, steps + 1):
            nxt = hutchinson_apply(system, current)
            if nxt.intervals_equal(current):
                return AttractorResult(current.with_resolution(ZERO), ZERO, k, True)
            current = nxt
        return AttractorResult(current.with_resolution(bound), bound, steps, True)
    current = first
    iterations = 1
    while True:
        nxt = hutchinson_apply(system, current)
        iterations += 1
        gap = hausdorff_distance(current, nxt)
        if gap <= tol:
            return AttractorResult(nxt.with_resolution(gap), gap, iterations, False)
        if iterations >= cap:
            raise IterationCapExceeded(
                f"weak solve hit the cap of {cap} applications",
                AttractorResult(nxt.with_resolution(gap), gap, iterations, False),
            )
        current = nxt


# --- witness pair for a distorted piece -----------------------------------------------

def _insert_bit(stream: BitStream, position: int, bit: int) -> BitStream:
    """Insert a bit so later positions shift down by one (tails are preserved)."""
    head = stream.head
    if len(head) < position - 1:
        # materialize enough of the head to insert inside it
        head = stream.prefix(position - 1)
    new_head = head[: position - 1] + (bit,) + head[position - 1:]
    return BitStream(new_head, stream.tail_kind)


def witness_pair_ifs(
    plan: SectionPlan, j: int, steering: BitStream, depth: int
) -> Tuple[IfsSystem, CompactCover]:
    """The two nondecreasing piecewise-affine maps whose union of images
    reproduces the (normalized) distorted piece, plus that piece's stage cover.

    On addressed points the maps send x to the address with a 0 (resp. 1)
    inserted at the piece's first free position; between set points they
    interpolate affinely, and outside [min, max] they clamp.  Every segment
    then joins two set points, so the chord bound 1/5 on set points is also
    the maps' Lipschitz constant.
    """
    if depth < plan.i_n:
        raise DepthError(f"depth {depth} < {plan.i_n} cannot resolve the piece's gaps")
    if steering.eventually_constant is None:
        raise ValueError("steering stream must be eventually constant")
    base = pow_fraction(plan.delta, j - 1)
    i_n = plan.i_n
    scale = Fraction(10 ** (i_n - 1))  # normalize the piece span into [0, 1]
    free = depth - i_n + 1

    def point(stream: BitStream) -> Fraction:
        return scale * distorted_point(base, steering, stream)

    xs: List[Fraction] = []
    y0s: List[Fraction] = []
    y1s: List[Fraction] = []
    intervals: List[RationalInterval] = []
    for bits in all_words(free):
        for tail_bit in (0, 1):
            stream = BitStream((0,) * (i_n - 1) + bits, ("const", tail_bit))
            xs.append(point(stream))
            y0s.append(point(_insert_bit(stream, i_n, 0)))
            y1s.append(point(_insert_bit(stream, i_n, 1)))
        intervals.append(RationalInterval(xs[-2], xs[-1]))
    if xs[0] > 0:
        xs.insert(0, ZERO)
        y0s.insert(0, y0s[0])
        y1s.insert(0, y1s[0])
    if xs[-1] < 1:
        xs.append(ONE)
        y0s.append(y0s[-1])
        y1s.append(y1s[-1])
    f1 = PiecewiseAffineMap(xs, y0s)
    f2 = PiecewiseAffineMap(xs, y1s)
    cover = CompactCover(intervals, max(iv.length for iv in intervals))
    return IfsSystem((f1, f2), STRICT), cover


# --- textual IFS format -----------------------------------------------------------------
#
#   ifs v1 strictness=<strict|weak>
#   affine <slope> <offset>
#   pl <x0> <y0> <x1> <y1> ...
#   param <name> <rationals...>

HEADER_PREFIX = "ifs v1"


def ifs_to_text(system: IfsSystem) -> str:
    lines = [f"{HEADER_PREFIX} strictness={system.strictness}"]
    for m in system.maps:
        if isinstance(m, AffineMap):
            lines.append(f"affine {format_rational(m.slope)} {format_rational(m.offset)}")
        elif isinstance(m, PiecewiseAffineMap):
            flat = " ".join(
                f"{format_rational(x)} {format_rational(y)}" for x, y in zip(m.xs, m.ys)
            )
            lines.append(f"pl {flat}")
        elif isinstance(m, ParametricMap):
            params = " ".join(format_rational(p) for p in m.params)
            lines.append(f"param {m.family}{(' ' + params) if params else ''}")
        else:
            raise TypeError(f"not an interval map: {m!r}")
    return "\n".join(lines) + "\n"


def ifs_from_text(text: str) -> IfsSystem:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ParseError("empty IFS file")
    header = lines[0]
    if not header.startswith(HEADER_PREFIX):
        raise ParseError(f"bad IFS header: {header!r}")
    strictness = None
    for token in header[len(HEADER_PREFIX):].split():
        if token.startswith("strictness="):
            strictness = token[len("strictness="):]
        else:
            raise ParseError(f"unknown header token {token!r}")
    if strictness not in (STRICT, WEAK):
        raise ParseError(f"bad or missing strictness in header: {header!r}")
    maps: List[IntervalMap] = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split()
        try:
            if parts[0] == "affine" and len(parts) == 3:
                maps.append(
                    AffineMap(
                        parse_rational(parts[1], require_slash=True),
                        parse_rational(parts[2], require_slash=True),
                    )
                )
            elif parts[0] == "pl" and len(parts) >= 5 and len(parts) % 2 == 1:
                values = [parse_rational(p, require_slash=True) for p in parts[1:]]
                maps.append(PiecewiseAffineMap(values[0::2], values[1::2]))
            elif parts[0] == "param" and len(parts) >= 2:
                params = tuple(parse_rational(p, require_slash=True) for p in parts[2:])
                if parts[1] not in FAMILIES:
                    raise ParseError(f"line {lineno}: unknown family {parts[1]!r}")
                maps.append(ParametricMap(parts[1], params))
            else:
                raise ParseError(f"line {lineno}: bad map line {line!r}")
        except (ValueError, IndexError) as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
    if not maps:
        raise ParseError("IFS file with no maps")
    try:
        return IfsSystem(maps, strictness)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
