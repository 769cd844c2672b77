"""Distortion of addressed Cantor pieces and the inductive section construction.

A distortion with base b in (0,1] rescales each prefix increment of an
addressed point by b^(1-alpha_l): digits where the steering sequence alpha is
0 get contracted, digits where it is 1 are left alone.  Applied to a small
Cantor piece this interpolates continuously between the piece itself
(alpha all ones) and its maximally contracted copy (alpha all zeros).

The section construction stacks distorted copies to the right of the unit
interval: level n places k~_n copies of the piece D_n = C_0 intersected with [0, |I|]
at geometrically spaced offsets, where |I| = 10^-(i_n - 1) is chosen so the
level's footprint undercuts a rapidly shrinking budget eps_n.  The shrink
base delta_n is picked so that delta_n^(k~_n - 1) > 190/199, which dominates
every layout threshold used downstream (gap positivity, trailing-gap
dominance, reach bounds).

Growth is brutal: k~ runs 20, 960, 126720, 21626880 over the first four
levels, and the exact powers delta^(k~-1) at level 4 have ~2*10^8 digits.
Plans therefore carry scalars as ``ExactScalar`` values: certified dyadic
enclosures decide every comparison in microseconds, while the exact integer
route remains available as a fallback (and as an opt-in audit).  Offsets and
member covers are materialized as exact Fractions only where their total
size is sane (levels with k~ <= 2000, i.e. levels 1 and 2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .addressing import BitStream, BitWord, all_words, cantor_cover, d_value
from .errors import DepthError, LevelCapError, MaterializationError
from .gridsets import GridSet
from .intervals import CompactCover, RationalInterval
from .ratio import (
    ExactScalar,
    certified_le,
    certified_lt,
    fastq,
    fraction_from_fast,
    geometric_sum_enclosure,
    geometric_sum_raw,
    pow_enclosure,
    pow_fraction,
    pow_raw,
)

ZERO = Fraction(0)
ONE = Fraction(1)

INITIAL_SPAN = Fraction(19, 10)  # a_0: the budget consumed by C_0 itself
DELTA_TARGET = Fraction(190, 199)  # required lower bound on delta^(k~-1)

MATERIALIZE_MAX_KTILDE = 2000  # offsets/covers as exact Fractions below this
SCALAR_EXACT_DIGIT_BUDGET = 50_000  # eager exact Fractions below this size
PHI_LEVEL_CAP = 2  # deeper section covers exceed any storage budget
BUILD_LEVEL_CAP = 8


# --- distortion of addressed points -------------------------------------------

@dataclass(frozen=True)
class DistortionSpec:
    """Distortion data: steering stream alpha, shrink base delta, power index j.

    The applied base is delta^(j-1), so j = 1 is the identity regardless
    of alpha.
    """

    alpha: BitStream
    delta: Fraction
    power_index: int

    def __post_init__(self):
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")
        if self.power_index < 1:
            raise ValueError("power index must be >= 1")

    @property
    def base(self) -> Fraction:
        return pow_fraction(self.delta, self.power_index - 1)


def distorted_point(base: Fraction, alpha: BitStream, x: BitStream) -> Fraction:
    """sum_l d_{x|l} * base^(1 - alpha_l), exact.

    Requires both streams eventually constant so the tail collapses into
    geometric closed forms (beyond the heads, d_{x|l} is A*2^-l + B*10^-l).
    """
    if not 0 < base <= 1:
        raise ValueError("base must lie in (0, 1]")
    x_bit = x.eventually_constant
    a_bit = alpha.eventually_constant
    if x_bit is None or a_bit is None:
        raise ValueError("distorted_point needs eventually-constant streams")
    m = max(x.head_length, alpha.head_length)
    partial = ZERO
    for l in range(1, m + 1):
        weight = ONE if alpha.bit(l) == 1 else base
        partial += d_value(x.prefix(l)) * weight
    w_head = sum(
        (Fraction(1, 5 ** k) for k in range(1, m + 1) if x.bit(k) == 1), ZERO
    )
    if x_bit == 0:
        a_coef = Fraction(9, 2) * w_head
        b_coef = ZERO
    else:
        a_coef = Fraction(9, 2) * (w_head + Fraction(1, 4 * 5 ** m))
        b_coef = Fraction(-9, 8)
    tail_weight = ONE if a_bit == 1 else base
    tail = tail_weight * (a_coef * Fraction(1, 2 ** m) + b_coef * Fraction(1, 9 * 10 ** m))
    return partial + tail


@dataclass(frozen=True)
class DistortedValue:
    value: Fraction
    exact: bool
    tail_bound: Fraction


def g_image_point(spec: DistortionSpec, x: BitStream, n_terms: int) -> DistortedValue:
    """Image of an addressed point under the distortion, to n_terms or exactly.

    When both streams are eventually constant the geometric tail is summed in
    closed form and the result is the exact image.  Otherwise the prefix sum
    is returned flagged with a rigorous bound on the dropped tail.
    """
    base = spec.base
    if x.eventually_constant is not None and spec.alpha.eventually_constant is not None:
        return DistortedValue(distorted_point(base, spec.alpha, x), True, ZERO)
    partial = ZERO
    for l in range(1, n_terms + 1):
        weight = ONE if spec.alpha.bit(l) == 1 else base
        partial += d_value(x.prefix(l)) * weight
    # d_{x|l} <= (9/4) * 2^-(l+1) regardless of x, and weights are <= 1
    tail_bound = Fraction(9, 8) * Fraction(1, 2 ** n_terms)
    return DistortedValue(partial, False, tail_bound)


# --- quadrant partitions --------------------------------------------------------

AddressedCover = Sequence[Tuple[BitWord, RationalInterval]]


def quadrant_sets(
    entries: AddressedCover, n: int, resolution: Fraction = ZERO
) -> Tuple[Optional[CompactCover], Optional[CompactCover], Optional[CompactCover], Optional[CompactCover]]:
    """Partition an addressed cover by the bits at positions n+1 and n+2.

    Quadrants are indexed 1..4 by the bit pairs (0,0), (0,1), (1,0), (1,1).
    """
    buckets: Dict[Tuple[int, int], List[RationalInterval]] = {}
    for word, interval in entries:
        if len(word) < n + 2:
            raise DepthError(f"addressed cover depth {len(word)} cannot expose bits {n+1},{n+2}")
        buckets.setdefault((word[n], word[n + 1]), []).append(interval)
    order = ((0, 0), (0, 1), (1, 0), (1, 1))
    return tuple(
        CompactCover(buckets[key], resolution) if key in buckets else None for key in order
    )


@dataclass(frozen=True)
class GapSeparationReport:
    """The two gap inequalities that keep distorted halves apart at scale n.

    first:  delta * 8/10^(n+1) > 8/10^(n+2)       (half-gap survives distortion)
    second: 8/10^(n+1) < delta * (8/10^(n+1) + 9/10^(n+2))
                                                  (outer gap beats the inner one)
    The second is equivalent to delta > 80/89.
    """

    n: int
    delta: Fraction
    first_holds: bool
    second_holds: bool
    first_lhs: Fraction
    first_rhs: Fraction
    second_lhs: Fraction
    second_rhs: Fraction

    @property
    def both_hold(self) -> bool:
        return self.first_holds and self.second_holds


def gap_separation_checks(n: int, delta: Fraction) -> GapSeparationReport:
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    first_lhs = delta * Fraction(8, 10 ** (n + 1))
    first_rhs = Fraction(8, 10 ** (n + 2))
    second_lhs = Fraction(8, 10 ** (n + 1))
    second_rhs = delta * (Fraction(8, 10 ** (n + 1)) + Fraction(9, 10 ** (n + 2)))
    return GapSeparationReport(
        n=n,
        delta=delta,
        first_holds=first_lhs > first_rhs,
        second_holds=second_lhs < second_rhs,
        first_lhs=first_lhs,
        first_rhs=first_rhs,
        second_lhs=second_lhs,
        second_rhs=second_rhs,
    )


# --- section layout conditions ---------------------------------------------------

@dataclass(frozen=True)
class LayoutConditions:
    """The seven homogeneous layout inequalities for one section level.

    With p1 = delta^(k~-1) and p2 = delta^(k~-2), the piece length cancels:

      quadrant_threshold     p1 > 80/89   (enables the quadrant gap analysis)
      member_gap             0.9*p2 > 1 - p1          (members never overlap)
      section_gap            0.9*p1 > (1 - p1)/2      (sections never overlap)
      member_gap_dominates   0.9*p2 - (1 - p1) > 8/10
      trailing_gap_dominates 0.9*p1 - (1 - p1)/2 > 8/10
      member_reach           9/10 < 0.9*p2 - (1 - p1) + 0.09*p1
      section_reach          9/10 < 0.9*p1 - (1 - p1)/2 + 0.09*p1
    """

    k_tilde: int
    delta: Fraction
    quadrant_threshold: bool
    member_gap: bool
    section_gap: bool
    member_gap_dominates: bool
    trailing_gap_dominates: bool
    member_reach: bool
    section_reach: bool

    def all_hold(self) -> bool:
        return (
            self.quadrant_threshold
            and self.member_gap
            and self.section_gap
            and self.member_gap_dominates
            and self.trailing_gap_dominates
            and self.member_reach
            and self.section_reach
        )


def _layout_from_powers(k_tilde: int, delta: Fraction, p1, p2, less) -> LayoutConditions:
    nine_tenths = Fraction(9, 10)
    return LayoutConditions(
        k_tilde=k_tilde,
        delta=delta,
        quadrant_threshold=less(Fraction(80, 89), p1),
        member_gap=less(1 - p1, nine_tenths * p2),
        section_gap=less((1 - p1) / 2, nine_tenths * p1),
        member_gap_dominates=less(Fraction(8, 10), nine_tenths * p2 - (1 - p1)),
        trailing_gap_dominates=less(Fraction(8, 10), nine_tenths * p1 - (1 - p1) / 2),
        member_reach=less(nine_tenths, nine_tenths * p2 - (1 - p1) + Fraction(9, 100) * p1),
        section_reach=less(
            nine_tenths, nine_tenths * p1 - (1 - p1) / 2 + Fraction(9, 100) * p1
        ),
    )


def layout_conditions(k_tilde: int, delta: Fraction) -> LayoutConditions:
    """Exact evaluation of all seven conditions (small k~ only)."""
    if k_tilde < 2:
        raise ValueError("k~ must be >= 2")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    p1 = pow_fraction(delta, k_tilde - 1)
    p2 = pow_fraction(delta, k_tilde - 2)
    return _layout_from_powers(k_tilde, delta, p1, p2, lambda a, b: a < b)


def layout_conditions_certified(k_tilde: int, delta: Fraction) -> LayoutConditions:
    """Certified evaluation through enclosures; exact in outcome at any k~."""
    if k_tilde < 2:
        raise ValueError("k~ must be >= 2")
    p1 = _power_scalar(delta, k_tilde - 1)
    p2 = _power_scalar(delta, k_tilde - 2)
    return _layout_from_powers(k_tilde, delta, p1, p2, certified_lt)


@dataclass(frozen=True)
class ThresholdChart:
    """Implication/equivalence structure among the layout conditions."""

    trailing_equiv_13_14: bool  # trailing_gap_dominates <=> p1 > 13/14
    section_reach_equiv_140_149: bool  # section_reach <=> p1 > 140/149
    quadrant_implies_member_gap: bool
    quadrant_implies_section_gap: bool
    p1_18_19_implies_member_dominates: bool
    p1_190_199_implies_member_reach: bool

    def all_hold(self) -> bool:
        return (
            self.trailing_equiv_13_14
            and self.section_reach_equiv_140_149
            and self.quadrant_implies_member_gap
            and self.quadrant_implies_section_gap
            and self.p1_18_19_implies_member_dominates
            and self.p1_190_199_implies_member_reach
        )


def threshold_chart(k_tilde: int, delta: Fraction) -> ThresholdChart:
    report = layout_conditions(k_tilde, delta)
    p1 = pow_fraction(delta, k_tilde - 1)
    return ThresholdChart(
        trailing_equiv_13_14=report.trailing_gap_dominates == (p1 > Fraction(13, 14)),
        section_reach_equiv_140_149=report.section_reach == (p1 > Fraction(140, 149)),
        quadrant_implies_member_gap=(not report.quadrant_threshold) or report.member_gap,
        quadrant_implies_section_gap=(not report.quadrant_threshold) or report.section_gap,
        p1_18_19_implies_member_dominates=(not p1 > Fraction(18, 19))
        or report.member_gap_dominates,
        p1_190_199_implies_member_reach=(not p1 > DELTA_TARGET) or report.member_reach,
    )


def choose_delta(k_tilde: int) -> Fraction:
    """delta = 1 - 9/(2*199*(k~-1)); a Bernoulli bound puts delta^(k~-1)
    above 190/199, and the build re-certifies that exactly."""
    if k_tilde < 2:
        raise ValueError("k~ must be >= 2")
    return 1 - Fraction(9, 2 * 199 * (k_tilde - 1))


def _power_scalar(delta: Fraction, exponent: int) -> ExactScalar:
    return ExactScalar(
        lambda prec: pow_enclosure(delta, exponent, prec),
        lambda: pow_raw(delta, exponent),
        desc=f"delta^{exponent}",
    )


def _geom_scalar(delta: Fraction, terms: int) -> ExactScalar:
    return ExactScalar(
        lambda prec: geometric_sum_enclosure(delta, terms, prec),
        lambda: geometric_sum_raw(delta, terms),
        desc=f"geom({terms})",
    )


# --- section plans ----------------------------------------------------------------

class OffsetSequence:
    """Left endpoints of the members of one section, materialized lazily.

    offset(k) = a_prev_sum + |I| * 1.9 * (1 + delta + ... + delta^(k-2)),
    1-indexed.  Partial geometric sums carry thousands of digits toward the
    end of a section, so the caches live in the fast-rational domain and are
    converted to Fractions only at the public surface.
    """

    def __init__(self, base: Fraction, piece_len: Fraction, delta: Fraction, count: int):
        self.base = fastq(base)
        self.step = fastq(piece_len) * fastq(INITIAL_SPAN)
        self.delta = fastq(delta)
        self.count = count
        self._powers = [fastq(1)]  # delta^0, delta^1, ...
        self._partials = [fastq(0)]  # sum of first k powers

    def __len__(self):
        return self.count

    def _partial_q(self, k: int):
        while len(self._partials) <= k:
            self._partials.append(self._partials[-1] + self._powers[-1])
            self._powers.append(self._powers[-1] * self.delta)
        return self._partials[k]

    def power_q(self, exponent: int):
        self._partial_q(exponent)
        return self._powers[exponent]

    def power(self, exponent: int) -> Fraction:
        return fraction_from_fast(self.power_q(exponent))

    def offset_q(self, k: int):
        if not 1 <= k <= self.count:
            raise ValueError(f"member index {k} out of range 1..{self.count}")
        return self.base + self.step * self._partial_q(k - 1)

    def offset(self, k: int) -> Fraction:
        return fraction_from_fast(self.offset_q(k))


@dataclass
class SectionPlan:
    """Construction record for one level: depth choice, member count, shrink
    base, budget, span, and member placement."""

    level: int
    i_n: int  # member pieces are copies of C_0 intersected with [0, 10^-(i_n - 1)]
    k_count: int  # intervals covering the previous stage at depth i_n
    k_tilde: int  # members in this section: k_count * 5 * level
    delta: Fraction
    piece_len: Fraction  # |I| = 10^-(i_n - 1)
    eps: ExactScalar
    a_prev_sum: ExactScalar  # a_0 + ... + a_(level-1)
    a_n: ExactScalar  # span consumed by this section
    delta_pow_top: ExactScalar  # delta^(k~ - 1)
    materialized: bool
    eps_exact: Optional[Fraction] = None
    a_exact: Optional[Fraction] = None
    a_prev_sum_exact: Optional[Fraction] = None
    offsets: Optional[OffsetSequence] = None

    def offset(self, k: int) -> Fraction:
        if self.offsets is None:
            raise MaterializationError(
                f"level {self.level} (k~={self.k_tilde}) offsets are not materializable"
            )
        return self.offsets.offset(k)

    def member_span(self, j: int) -> Fraction:
        """Diameter of the undistorted member j: |I| * delta^(j-1)."""
        if self.offsets is None:
            raise MaterializationError(
                f"level {self.level} (k~={self.k_tilde}) powers are not materializable"
            )
        return self.piece_len * self.offsets.power(j - 1)

    def member_gap_bound_holds(self) -> bool:
        """Uniform positive lower bound for every member gap under maximal
        expansion: 0.9*p2 - (1 - p1) > 0, certified.

        The k-th gap under worst-case expansion is
        0.9*|I|*d^(k-1) - (|I| - |I|*d^(k-1))/2 - (|I| - |I|*d^k)/2, which is
        decreasing in k, so the k~-1 case bounds them all.
        """
        p1 = self.delta_pow_top
        p2 = p1 / self.delta
        return certified_lt(1 - p1, Fraction(9, 10) * p2)

    def trailing_gap_bound_holds(self) -> bool:
        """0.9*p1 - (1 - p1)/2 > 8/10, certified: the gap behind the section
        beats the widest internal gap of a member piece."""
        p1 = self.delta_pow_top
        return certified_lt(Fraction(8, 10), Fraction(9, 10) * p1 - (1 - p1) / 2)

    def exact_member_gap_check(self) -> bool:
        """Per-gap exact verification (materialized levels only)."""
        if self.offsets is None:
            raise MaterializationError("exact per-gap check needs materialized offsets")
        piece = fastq(self.piece_len)
        nine_tenths = fastq(9, 10)
        half = fastq(1, 2)
        for k in range(1, self.k_tilde):
            dk1 = self.offsets.power_q(k - 1)
            dk = self.offsets.power_q(k)
            worst = (
                nine_tenths * piece * dk1
                - half * (piece - piece * dk1)
                - half * (piece - piece * dk)
            )
            if not worst > 0:
                return False
        return True

    def halving_holds(self, previous_a: ExactScalar) -> bool:
        return certified_le(self.a_n, previous_a / 2)


def _scalar_digit_estimate(delta: Fraction, k_tilde: int) -> int:
    return (k_tilde + 1) * len(str(delta.denominator))


def _stage_count(built: Sequence[SectionPlan], prefix_len: int) -> int:
    """Intervals in the stage cover of C_(n-1) at the given prefix length.

    C_0 contributes 2^d; each earlier section contributes k~ copies of its
    piece, each a translated C_0 intersected with [0, 10^-(i_l - 1)] holding 2^(d - i_l + 1)
    stage intervals.  Valid once d >= i_l - 1 for every built level, which the
    search order guarantees.
    """
    count = 1 << prefix_len
    for plan in built:
        count += plan.k_tilde * (1 << (prefix_len - plan.i_n + 1))
    return count


@lru_cache(maxsize=None)
def build_sections(levels: int) -> Tuple[SectionPlan, ...]:
    """Run the inductive construction for the requested number of levels.

    Every inequality the induction relies on is re-checked with certified
    comparisons: the footprint bound defining i_n, delta^(k~-1) > 190/199,
    and the halving a_n <= a_(n-1)/2.  Violations raise, since they would
    mean the construction itself is broken.
    """
    if not 1 <= levels <= BUILD_LEVEL_CAP:
        raise LevelCapError(f"levels must be in 1..{BUILD_LEVEL_CAP}")
    plans: List[SectionPlan] = []
    a_prev = ExactScalar.from_fraction(INITIAL_SPAN)  # a_(n-1)
    a_prev_exact: Optional[Fraction] = INITIAL_SPAN
    prev_sum = ExactScalar.from_fraction(INITIAL_SPAN)  # a_0 + ... + a_(n-1)
    prev_sum_exact: Optional[Fraction] = INITIAL_SPAN
    search_from = 0
    for level in range(1, levels + 1):
        eps = a_prev / (10 * level)
        eps_exact = a_prev_exact / (10 * level) if a_prev_exact is not None else None
        # the least qualifying depth cannot precede the previous level's:
        # stages only gain intervals level over level while the budgets
        # shrink, so every depth that failed before fails again
        d = search_from
        while True:
            count = _stage_count(plans, d)
            measure = Fraction(count, 10 ** d)
            if certified_lt(INITIAL_SPAN * measure, eps):
                break
            d += 1
        i_n = d + 1
        k_count = count
        k_tilde = k_count * 5 * level
        delta = choose_delta(k_tilde)
        piece_len = Fraction(1, 10 ** (i_n - 1))
        p_top = _power_scalar(delta, k_tilde - 1)
        if not certified_lt(DELTA_TARGET, p_top):
            raise AssertionError(f"level {level}: delta^{k_tilde-1} fails the 190/199 bound")
        a_n = ExactScalar.from_fraction(piece_len * INITIAL_SPAN) * _geom_scalar(delta, k_tilde)
        if not certified_le(a_n, a_prev / 2):
            raise AssertionError(f"level {level}: halving bound a_n <= a_(n-1)/2 fails")
        materialized = k_tilde <= MATERIALIZE_MAX_KTILDE
        a_exact: Optional[Fraction] = None
        if (
            prev_sum_exact is not None
            and _scalar_digit_estimate(delta, k_tilde) <= SCALAR_EXACT_DIGIT_BUDGET
        ):
            a_exact = piece_len * INITIAL_SPAN * geometric_sum_raw(delta, k_tilde).to_fraction()
        plan = SectionPlan(
            level=level,
            i_n=i_n,
            k_count=k_count,
            k_tilde=k_tilde,
            delta=delta,
            piece_len=piece_len,
            eps=eps,
            a_prev_sum=prev_sum,
            a_n=ExactScalar.from_fraction(a_exact) if a_exact is not None else a_n,
            delta_pow_top=p_top,
            materialized=materialized,
            eps_exact=eps_exact,
            a_exact=a_exact,
            a_prev_sum_exact=prev_sum_exact,
            offsets=(
                OffsetSequence(prev_sum_exact, piece_len, delta, k_tilde)
                if materialized and prev_sum_exact is not None
                else None
            ),
        )
        if plan.materialized and not plan.exact_member_gap_check():
            raise AssertionError(f"level {level}: a member gap closed under expansion")
        if not plan.member_gap_bound_holds() or not plan.trailing_gap_bound_holds():
            raise AssertionError(f"level {level}: certified gap bound fails")
        plans.append(plan)
        a_prev = plan.a_n
        a_prev_exact = a_exact
        prev_sum = prev_sum + plan.a_n
        prev_sum_exact = (
            prev_sum_exact + a_exact
            if (prev_sum_exact is not None and a_exact is not None)
            else None
        )
        search_from = d
    return tuple(plans)


# --- steering streams and distorted members ------------------------------------

def tau(A: GridSet, n: int) -> BitStream:
    """Steering stream of column n: bit l is 1 iff (n, l) is in the set."""
    desc = A.column(n)
    horizon = max(desc.members) if desc.members else 0
    head = tuple(1 if desc.contains(m) else 0 for m in range(1, horizon + 1))
    return BitStream(head, ("const", 0 if desc.is_finite else 1))


def _member_stream(i_n: int, free_bits: BitWord, tail_bit: int) -> BitStream:
    return BitStream((0,) * (i_n - 1) + tuple(free_bits), ("const", tail_bit))


def _linear_form(alpha: BitStream, x: BitStream) -> Tuple[Fraction, Fraction]:
    """(s0, s1) with distorted value = s1 + base * s0 for every base.

    The distorted sum splits by the steering bit: positions where alpha is 1
    contribute at weight 1 (s1), positions where it is 0 at weight base (s0).
    Both pieces are small exact rationals, so one multiplication per member
    reuses them across a whole section.
    """
    bit = x.eventually_constant
    if bit is None:
        raise ValueError("branch streams must be eventually constant")
    m = max(x.head_length, alpha.head_length)
    s0 = ZERO
    s1 = ZERO
    for l in range(1, m + 1):
        d = d_value(x.prefix(l))
        if alpha.bit(l) == 1:
            s1 += d
        else:
            s0 += d
    w_head = sum((Fraction(1, 5 ** k) for k in range(1, m + 1) if x.bit(k) == 1), ZERO)
    if bit == 0:
        a_coef = Fraction(9, 2) * w_head
        b_coef = ZERO
    else:
        a_coef = Fraction(9, 2) * (w_head + Fraction(1, 4 * 5 ** m))
        b_coef = Fraction(-9, 8)
    tail = a_coef * Fraction(1, 2 ** m) + b_coef * Fraction(1, 9 * 10 ** m)
    if alpha.eventually_constant == 1:
        s1 += tail
    else:
        s0 += tail
    return s0, s1


@lru_cache(maxsize=512)
def _branch_forms(alpha: BitStream, i_n: int, depth: int):
    """Per-branch linear forms (word, (s0,s1) at tail 0, (s0,s1) at tail 1)."""
    forms = []
    for bits in all_words(depth - i_n + 1):
        word = (0,) * (i_n - 1) + bits
        lo_form = _linear_form(alpha, _member_stream(i_n, bits, 0))
        hi_form = _linear_form(alpha, _member_stream(i_n, bits, 1))
        forms.append(
            (
                word,
                (fastq(lo_form[0]), fastq(lo_form[1])),
                (fastq(hi_form[0]), fastq(hi_form[1])),
            )
        )
    return tuple(forms)


def _member_endpoints(plan: SectionPlan, forms, j: int):
    """Branch endpoints of member j in the fast-rational domain, placed."""
    base = plan.offsets.power_q(j - 1)
    # the piece starts at 0, so its midpoint pre-shift is max/2
    (_, _, (s0_max, s1_max)) = forms[-1]
    max_point = s1_max + base * s0_max
    piece = fastq(plan.piece_len)
    target_mid = plan.offsets.offset_q(j) + piece * base / 2
    shift = target_mid - max_point / 2
    out = []
    for word, (s0_lo, s1_lo), (s0_hi, s1_hi) in forms:
        lo = s1_lo + base * s0_lo + shift
        hi = s1_hi + base * s0_hi + shift
        out.append((word, lo, hi))
    return out


def distorted_member_addressed(
    A: GridSet, plan: SectionPlan, j: int, depth: int
) -> List[Tuple[BitWord, RationalInterval]]:
    """Addressed stage cover of the j-th distorted member, placed on the line.

    depth counts address bits; it must be at least i_n so the piece's first
    split is resolved.  Branch endpoints are exact points of the distorted
    set (all-0 and all-1 tails), recentered so the member's midpoint agrees
    with the undistorted placement.
    """
    if not 1 <= j <= plan.k_tilde:
        raise ValueError(f"member index {j} out of range 1..{plan.k_tilde}")
    if depth < plan.i_n:
        raise DepthError(f"depth {depth} < {plan.i_n} cannot resolve the member piece")
    if plan.offsets is None:
        raise MaterializationError(
            f"level {plan.level} members are not exactly materializable (k~={plan.k_tilde})"
        )
    alpha = tau(A, plan.level)
    forms = _branch_forms(alpha, plan.i_n, depth)
    return [
        (word, RationalInterval(fraction_from_fast(lo), fraction_from_fast(hi)))
        for word, lo, hi in _member_endpoints(plan, forms, j)
    ]


def distorted_member(A: GridSet, plan: SectionPlan, j: int, depth: int) -> CompactCover:
    entries = distorted_member_addressed(A, plan, j, depth)
    resolution = max(iv.length for _, iv in entries)
    return CompactCover([iv for _, iv in entries], resolution)


def exact_level_audit(levels: int = 3) -> List[Dict[str, bool]]:
    """Replay the construction's defining inequalities in literal integers.

    An independent second route: no enclosures, no dyadic rounding -- raw
    numerator/denominator cross-multiplications of the exact powers.  Cheap
    through level 3; level 4 multiplies ~2*10^8-digit integers and takes on
    the order of a minute, which is why the certified route is the default.
    """
    from .ratio import RawRatio

    plans = build_sections(levels)
    nine_tenths = RawRatio.from_fraction(Fraction(9, 10))
    eight_tenths = RawRatio.from_fraction(Fraction(8, 10))
    one = RawRatio.from_fraction(ONE)
    half = RawRatio.from_fraction(Fraction(1, 2))
    target = RawRatio.from_fraction(DELTA_TARGET)
    results: List[Dict[str, bool]] = []
    a_prev = RawRatio.from_fraction(INITIAL_SPAN)
    for plan in plans:
        p1 = pow_raw(plan.delta, plan.k_tilde - 1)
        p2 = pow_raw(plan.delta, plan.k_tilde - 2)
        a_n = RawRatio.from_fraction(plan.piece_len * INITIAL_SPAN).mul(
            geometric_sum_raw(plan.delta, plan.k_tilde)
        )
        member_gap_lhs = nine_tenths.mul(p2)
        slack = one.sub(p1)
        trailing = nine_tenths.mul(p1).sub(half.mul(slack))
        results.append(
            {
                "level": plan.level,
                "delta_target": p1.compare(target) > 0,
                "halving": a_n.compare(a_prev.mul(half)) <= 0,
                "member_gap": member_gap_lhs.compare(slack) > 0,
                "trailing_gap": trailing.compare(eight_tenths) > 0,
            }
        )
        a_prev = a_n
    return results


def expanded_member(plan: SectionPlan, j: int, depth: int) -> CompactCover:
    """Member j rescaled back to the full piece length, midpoint fixed.

    Built through cover operations (affine image by 1/delta^(j-1), then
    recenter) from the contracted placement; it must coincide with the
    maximal-expansion distortion of the member, which the tests use as a
    dual-route check.
    """
    contracted = distorted_member(GridSet.empty(), plan, j, depth)
    mid = contracted.midpoint
    return contracted.affine(1 / plan.offsets.power(j - 1)).recenter(mid)


def distorted_piece_cover(
    base: Fraction, i_n: int, alpha: BitStream, depth: int, scale: Fraction = ONE
) -> CompactCover:
    """Stage cover of the unplaced distorted piece, optionally rescaled.

    The piece is the distortion image of C_0 intersected with [0, 10^-(i_n-1)]; with
    scale = 10^(i_n-1) the undistorted piece lands exactly on [0, 1].
    """
    if depth < i_n:
        raise DepthError(f"depth {depth} < {i_n} cannot resolve the piece")
    intervals = []
    for bits in all_words(depth - i_n + 1):
        lo = distorted_point(base, alpha, _member_stream(i_n, bits, 0))
        hi = distorted_point(base, alpha, _member_stream(i_n, bits, 1))
        intervals.append(RationalInterval(scale * lo, scale * hi))
    return CompactCover(intervals, max(iv.length for iv in intervals))


# --- the reduction map at finite depth --------------------------------------------

@dataclass(frozen=True)
class PhiResult:
    cover: CompactCover
    levels: int
    depth: int
    x_lower: Fraction  # certified bounds on the total span the scaling divides by
    x_upper: Fraction
    plans: Tuple[SectionPlan, ...]


# The image only reads columns 1..levels of the grid set, so results are
# memoized on that truncation; the cache doubles as a structural statement of
# the locality property.  Covers are large, hence the tiny bound.
_PHI_MEMO: Dict[Tuple, PhiResult] = {}
_PHI_MEMO_SIZE = 6


def phi(A: GridSet, levels: int = 2, depth: int = 5) -> PhiResult:
    """Depth-limited cover of the reduction image of a grid set.

    The cover is the scaled union of the stage cover of C_0, every member of
    sections 1..levels, and one tail interval holding all deeper sections
    plus the accumulation point x = sum a_n.  x itself is not finitely
    computable; it is enclosed in [x_lower, x_upper] with width at most
    2*a_(levels+1).  Scaling divides by the definite rational x_upper, which
    preserves the cover's relative geometry exactly and keeps the scaled
    pieces strictly below the tail interval; the difference between dividing
    by x_upper and by the true x is folded into the resolution certificate
    (it is at most the tail interval's length).
    """
    if levels < 0:
        raise ValueError("levels must be >= 0")
    if levels > PHI_LEVEL_CAP:
        raise LevelCapError(
            f"section covers beyond level {PHI_LEVEL_CAP} are not materializable"
        )
    if depth < 1:
        raise ValueError("depth must be >= 1")
    memo_key = (tuple(A.column(n) for n in range(1, levels + 1)), levels, depth)
    cached = _PHI_MEMO.get(memo_key)
    if cached is not None:
        return cached
    plans = build_sections(levels + 1)
    x_lower = INITIAL_SPAN
    for plan in plans[:levels]:
        x_lower += plan.a_exact
    a_next_hi = plans[levels].a_n.enclosure(256).hi
    x_upper = x_lower + 2 * a_next_hi

    inv_span = 1 / fastq(x_upper)
    scaled: List[RationalInterval] = []
    raw_resolution = Fraction(1, 10 ** depth)
    for iv in cantor_cover(depth).intervals:
        scaled.append(RationalInterval(iv.lo / x_upper, iv.hi / x_upper))
    for plan in plans[:levels]:
        member_depth = max(depth, plan.i_n)
        alpha = tau(A, plan.level)
        forms = _branch_forms(alpha, plan.i_n, member_depth)
        widest = ZERO
        for j in range(1, plan.k_tilde + 1):
            for _, lo, hi in _member_endpoints(plan, forms, j):
                scaled.append(
                    RationalInterval(
                        fraction_from_fast(lo * inv_span),
                        fraction_from_fast(hi * inv_span),
                    )
                )
                width = hi - lo
                if width > widest:
                    widest = width
        raw_resolution = max(raw_resolution, fraction_from_fast(widest))
    tail = RationalInterval(x_lower / x_upper, ONE)
    scaled.append(tail)
    # tail length also bounds the error of dividing by x_upper instead of x;
    # the certificate is rounded up to a dyadic so file headers stay short
    exact_resolution = raw_resolution / x_lower + 2 * tail.length
    scale_bits = 1 << 48
    resolution = Fraction(
        -((-exact_resolution.numerator * scale_bits) // exact_resolution.denominator),
        scale_bits,
    )
    result = PhiResult(
        cover=CompactCover(scaled, resolution),
        levels=levels,
        depth=depth,
        x_lower=x_lower,
        x_upper=x_upper,
        plans=plans[: levels + 1],
    )
    if len(_PHI_MEMO) >= _PHI_MEMO_SIZE:
        _PHI_MEMO.pop(next(iter(_PHI_MEMO)))
    _PHI_MEMO[memo_key] = result
    return result


def phi_tail_bound(m: int) -> Tuple[Fraction, Fraction]:
    """(numerator_lo, x_lower): certified lower enclosure of 2*a_(m+1) and a
    lower bound on the span.  The true tail bound 2*a_(m+1)/x_lower controls
    how far the image can move when the grid set changes only beyond column m;
    returning the numerator's lower bound keeps d <= bound comparisons
    conservative (a pass certifies the true inequality)."""
    plans = build_sections(m + 1)
    a_next_lo = plans[m].a_n.enclosure(256).lo
    x_lower = INITIAL_SPAN
    for plan in plans[:m]:
        if plan.a_exact is not None:
            x_lower += plan.a_exact
        else:
            x_lower += plan.a_n.enclosure(256).lo
    return 2 * a_next_lo, x_lower


# --- covering-count predicate -------------------------------------------------------

def covering_count_predicate(k_tilde: int, k: int) -> bool:
    """k~ > ceil(k~/2) + ceil(k~/5) + k: enough members survive the three
    absorption channels."""
    return k_tilde > -(-k_tilde // 2) + -(-k_tilde // 5) + k


def covering_count_bound(k: int, levels: int = 4) -> Optional[Tuple[int, int]]:
    """Least built level whose member count satisfies the predicate.

    The predicate's margin floor(k~/2) - ceil(k~/5) - k is *not* pointwise
    monotone in k~ (it dips by 1 at some successors, e.g. 20 -> 21), so the
    meaningful monotonicity statement quantifies over the construction's own
    ladder of member counts, where the margin multiplies by ~48 per level.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    for plan in build_sections(levels):
        if covering_count_predicate(plan.k_tilde, k):
            return plan.level, plan.k_tilde
    return None


def covering_count_stable_from(k: int, horizon: int = 1000) -> Optional[int]:
    """Least K with the predicate true for every k~ in [K, horizon]."""
    stable = None
    for kt in range(horizon, 1, -1):
        if covering_count_predicate(kt, k):
            stable = kt
        else:
            break
    return stable


# --- the weak-contraction step of the section-shifting map ---------------------------

@dataclass(frozen=True)
class WeakShiftReport:
    valid: bool
    reason: str
    s1: Optional[Fraction] = None
    s2: Optional[Fraction] = None
    s3: Optional[Fraction] = None

    @property
    def holds(self) -> bool:
        return self.valid and self.s1 >= self.s2 > self.s3


def weak_shift_chain(
    A: GridSet, plan: SectionPlan, j: int, x: BitWord, y: BitWord, m: int
) -> WeakShiftReport:
    """Exact replay of the chord chain showing the member-shifting map loses
    distance: with a steering zero at position m past the divergence point,

      S1 = sum_l (d_{x|l} - d_{y|l}) * delta^((j-1)(1-tau_l))
      S2 = sum_{l != m} (...) * delta^(j(1-tau_l)) + (d_{x|m} - d_{y|m}) * delta^(j-1)
      S3 = the same with the m-term at delta^j

    and S1 >= S2 > S3 holds strictly in the middle.
    """
    if len(x) != len(y):
        return WeakShiftReport(False, "words must have equal length")
    if not 1 <= m <= len(x):
        return WeakShiftReport(False, "position m out of range")
    if not tuple(x) > tuple(y):
        return WeakShiftReport(False, "x must be lexicographically above y")
    t = tau(A, plan.level)
    if t.bit(m) != 0:
        return WeakShiftReport(False, f"steering bit at {m} is 1; a zero is required")
    if not tuple(x[:m]) > tuple(y[:m]):
        return WeakShiftReport(False, "m must not precede the divergence point")
    delta = plan.delta
    pow_jm1 = pow_fraction(delta, j - 1)
    pow_j = pow_fraction(delta, j)
    s1 = ZERO
    s2 = ZERO
    s3 = ZERO
    for l in range(1, len(x) + 1):
        diff = d_value(tuple(x[:l])) - d_value(tuple(y[:l]))
        bit = t.bit(l)
        w_old = ONE if bit == 1 else pow_jm1
        w_new = ONE if bit == 1 else pow_j
        s1 += diff * w_old
        if l == m:
            s2 += diff * pow_jm1
            s3 += diff * pow_j
        else:
            s2 += diff * w_new
            s3 += diff * w_new
    return WeakShiftReport(True, "ok", s1, s2, s3)


# --- plan dump ------------------------------------------------------------------------

def _scalar_text(exact: Optional[Fraction], scalar: ExactScalar) -> str:
    from .ratio import decimal_approx, format_rational

    if exact is not None and exact.denominator < 10 ** 20000:
        return format_rational(exact)
    enc = scalar.enclosure(192)
    mid = (enc.lo + enc.hi) / 2
    return "~" + decimal_approx(mid, 24)


def plan_dump_text(plans: Sequence[SectionPlan], offsets_shown: int = 8) -> str:
    """Reproducibility dump: the defining data (i_n, k~, delta) exactly, the
    derived spans exactly where small, enclosure midpoints (marked ~) where
    the exact form would run to millions of digits."""
    from .ratio import format_rational

    lines = [f"sectionplan v1 levels={len(plans)}"]
    for plan in plans:
        lines.append(
            f"level {plan.level} i={plan.i_n} k_count={plan.k_count} "
            f"k_tilde={plan.k_tilde} delta={format_rational(plan.delta)} "
            f"piece_len={format_rational(plan.piece_len)}"
        )
        lines.append(f"  eps={_scalar_text(plan.eps_exact, plan.eps)}")
        lines.append(f"  a_prev_sum={_scalar_text(plan.a_prev_sum_exact, plan.a_prev_sum)}")
        lines.append(f"  a_n={_scalar_text(plan.a_exact, plan.a_n)}")
        if plan.offsets is not None:
            shown = min(offsets_shown, plan.k_tilde)
            offs = " ".join(format_rational(plan.offset(k)) for k in range(1, shown + 1))
            lines.append(f"  offsets[1..{shown}]={offs}")
        else:
            lines.append("  offsets=lazy (not materializable at this level)")
    return "\n".join(lines) + "\n"
