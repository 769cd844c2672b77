"""Named verification suites: every finitely checkable identity in one place.

Each suite returns a list of ``CheckLine`` records (name, pass/fail, exact
witness text).  The ``acceptance`` suite runs the full gate at its pinned
parameters; the CLI's ``verify`` subcommand and the service's /verify
endpoint both dispatch here, and the pytest acceptance module asserts on the
same functions, so there is a single source of truth for what "verified"
means.

Randomized suites take explicit seeds and are deterministic given them.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import addressing, gridsets, maps, sections
from .addressing import BitStream, all_words
from .gridsets import ColumnDesc, GridSet
from .intervals import CompactCover, RationalInterval, hausdorff_distance
from .maps import AffineMap, IfsSystem, hutchinson_apply
from .ratio import pow_fraction

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class CheckLine:
    name: str
    passed: bool
    detail: str = ""


def format_report(lines: Sequence[CheckLine]) -> str:
    out = []
    for line in lines:
        status = "PASS" if line.passed else "FAIL"
        detail = f" {line.detail}" if line.detail else ""
        out.append(f"{line.name} {status}{detail}")
    return "\n".join(out) + "\n"


def all_passed(lines: Sequence[CheckLine]) -> bool:
    return all(line.passed for line in lines)


# --- addressing ------------------------------------------------------------------

def series_identity_check(support: int = 8) -> CheckLine:
    """Exact infinite-series total equals the digit sum, all finite supports."""
    witness = ""
    ok = True
    for w in all_words(support):
        x = BitStream(w, ("const", 0))
        total = addressing.series_total(x)
        limit = addressing.digit_sum_limit(x)
        if total != limit:
            ok = False
            witness = f"x={addressing.word_to_text(w)} total={total} limit={limit}"
            break
    return CheckLine(
        f"addressing/series-identity-support{support}",
        ok,
        witness or f"cases={1 << support}",
    )


def chain_check(n_max: int = 20) -> CheckLine:
    """Leading increment strictly beats the competing tail, all 1 <= m < n <= n_max."""
    ok = True
    for n in range(2, n_max + 1):
        for m in range(1, n):
            lhs, rhs = addressing.chain_lower_bound(n, m)
            if not lhs > rhs:
                ok = False
    return CheckLine(f"addressing/chain-inequality-n{n_max}", ok)


def addressing_suite(maxlen: int = 8, chain_n: int = 20) -> List[CheckLine]:
    lines: List[CheckLine] = []

    report = addressing.verify_lex_order(maxlen)
    lines.append(
        CheckLine(
            f"addressing/lex-order-len{maxlen}",
            report.passed,
            f"pairs={report.pairs_checked}",
        )
    )

    oracle_ok = all(
        addressing.d_value(w) == addressing.d_value_closed(w)
        for length in range(0, min(maxlen, 10) + 1)
        for w in all_words(length)
    )
    lines.append(CheckLine("addressing/increment-closed-form", oracle_ok))

    lines.append(series_identity_check(min(maxlen, 8)))

    sample_streams = [
        BitStream((1, 0, 1), ("const", 0)),
        BitStream((0, 1), ("const", 1)),
        BitStream((), ("const", 1)),
        BitStream((1,), ("periodic", (1, 0))),
    ]
    partial_ok = all(
        addressing.verify_series_identity(x, n).passed
        for x in sample_streams
        for n in (3, 6, 9)
    )
    lines.append(CheckLine("addressing/partial-sum-and-tail-bound", partial_ok))

    lines.append(chain_check(chain_n))
    return lines


# --- gap separation ------------------------------------------------------------------

def gaps_suite(n_max: int = 10) -> List[CheckLine]:
    lines: List[CheckLine] = []
    threshold = Fraction(80, 89)
    ok = True
    checked = 0
    for i in range(1, 1000):
        delta = Fraction(i, 1000)
        if delta <= threshold:
            continue
        for n in range(0, n_max + 1):
            checked += 1
            if not sections.gap_separation_checks(n, delta).both_hold:
                ok = False
    lines.append(CheckLine(f"gaps/grid-above-80-89-n{n_max}", ok, f"checked={checked}"))

    sharp = sections.gap_separation_checks(3, Fraction(79, 89))
    lines.append(
        CheckLine(
            "gaps/sharpness-79-89",
            (not sharp.second_holds) and sharp.first_holds,
            "second inequality fails below the threshold",
        )
    )
    return lines


# --- layout conditions ------------------------------------------------------------------

def conditions_suite(kt_lo: int = 2, kt_hi: int = 50) -> List[CheckLine]:
    violations = 0
    checked = 0
    for i in range(1, 1000):
        delta = Fraction(i, 1000)
        p1 = pow_fraction(delta, kt_lo - 1)  # delta^(k~-1), updated incrementally
        for k_tilde in range(kt_lo, kt_hi + 1):
            if k_tilde > kt_lo:
                p1 *= delta
            p2 = p1 / delta
            report = sections._layout_from_powers(k_tilde, delta, p1, p2, lambda a, b: a < b)
            chart = sections.ThresholdChart(
                trailing_equiv_13_14=report.trailing_gap_dominates == (p1 > Fraction(13, 14)),
                section_reach_equiv_140_149=report.section_reach == (p1 > Fraction(140, 149)),
                quadrant_implies_member_gap=(not report.quadrant_threshold) or report.member_gap,
                quadrant_implies_section_gap=(not report.quadrant_threshold)
                or report.section_gap,
                p1_18_19_implies_member_dominates=(not p1 > Fraction(18, 19))
                or report.member_gap_dominates,
                p1_190_199_implies_member_reach=(not p1 > Fraction(190, 199))
                or report.member_reach,
            )
            checked += 1
            if not chart.all_hold():
                violations += 1
    return [
        CheckLine(
            f"conditions/threshold-chart-kt{kt_lo}..{kt_hi}",
            violations == 0,
            f"checked={checked} violations={violations}",
        )
    ]


def delta_choice_suite(kt_max: int = 200) -> List[CheckLine]:
    target = Fraction(190, 199)
    ok = True
    witness = ""
    for k_tilde in range(2, kt_max + 1):
        delta = sections.choose_delta(k_tilde)
        power = pow_fraction(delta, k_tilde - 1)
        if not power > target:
            ok = False
            witness = f"k~={k_tilde}"
            break
    return [
        CheckLine(
            f"delta/exact-power-certificate-kt2..{kt_max}",
            ok,
            witness or "delta = 1 - 9/(398*(k~-1))",
        )
    ]


# --- section construction ------------------------------------------------------------------

def sections_suite(levels: int = 4) -> List[CheckLine]:
    lines: List[CheckLine] = []
    plans = sections.build_sections(levels)
    lines.append(
        CheckLine(
            f"sections/build-{levels}-levels",
            len(plans) == levels,
            " ".join(f"L{p.level}:i={p.i_n},k~={p.k_tilde}" for p in plans),
        )
    )
    prev_exact: Optional[Fraction] = sections.INITIAL_SPAN
    prev_scalar = sections.ExactScalar.from_fraction(sections.INITIAL_SPAN)
    for plan in plans:
        if plan.a_exact is not None and prev_exact is not None:
            halved = plan.a_exact <= prev_exact / 2
            how = "exact"
        else:
            halved = plan.halving_holds(prev_scalar)
            how = "certified"
        lines.append(CheckLine(f"sections/halving-L{plan.level}", halved, how))
        if plan.materialized:
            gap_ok = plan.exact_member_gap_check()
            increasing = all(
                plan.offset(k) < plan.offset(k + 1) for k in range(1, plan.k_tilde)
            )
            lines.append(
                CheckLine(f"sections/member-gaps-L{plan.level}", gap_ok, "exact per gap")
            )
            lines.append(
                CheckLine(f"sections/offsets-increasing-L{plan.level}", increasing)
            )
        else:
            lines.append(
                CheckLine(
                    f"sections/member-gaps-L{plan.level}",
                    plan.member_gap_bound_holds(),
                    "certified uniform bound",
                )
            )
        lines.append(
            CheckLine(
                f"sections/trailing-gap-L{plan.level}",
                plan.trailing_gap_bound_holds(),
                "0.9*p1 - (1-p1)/2 > 8/10",
            )
        )
        prev_exact = plan.a_exact
        prev_scalar = plan.a_n
    return lines


def counting_suite(k_max: int = 20, horizon: int = 1000) -> List[CheckLine]:
    """Bound existence plus monotonicity along the construction's ladder.

    Pointwise the predicate's margin dips by one at some successors (21 after
    20, say), so the monotonicity statement is about the ladder of member
    counts the construction actually walks; additionally every k must have a
    pointwise-stable threshold within the horizon.
    """
    lines: List[CheckLine] = []
    plans = sections.build_sections(4)
    ladder = [plan.k_tilde for plan in plans]
    ok = True
    witness = ""
    for k in range(1, k_max + 1):
        found = sections.covering_count_bound(k)
        if found is None:
            ok = False
            witness = f"k={k} unbounded"
            break
        _, k_tilde = found
        for kt in ladder:
            if kt >= k_tilde and not sections.covering_count_predicate(kt, k):
                ok = False
                witness = f"k={k} fails on the ladder at k~={kt}"
        stable = sections.covering_count_stable_from(k, horizon)
        if stable is None or stable > horizon:
            ok = False
            witness = f"k={k} has no stable threshold below {horizon}"
        if not ok:
            break
    lines.append(
        CheckLine(
            f"counting/bound-and-ladder-monotonicity-k{k_max}",
            ok,
            witness or f"ladder={ladder} horizon={horizon}",
        )
    )
    return lines


# --- witness pair ------------------------------------------------------------------

def _mixed_gridset() -> GridSet:
    return GridSet(
        {1: ColumnDesc.finite({1, 3}), 2: ColumnDesc.cofinite({2})},
        gridsets.EMPTY_DEFAULT,
    )


def witness_suite(extra_depth: int = 4) -> List[CheckLine]:
    lines: List[CheckLine] = []
    plan = sections.build_sections(1)[0]
    depth = plan.i_n + extra_depth
    grid_cases = [
        ("empty", GridSet.empty()),
        ("full", GridSet.full()),
        ("mixed", _mixed_gridset()),
    ]
    bound = Fraction(1, 5)
    for label, grid in grid_cases:
        steering = sections.tau(grid, plan.level)
        for j in (1, plan.k_tilde):
            system, cover = maps.witness_pair_ifs(plan, j, steering, depth)
            base = pow_fraction(plan.delta, j - 1)
            finer = sections.distorted_piece_cover(
                base, plan.i_n, steering, depth + 1, scale=Fraction(10 ** (plan.i_n - 1))
            )
            image = hutchinson_apply(system, cover)
            lines.append(
                CheckLine(
                    f"witness/invariance-{label}-j{j}",
                    image.intervals == finer.intervals,
                    f"depth {depth} -> {depth + 1}",
                )
            )
            chord_ok = True
            pts = sorted(
                {x for iv in cover.intervals for x in (iv.lo, iv.hi)}
            )
            for f in system.maps:
                values = [f(p) for p in pts]
                for a in range(len(pts)):
                    for b in range(a + 1, len(pts)):
                        if abs(values[b] - values[a]) > bound * (pts[b] - pts[a]):
                            chord_ok = False
            lines.append(
                CheckLine(
                    f"witness/chords-{label}-j{j}",
                    chord_ok,
                    f"{len(pts)} set points, ratio <= 1/5",
                )
            )
            monotone_ok = all(
                all(y1 <= y2 for y1, y2 in zip(f.ys, f.ys[1:])) for f in system.maps
            )
            lines.append(CheckLine(f"witness/nondecreasing-{label}-j{j}", monotone_ok))

    # undistorted j=1: on the set the two maps act as x/10 and x/10 + 9/10
    steering = sections.tau(GridSet.full(), plan.level)
    system, cover = maps.witness_pair_ifs(plan, 1, steering, depth)
    f1, f2 = system.maps
    pts = [x for iv in cover.intervals for x in (iv.lo, iv.hi)]
    trivial_ok = all(f1(p) == p / 10 for p in pts) and all(
        f2(p) == p / 10 + Fraction(9, 10) for p in pts
    )
    lines.append(CheckLine("witness/undistorted-decimal-maps", trivial_ok))
    return lines


# --- grid-set preimage identity ------------------------------------------------------------

def preimage_suite(
    random_count: int = 10 ** 4,
    seed: int = 7,
    window_cols: int = 4,
    window_rows: int = 4,
) -> List[CheckLine]:
    lines: List[CheckLine] = []
    report = gridsets.verify_preimage_identity(
        gridsets.exhaustive_window_gridsets(window_cols, window_rows)
    )
    lines.append(
        CheckLine(
            f"preimage/exhaustive-{window_cols}x{window_rows}",
            report.passed,
            f"instances={report.instances}",
        )
    )
    rng = random.Random(seed)
    report = gridsets.verify_preimage_identity(
        gridsets.random_gridset(rng) for _ in range(random_count)
    )
    lines.append(
        CheckLine(
            f"preimage/random-{random_count}-seed{seed}",
            report.passed,
            f"instances={report.instances}",
        )
    )

    # locality: membership of (n, m) in the image depends only on the first n
    # cells of row m, so arbitrary changes in later columns cannot move it
    # (columns 1..n are frozen explicitly: introducing a farther explicit
    # column must not silently reinterpret unlisted ones below it)
    rng = random.Random(seed + 1)
    locality_ok = True
    for _ in range(500):
        b = gridsets.random_gridset(rng)
        n = rng.randint(1, 6)
        m = rng.randint(1, 8)
        before = gridsets.column_prefix_union(b).contains(n, m)
        frozen = {i: b.column(i) for i in range(1, n + 1)}
        frozen.update({i: desc for i, desc in b.columns.items() if i > n})
        far_col = n + rng.randint(1, 5)
        desc = frozen.get(far_col, b.column(far_col))
        if desc.is_finite:
            frozen[far_col] = ColumnDesc.cofinite(frozenset({m}) - desc.members)
        else:
            frozen[far_col] = ColumnDesc.finite(frozenset({m}) | desc.members)
        b2 = GridSet(frozen, b.default, b.tail)
        after = gridsets.column_prefix_union(b2).contains(n, m)
        if before != after:
            locality_ok = False
            break
    lines.append(CheckLine("preimage/locality-500-mutations", locality_ok))
    return lines


# --- decimal Cantor oracle ------------------------------------------------------------------

def decimal_cantor_system() -> IfsSystem:
    return IfsSystem(
        (AffineMap(Fraction(1, 10), ZERO), AffineMap(Fraction(1, 10), Fraction(9, 10))),
        maps.STRICT,
    )


def cantor_suite(depth: int = 10) -> List[CheckLine]:
    lines: List[CheckLine] = []
    system = decimal_cantor_system()
    iterate = CompactCover([RationalInterval(ZERO, ONE)])
    ok = True
    for n in range(0, depth + 1):
        if iterate.intervals != addressing.cantor_cover(n).intervals:
            ok = False
            break
        iterate = hutchinson_apply(system, iterate)
    lines.append(CheckLine(f"cantor/iterate-equals-stage-cover-depth{depth}", ok))

    nested = all(
        addressing.cantor_cover(n).contains_cover(addressing.cantor_cover(n + 1))
        for n in range(0, depth)
    )
    lines.append(CheckLine(f"cantor/stages-nested-depth{depth}", nested))

    endpoint_ok = True
    for n in range(0, min(depth, 8) + 1):
        for word, iv in addressing.addressed_cantor_cover(n):
            lo = addressing.digit_sum_limit(BitStream(word, ("const", 0)))
            if iv.lo != lo or iv.hi != lo + Fraction(1, 10 ** n):
                endpoint_ok = False
    lines.append(CheckLine("cantor/endpoints-match-digit-sums", endpoint_ok))
    return lines


# --- metric axioms ------------------------------------------------------------------

def random_cover(rng: random.Random, max_intervals: int = 20, denominator: int = 1000) -> CompactCover:
    count = rng.randint(1, max_intervals)
    points = sorted(rng.sample(range(0, denominator + 1), 2 * count))
    intervals = [
        RationalInterval(Fraction(points[2 * i], denominator), Fraction(points[2 * i + 1], denominator))
        for i in range(count)
    ]
    return CompactCover(intervals)


def metric_suite(triples: int = 1000, seed: int = 11) -> List[CheckLine]:
    rng = random.Random(seed)
    triangle_ok = True
    symmetry_ok = True
    identity_ok = True
    scaling_ok = True
    for _ in range(triples):
        a = random_cover(rng)
        b = random_cover(rng)
        c = random_cover(rng)
        dab = hausdorff_distance(a, b)
        dbc = hausdorff_distance(b, c)
        dac = hausdorff_distance(a, c)
        if dac > dab + dbc:
            triangle_ok = False
        if dab != hausdorff_distance(b, a):
            symmetry_ok = False
        if (dab == 0) != (a.intervals == b.intervals):
            identity_ok = False
        scale = Fraction(rng.randint(1, 7), rng.randint(1, 7)) * rng.choice((1, -1))
        shift = Fraction(rng.randint(-5, 5), 3)
        if hausdorff_distance(a.affine(scale, shift), b.affine(scale, shift)) != abs(scale) * dab:
            scaling_ok = False
    return [
        CheckLine(f"metric/triangle-{triples}-seed{seed}", triangle_ok),
        CheckLine("metric/symmetry", symmetry_ok),
        CheckLine("metric/identity-of-indiscernibles", identity_ok),
        CheckLine("metric/affine-scaling", scaling_ok),
    ]


# --- Banach certificates ------------------------------------------------------------------

def banach_test_systems() -> List[IfsSystem]:
    # two fractal systems whose iterates branch exponentially, plus three
    # whose images merge, so the suite exercises both regimes affordably
    mk = lambda *pairs: IfsSystem([AffineMap(s, o) for s, o in pairs], maps.STRICT)
    return [
        mk((Fraction(1, 10), ZERO), (Fraction(1, 10), Fraction(9, 10))),
        mk((Fraction(1, 3), ZERO), (Fraction(1, 3), Fraction(2, 3))),
        mk((Fraction(1, 2), ZERO), (Fraction(1, 2), Fraction(1, 2))),
        mk((Fraction(1, 2), ZERO), (Fraction(1, 2), Fraction(1, 4))),
        mk((Fraction(2, 3), ZERO), (Fraction(2, 3), Fraction(1, 3))),
    ]


def banach_suite(n_lo: int = 3, n_hi: int = 8) -> List[CheckLine]:
    lines: List[CheckLine] = []
    for idx, system in enumerate(banach_test_systems(), start=1):
        iterates = [CompactCover([RationalInterval(ZERO, ONE)])]
        for _ in range(2 * n_hi):
            iterates.append(hutchinson_apply(system, iterates[-1]))
        lip = system.lipschitz_max
        d1 = hausdorff_distance(iterates[0], iterates[1])
        dominates = True
        contracts = True
        for n in range(n_lo, n_hi + 1):
            bound = pow_fraction(lip, n) / (1 - lip) * d1
            observed = hausdorff_distance(iterates[n], iterates[2 * n])
            if observed > bound:
                dominates = False
        for k in range(1, n_hi):
            step = hausdorff_distance(iterates[k], iterates[k + 1])
            prev = hausdorff_distance(iterates[k - 1], iterates[k])
            if step > lip * prev:
                contracts = False
        lines.append(
            CheckLine(f"banach/a-priori-dominates-system{idx}", dominates, f"n={n_lo}..{n_hi}")
        )
        lines.append(CheckLine(f"banach/per-step-contraction-system{idx}", contracts))
    return lines


# --- reduction-map locality ------------------------------------------------------------------

def _random_descriptor(rng: random.Random, rows: int = 6) -> ColumnDesc:
    members = frozenset(rng.randint(1, rows) for _ in range(rng.randint(0, 3)))
    if rng.random() < 0.5:
        return ColumnDesc.finite(members)
    return ColumnDesc.cofinite(members)


def locality_pair(rng: random.Random, agree_cols: int) -> Tuple[GridSet, GridSet]:
    shared = {n: _random_descriptor(rng) for n in range(1, agree_cols + 1)}
    a_extra = {
        n: _random_descriptor(rng)
        for n in range(agree_cols + 1, agree_cols + 1 + rng.randint(0, 2))
    }
    b_extra = {
        n: _random_descriptor(rng)
        for n in range(agree_cols + 1, agree_cols + 1 + rng.randint(0, 2))
    }
    a = GridSet({**shared, **a_extra}, gridsets.EMPTY_DEFAULT)
    b = GridSet({**shared, **b_extra}, gridsets.EMPTY_DEFAULT)
    return a, b


def locality_suite(pairs: int = 20, seed: int = 3, depth: int = 5) -> List[CheckLine]:
    lines: List[CheckLine] = []
    rng = random.Random(seed)
    per_m = {1: pairs - 2 * (pairs // 3), 2: pairs // 3, 3: pairs // 3}
    for m, count in per_m.items():
        bound_num, x_lower = sections.phi_tail_bound(m)
        bound = bound_num / x_lower  # lower bound of the true tail bound
        levels = min(m + 1, sections.PHI_LEVEL_CAP)
        ok = True
        worst = ZERO
        for _ in range(count):
            a, b = locality_pair(rng, m)
            pa = sections.phi(a, levels=levels, depth=depth)
            pb = sections.phi(b, levels=levels, depth=depth)
            d = hausdorff_distance(pa.cover, pb.cover)
            worst = max(worst, d)
            if d > bound:
                ok = False
        lines.append(
            CheckLine(
                f"locality/agree-{m}-columns-{count}-pairs",
                ok,
                f"max distance ~{float(worst):.4g} <= bound ~{float(bound):.4g}",
            )
        )
    return lines


def phi_suite(depth: int = 5) -> List[CheckLine]:
    lines: List[CheckLine] = []
    empty = sections.phi(GridSet.empty(), levels=1, depth=depth)
    full = sections.phi(GridSet.full(), levels=1, depth=depth)
    boundary = ONE / empty.x_lower  # everything below is the scaled base set
    base_empty = [iv for iv in empty.cover.intervals if iv.hi <= boundary]
    base_full = [iv for iv in full.cover.intervals if iv.hi <= boundary]
    lines.append(
        CheckLine("phi/base-part-steering-independent", base_empty == base_full)
    )
    tail_len = (empty.x_upper - empty.x_lower) / empty.x_upper
    a_next_hi = empty.plans[1].a_n.enclosure(256).hi
    lines.append(
        CheckLine(
            "phi/tail-interval-bound",
            tail_len <= 2 * a_next_hi / empty.x_lower,
            f"tail length ~{float(tail_len):.3g}",
        )
    )
    coarse = sections.phi(GridSet.empty(), levels=1, depth=depth)
    fine = sections.phi(GridSet.empty(), levels=1, depth=depth + 1)
    lines.append(
        CheckLine(
            "phi/depth-refinement-nested",
            coarse.cover.contains_cover(fine.cover)
            and fine.cover.resolution <= coarse.cover.resolution,
        )
    )
    return lines


# --- acceptance gate ------------------------------------------------------------------

def _merge(name: str, lines: Sequence[CheckLine], seconds: float, budget: Optional[float]) -> CheckLine:
    ok = all_passed(lines)
    detail = f"{len(lines)} checks in {seconds:.2f}s"
    if budget is not None:
        ok = ok and seconds < budget
        detail += f" (budget {budget:.0f}s)"
    return CheckLine(name, ok, detail)


def acceptance_suite() -> List[CheckLine]:
    """The full acceptance gate at its pinned parameters, one line each."""
    out: List[CheckLine] = []

    def run(name: str, fn: Callable[[], Sequence[CheckLine]], budget: Optional[float] = None):
        start = time.monotonic()
        lines = fn()
        out.append(_merge(name, lines, time.monotonic() - start, budget))

    run("A01-cantor-oracle", lambda: cantor_suite(depth=10), budget=1.0)
    run(
        "A02-lex-order-exhaustive",
        lambda: [CheckLine("lex", addressing.verify_lex_order(10).passed)],
        budget=30.0,
    )
    run("A03-series-identity", lambda: [series_identity_check(8)])
    run("A04-chain-inequality", lambda: [chain_check(20)])
    run("A05-gap-separation", lambda: gaps_suite(n_max=10))
    run("A06-threshold-chart", lambda: conditions_suite(2, 50))
    run("A07-delta-certificate", lambda: delta_choice_suite(200))
    run("A08-section-construction", lambda: sections_suite(4))
    run("A09-reduction-locality", lambda: locality_suite(pairs=20, seed=3))
    run("A10-witness-pair", lambda: witness_suite(extra_depth=4))
    run(
        "A11-preimage-identity",
        lambda: preimage_suite(random_count=10 ** 4, seed=7)[:2],
        budget=60.0,
    )
    run("A12-covering-counts", lambda: counting_suite(20, 1000))
    run("A13-banach-certificates", lambda: banach_suite(3, 8))
    run("A14-metric-axioms", lambda: metric_suite(1000, seed=11))
    return out


# --- registry ------------------------------------------------------------------

SUITES: Dict[str, Callable[..., List[CheckLine]]] = {
    "addressing": addressing_suite,
    "gaps": gaps_suite,
    "conditions": conditions_suite,
    "delta": delta_choice_suite,
    "sections": sections_suite,
    "counting": counting_suite,
    "witness": witness_suite,
    "preimage": preimage_suite,
    "cantor": cantor_suite,
    "metric": metric_suite,
    "banach": banach_suite,
    "locality": locality_suite,
    "phi": phi_suite,
    "acceptance": acceptance_suite,
}


def run_suite(name: str, **params) -> List[CheckLine]:
    if name == "all":
        lines: List[CheckLine] = []
        for suite_name, fn in SUITES.items():
            if suite_name == "acceptance":
                continue
            lines.extend(fn())
        return lines
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; available: {', '.join(sorted(SUITES))}, all")
    return SUITES[name](**params)
