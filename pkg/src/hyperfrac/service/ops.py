"""Service operations: the single implementation behind endpoints and CLI.

Each op takes and returns plain text/dataclass values (file-format texts are
the wire format, so serialization has one source of truth).  Errors surface
as package exceptions; the HTTP layer and the CLI map them to status codes
and exit codes respectively.
"""

from __future__ import annotations

import inspect
import os
from dataclasses import dataclass
from typing import Dict, List, Optional

from .. import suites
from ..errors import ParseError
from ..gridsets import gridset_from_text
from ..intervals import cover_from_text, cover_to_text, hausdorff_distance
from ..maps import DEFAULT_ITERATION_CAP, attractor_solve, ifs_from_text
from ..ratio import format_rational, parse_rational
from ..sections import phi, plan_dump_text
from ..suites import CheckLine
from ..svg import render_cover_svg

CAP_ENV_VAR = "HYPERFRAC_CAP"


def default_cap() -> int:
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None:
        return DEFAULT_ITERATION_CAP
    try:
        value = int(raw)
    except ValueError as exc:
        raise ParseError(f"{CAP_ENV_VAR} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ParseError(f"{CAP_ENV_VAR} must be >= 1")
    return value


@dataclass(frozen=True)
class AttractorOutcome:
    cover_text: str
    iterations: int
    error_bound: str
    certified: bool

    @property
    def certificate_line(self) -> str:
        flag = "certified" if self.certified else "heuristic"
        return f"iterations={self.iterations} error_bound={self.error_bound} {flag}"


def attractor_op(ifs_text: str, tolerance: str, cap: Optional[int] = None) -> AttractorOutcome:
    system = ifs_from_text(ifs_text)
    tol = parse_rational(tolerance)
    if tol <= 0:
        raise ParseError("tolerance must be positive")
    result = attractor_solve(system, tol, cap if cap is not None else default_cap())
    return AttractorOutcome(
        cover_text=cover_to_text(result.cover),
        iterations=result.iterations,
        error_bound=format_rational(result.error_bound),
        certified=result.certified,
    )


@dataclass(frozen=True)
class ReduceOutcome:
    cover_text: str
    plan_text: str
    x_lower: str
    x_upper: str
    resolution: str


def reduce_op(gridset_text: str, levels: int = 2, depth: int = 5) -> ReduceOutcome:
    grid = gridset_from_text(gridset_text)
    result = phi(grid, levels=levels, depth=depth)
    return ReduceOutcome(
        cover_text=cover_to_text(result.cover),
        plan_text=plan_dump_text(result.plans),
        x_lower=format_rational(result.x_lower),
        x_upper=format_rational(result.x_upper),
        resolution=format_rational(result.cover.resolution),
    )


@dataclass(frozen=True)
class HausdorffOutcome:
    distance: str
    ideal_within: str  # the ideal sets' distance differs by at most this

    @property
    def caveat_line(self) -> str:
        return f"ideal-distance within ±{self.ideal_within} (sum of resolutions)"


def hausdorff_op(cover_a_text: str, cover_b_text: str) -> HausdorffOutcome:
    a, _ = cover_from_text(cover_a_text)
    b, _ = cover_from_text(cover_b_text)
    distance = hausdorff_distance(a, b)
    return HausdorffOutcome(
        distance=format_rational(distance),
        ideal_within=format_rational(a.resolution + b.resolution),
    )


@dataclass(frozen=True)
class RenderOutcome:
    svg: str


def render_op(
    cover_text: str,
    height: int = 40,
    width: int = 800,
    embed_dim: Optional[int] = None,
) -> RenderOutcome:
    cover, file_dim = cover_from_text(cover_text)
    dim = embed_dim if embed_dim is not None else file_dim
    return RenderOutcome(svg=render_cover_svg(cover, height=height, embed_dim=dim, width=width))


@dataclass(frozen=True)
class VerifyOutcome:
    lines: List[CheckLine]
    all_passed: bool

    @property
    def report_text(self) -> str:
        return suites.format_report(self.lines)


def verify_op(suite: str, options: Optional[Dict[str, int]] = None) -> VerifyOutcome:
    """Run one suite, passing only the options its signature accepts."""
    options = {k: v for k, v in (options or {}).items() if v is not None}
    if suite == "all":
        kwargs = {}
    else:
        if suite not in suites.SUITES:
            raise ParseError(
                f"unknown suite {suite!r}; available: {', '.join(sorted(suites.SUITES))}, all"
            )
        accepted = inspect.signature(suites.SUITES[suite]).parameters
        kwargs = {k: v for k, v in options.items() if k in accepted}
    lines = suites.run_suite(suite, **kwargs)
    return VerifyOutcome(lines=lines, all_passed=suites.all_passed(lines))
