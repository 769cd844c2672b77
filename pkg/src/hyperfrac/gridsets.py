"""Finitely described subsets of N x N and their column combinatorics.

A ``GridSet`` holds finitely many explicit column descriptors (finite or
cofinite subsets of N), a default descriptor for unlisted columns below the
last explicit one, and a tail rule for the columns beyond: all-empty,
all-full, or repeat-the-last-descriptor.  The repeat rule is what keeps the
class closed under the column-prefix-union map, whose output columns are
eventually constant even for finite inputs.

Everything here is decidable from the descriptors: whether all columns are
finite, whether infinitely many are, complements, prefix unions.  Sets
outside this class are simply not representable; nothing is approximated.

Rows and columns are 1-indexed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from .errors import ParseError

EMPTY_DEFAULT = "empty"
FULL_DEFAULT = "full"
TAIL_REPEAT = "repeat"


@dataclass(frozen=True)
class ColumnDesc:
    """One column: a finite subset of N, or a cofinite one given by exclusions."""

    kind: str  # "finite" | "cofinite"
    members: frozenset

    def __post_init__(self):
        if self.kind not in ("finite", "cofinite"):
            raise ValueError(f"bad column kind {self.kind!r}")
        if any((not isinstance(m, int)) or m < 1 for m in self.members):
            raise ValueError("column members must be positive integers")

    @classmethod
    def finite(cls, members=()) -> "ColumnDesc":
        return cls("finite", frozenset(members))

    @classmethod
    def cofinite(cls, excluded=()) -> "ColumnDesc":
        return cls("cofinite", frozenset(excluded))

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def contains(self, m: int) -> bool:
        if self.kind == "finite":
            return m in self.members
        return m not in self.members

    def complement(self) -> "ColumnDesc":
        return ColumnDesc("cofinite" if self.kind == "finite" else "finite", self.members)

    def union(self, other: "ColumnDesc") -> "ColumnDesc":
        if self.kind == "finite" and other.kind == "finite":
            return ColumnDesc.finite(self.members | other.members)
        if self.kind == "cofinite" and other.kind == "cofinite":
            return ColumnDesc.cofinite(self.members & other.members)
        if self.kind == "cofinite":
            return ColumnDesc.cofinite(self.members - other.members)
        return ColumnDesc.cofinite(other.members - self.members)

    def subset_of(self, other: "ColumnDesc") -> bool:
        if self.kind == "finite":
            return all(other.contains(m) for m in self.members)
        if other.kind == "finite":
            return False  # cofinite sets are infinite
        return other.members <= self.members

    def __eq__(self, other):
        return (
            isinstance(other, ColumnDesc)
            and self.kind == other.kind
            and self.members == other.members
        )

    def __hash__(self):
        return hash((self.kind, self.members))


_EMPTY_COLUMN = ColumnDesc.finite()
_FULL_COLUMN = ColumnDesc.cofinite()


class GridSet:
    """A subset of N x N with finitely many explicit columns plus a tail rule."""

    __slots__ = ("columns", "default", "tail")

    def __init__(self, columns: Optional[Dict[int, ColumnDesc]] = None,
                 default: str = EMPTY_DEFAULT, tail: Optional[str] = None):
        columns = dict(columns or {})
        if any((not isinstance(n, int)) or n < 1 for n in columns):
            raise ValueError("column indices must be positive integers")
        if default not in (EMPTY_DEFAULT, FULL_DEFAULT):
            raise ValueError(f"bad default {default!r}")
        if tail is None:
            tail = default
        if tail not in (EMPTY_DEFAULT, FULL_DEFAULT, TAIL_REPEAT):
            raise ValueError(f"bad tail rule {tail!r}")
        self.columns = dict(sorted(columns.items()))
        self.default = default
        self.tail = tail

    def __repr__(self):
        return f"GridSet({len(self.columns)} explicit, default={self.default}, tail={self.tail})"

    def __eq__(self, other):
        if not isinstance(other, GridSet):
            return NotImplemented
        return (
            self.columns == other.columns
            and self.default == other.default
            and self.tail == other.tail
        )

    def __hash__(self):
        return hash((tuple(self.columns.items()), self.default, self.tail))

    @classmethod
    def empty(cls) -> "GridSet":
        return cls({}, EMPTY_DEFAULT)

    @classmethod
    def full(cls) -> "GridSet":
        return cls({}, FULL_DEFAULT)

    @property
    def max_explicit(self) -> int:
        return max(self.columns) if self.columns else 0

    def _default_column(self) -> ColumnDesc:
        return _EMPTY_COLUMN if self.default == EMPTY_DEFAULT else _FULL_COLUMN

    def _tail_column(self) -> ColumnDesc:
        if self.tail == EMPTY_DEFAULT:
            return _EMPTY_COLUMN
        if self.tail == FULL_DEFAULT:
            return _FULL_COLUMN
        if self.columns:
            return self.columns[self.max_explicit]
        return self._default_column()

    def column(self, n: int) -> ColumnDesc:
        if n < 1:
            raise ValueError("column index must be >= 1")
        if n in self.columns:
            return self.columns[n]
        if n > self.max_explicit:
            return self._tail_column()
        return self._default_column()

    def contains(self, n: int, m: int) -> bool:
        return self.column(n).contains(m)

    def subset_of(self, other: "GridSet") -> bool:
        """Descriptor-level containment, decidable column by column."""
        horizon = max(self.max_explicit, other.max_explicit) + 1
        return all(self.column(n).subset_of(other.column(n)) for n in range(1, horizon + 1))


# --- decidable membership in the two target families ---------------------------

def all_columns_finite(g: GridSet) -> bool:
    """Every vertical section is finite."""
    if not all(desc.is_finite for desc in g.columns.values()):
        return False
    if g.max_explicit > 0 and not g._default_column().is_finite:
        # an unlisted column below the last explicit one carries the default
        if any(n not in g.columns for n in range(1, g.max_explicit)):
            return False
    return g._tail_column().is_finite


def infinitely_many_finite_columns(g: GridSet) -> bool:
    """Are infinitely many vertical sections finite?

    Only the tail rule matters: explicit columns are finitely many, so the
    answer is whether the eventual column descriptor is finite.
    """
    return g._tail_column().is_finite


def infinitely_many_cofinite_columns(g: GridSet) -> bool:
    """Are infinitely many vertical sections cofinite?"""
    return not g._tail_column().is_finite


def complement(g: GridSet) -> GridSet:
    """Columnwise complement; finite and cofinite descriptors swap."""
    flipped = {n: desc.complement() for n, desc in g.columns.items()}
    new_default = FULL_DEFAULT if g.default == EMPTY_DEFAULT else EMPTY_DEFAULT
    if g.tail == TAIL_REPEAT:
        new_tail = TAIL_REPEAT
    else:
        new_tail = FULL_DEFAULT if g.tail == EMPTY_DEFAULT else EMPTY_DEFAULT
    return GridSet(flipped, new_default, new_tail)


def column_prefix_union(g: GridSet) -> GridSet:
    """The map whose n-th column is the union of input columns 1..n.

    Output columns are nondecreasing and eventually constant, encoded
    explicitly up to one column past the input's explicit range with a
    repeat-last tail.
    """
    horizon = g.max_explicit + 1  # one extra column absorbs the tail rule
    running = _EMPTY_COLUMN
    out: Dict[int, ColumnDesc] = {}
    for n in range(1, horizon + 1):
        running = running.union(g.column(n))
        out[n] = running
    return GridSet(out, EMPTY_DEFAULT, TAIL_REPEAT)


@dataclass(frozen=True)
class PreimageReport:
    passed: bool
    instances: int
    failures: Tuple[GridSet, ...]


def preimage_identity_holds(b: GridSet) -> bool:
    """One instance of the identity: the prefix-union image has infinitely
    many finite columns exactly when every input column is finite."""
    return infinitely_many_finite_columns(column_prefix_union(b)) == all_columns_finite(b)


def complement_identity_holds(b: GridSet) -> bool:
    """Infinitely many finite columns in b <=> infinitely many cofinite
    columns in the complement of b."""
    return infinitely_many_finite_columns(b) == infinitely_many_cofinite_columns(complement(b))


def verify_preimage_identity(instances) -> PreimageReport:
    """Run both identities over an iterable of grid sets."""
    failures: List[GridSet] = []
    count = 0
    for b in instances:
        count += 1
        if not (preimage_identity_holds(b) and complement_identity_holds(b)):
            failures.append(b)
    return PreimageReport(passed=not failures, instances=count, failures=tuple(failures[:5]))


# --- instance generators --------------------------------------------------------

def exhaustive_window_gridsets(cols: int, rows: int) -> Iterator[GridSet]:
    """All grid sets determined by a cols x rows membership window and a
    uniform default outside it, for both defaults."""
    row_range = range(1, rows + 1)
    for default in (EMPTY_DEFAULT, FULL_DEFAULT):
        for pattern in range(1 << (cols * rows)):
            columns = {}
            for n in range(1, cols + 1):
                inside = frozenset(
                    m for m in row_range if (pattern >> ((n - 1) * rows + (m - 1))) & 1
                )
                if default == EMPTY_DEFAULT:
                    columns[n] = ColumnDesc.finite(inside)
                else:
                    columns[n] = ColumnDesc.cofinite(frozenset(row_range) - inside)
            yield GridSet(columns, default)


def random_gridset(rng: random.Random, max_cols: int = 6, max_member: int = 12) -> GridSet:
    """A random descriptor-level instance (for seeded randomized suites)."""
    columns = {}
    for n in range(1, rng.randint(0, max_cols) + 1):
        if rng.random() < 0.5:
            continue  # leave some columns to the default
        members = frozenset(
            rng.randint(1, max_member) for _ in range(rng.randint(0, 4))
        )
        if rng.random() < 0.5:
            columns[n] = ColumnDesc.finite(members)
        else:
            columns[n] = ColumnDesc.cofinite(members)
    default = rng.choice((EMPTY_DEFAULT, FULL_DEFAULT))
    tail = rng.choice((EMPTY_DEFAULT, FULL_DEFAULT, TAIL_REPEAT))
    return GridSet(columns, default, tail)


# --- textual grid-set format -----------------------------------------------------
#
#   gridset v1 default=<empty|full> [tail=<empty|full|repeat>]
#   col <n> finite <m1> <m2> ...
#   col <n> cofinite <m1> ...

HEADER_PREFIX = "gridset v1"


def gridset_to_text(g: GridSet) -> str:
    header = f"{HEADER_PREFIX} default={g.default}"
    if g.tail != g.default:
        header += f" tail={g.tail}"
    lines = [header]
    for n, desc in g.columns.items():
        members = " ".join(str(m) for m in sorted(desc.members))
        lines.append(f"col {n} {desc.kind}{(' ' + members) if members else ''}")
    return "\n".join(lines) + "\n"


def gridset_from_text(text: str) -> GridSet:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ParseError("empty grid-set file")
    header = lines[0]
    if not header.startswith(HEADER_PREFIX):
        raise ParseError(f"bad grid-set header: {header!r}")
    default = None
    tail = None
    for token in header[len(HEADER_PREFIX):].split():
        if token.startswith("default="):
            default = token[len("default="):]
        elif token.startswith("tail="):
            tail = token[len("tail="):]
        else:
            raise ParseError(f"unknown header token {token!r}")
    if default not in (EMPTY_DEFAULT, FULL_DEFAULT):
        raise ParseError(f"bad or missing default in header: {header!r}")
    if tail is not None and tail not in (EMPTY_DEFAULT, FULL_DEFAULT, TAIL_REPEAT):
        raise ParseError(f"bad tail rule in header: {header!r}")
    columns: Dict[int, ColumnDesc] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) < 3 or parts[0] != "col" or parts[2] not in ("finite", "cofinite"):
            raise ParseError(f"line {lineno}: expected 'col <n> finite|cofinite ...'")
        try:
            n = int(parts[1])
            members = frozenset(int(p) for p in parts[3:])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: bad integer in {line!r}") from exc
        if n < 1 or any(m < 1 for m in members):
            raise ParseError(f"line {lineno}: indices must be positive")
        if n in columns:
            raise ParseError(f"line {lineno}: duplicate column {n}")
        columns[n] = ColumnDesc(parts[2], members)
    try:
        return GridSet(columns, default, tail)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
