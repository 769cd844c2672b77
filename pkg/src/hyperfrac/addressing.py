"""Prefix-sum addressing of the decimal Cantor set.

The decimal Cantor set is { sum_k x_k * 9/10^k : x_k in {0,1} }: at every
stage the middle (0.1, 0.9) portion of each interval is removed, leaving a
tenth on each side.  Points are addressed by binary words through increments
d_s indexed by finite words s; the prefix sums sum_n d_{x|n} enumerate the
set.  This module implements the increment tables, their two structural
properties (the series identity and strict lex monotonicity at fixed length),
and exact stage covers.

Words are tuples over {0,1}; infinite sequences are ``BitStream`` values with
a finite head and an eventually-constant or periodic tail, which keeps every
infinite sum an exact rational via geometric closed forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, List, Optional, Tuple

from .errors import ParseError
from .intervals import CompactCover, RationalInterval

BitWord = Tuple[int, ...]

ZERO = Fraction(0)


def word_from_text(text: str) -> BitWord:
    text = text.strip()
    if any(ch not in "01" for ch in text):
        raise ParseError(f"bad bit word {text!r}")
    return tuple(int(ch) for ch in text)


def word_to_text(word: BitWord) -> str:
    return "".join(str(b) for b in word)


def all_words(length: int) -> Iterator[BitWord]:
    """All words of the given length in lexicographic order."""
    for value in range(1 << length):
        yield tuple((value >> (length - 1 - k)) & 1 for k in range(length))


@dataclass(frozen=True)
class BitStream:
    """Finitely described infinite 0/1 sequence: finite head + tail rule.

    tail_kind is ``("const", 0 | 1)`` or ``("periodic", word)``.  Bits are
    1-indexed to match the addressing formulas.
    """

    head: BitWord
    tail_kind: Tuple

    def __post_init__(self):
        kind = self.tail_kind[0]
        if kind == "const":
            if self.tail_kind[1] not in (0, 1):
                raise ValueError("const tail must be 0 or 1")
        elif kind == "periodic":
            word = self.tail_kind[1]
            if not word or any(b not in (0, 1) for b in word):
                raise ValueError("periodic tail needs a nonempty 0/1 word")
        else:
            raise ValueError(f"unknown tail kind {kind!r}")

    @classmethod
    def constant(cls, bit: int) -> "BitStream":
        return cls((), ("const", bit))

    @classmethod
    def from_word(cls, word: BitWord, tail_bit: int = 0) -> "BitStream":
        return cls(tuple(word), ("const", tail_bit))

    def bit(self, index: int) -> int:
        """1-indexed bit."""
        if index < 1:
            raise ValueError("bit index must be >= 1")
        if index <= len(self.head):
            return self.head[index - 1]
        if self.tail_kind[0] == "const":
            return self.tail_kind[1]
        word = self.tail_kind[1]
        return word[(index - len(self.head) - 1) % len(word)]

    def prefix(self, length: int) -> BitWord:
        return tuple(self.bit(i) for i in range(1, length + 1))

    @property
    def eventually_constant(self) -> Optional[int]:
        if self.tail_kind[0] == "const":
            return self.tail_kind[1]
        word = self.tail_kind[1]
        if all(b == word[0] for b in word):
            return word[0]
        return None

    @property
    def head_length(self) -> int:
        return len(self.head)

    def to_text(self) -> str:
        head = word_to_text(self.head)
        if self.tail_kind[0] == "const":
            return f"{head}:{self.tail_kind[1]}const"
        return f"{head}:period({word_to_text(self.tail_kind[1])})"

    @classmethod
    def parse(cls, text: str) -> "BitStream":
        text = text.strip()
        if ":" not in text:
            raise ParseError(f"bad bit stream {text!r} (expected <head>:<tail>)")
        head_s, tail_s = text.split(":", 1)
        head = word_from_text(head_s) if head_s else ()
        try:
            if tail_s in ("0const", "1const"):
                return cls(head, ("const", int(tail_s[0])))
            if tail_s.startswith("period(") and tail_s.endswith(")"):
                return cls(head, ("periodic", word_from_text(tail_s[len("period("):-1])))
        except ValueError as exc:
            raise ParseError(f"bad bit-stream tail {tail_s!r}") from exc
        raise ParseError(f"bad bit-stream tail {tail_s!r}")


# --- increment tables ---------------------------------------------------------

def e_term(s: BitWord, i: int) -> Fraction:
    """i-th term of the sequence e^s.

    Zero when s is empty or ends in 0, and for the first lh(s)-1 slots;
    afterwards the terms halve from 9/10^lh(s) * 1/2.
    """
    if i < 1:
        raise ValueError("e-term index must be >= 1")
    n = len(s)
    if n == 0 or s[-1] == 0 or i < n:
        return ZERO
    return Fraction(9, 10 ** n) * Fraction(1, 2 ** (i - n + 1))


def d_value(s: BitWord) -> Fraction:
    """Increment d_s = sum of the lh(s)-th terms of e over all prefixes of s."""
    n = len(s)
    return sum((e_term(s[:k], n) for k in range(1, n + 1)), ZERO)


def d_value_closed(s: BitWord) -> Fraction:
    """Closed form 9/2^(n+1) * sum_{k: s_k=1} 5^-k (independent cross-check)."""
    n = len(s)
    weight = sum((Fraction(1, 5 ** (k + 1)) for k, b in enumerate(s) if b), ZERO)
    return Fraction(9, 2 ** (n + 1)) * weight


def digit_sum_limit(x: BitStream) -> Fraction:
    """sum_{k: x_k = 1} 9/10^k in closed form (geometric series for tails)."""
    m = x.head_length
    total = sum((Fraction(9, 10 ** (k + 1)) for k, b in enumerate(x.head) if b), ZERO)
    if x.tail_kind[0] == "const":
        if x.tail_kind[1] == 1:
            total += Fraction(1, 10 ** m)
        return total
    word = x.tail_kind[1]
    r = len(word)
    block = sum(
        (Fraction(9 * 10 ** (r - j), 10 ** r - 1) for j, b in enumerate(word, start=1) if b),
        ZERO,
    )
    return total + block / Fraction(10 ** m)


def address_sum(x: BitStream, n_terms: int) -> Tuple[Fraction, Fraction]:
    """(partial, exact_limit): sum_{n <= N} d_{x|n} and the full digit sum."""
    partial = sum((d_value(x.prefix(n)) for n in range(1, n_terms + 1)), ZERO)
    return partial, digit_sum_limit(x)


def series_total(x: BitStream) -> Fraction:
    """Exact sum_{n >= 1} d_{x|n} for streams with eventually-constant tails.

    Beyond the head, d_{x|n} is A*2^-n or A*2^-n + B*10^-n depending on the
    constant tail bit, so the tail of the series is one or two geometric sums.
    """
    bit = x.eventually_constant
    if bit is None:
        raise ValueError("series_total needs an eventually-constant stream")
    m = x.head_length
    partial = sum((d_value(x.prefix(n)) for n in range(1, m + 1)), ZERO)
    w_head = sum((Fraction(1, 5 ** (k + 1)) for k, b in enumerate(x.head) if b), ZERO)
    if bit == 0:
        a_coef = Fraction(9, 2) * w_head
        b_coef = ZERO
    else:
        a_coef = Fraction(9, 2) * (w_head + Fraction(1, 4 * 5 ** m))
        b_coef = Fraction(-9, 8)
    tail = a_coef * Fraction(1, 2 ** m) + b_coef * Fraction(1, 9 * 10 ** m)
    return partial + tail


# --- stage covers -------------------------------------------------------------

def cantor_cover(depth: int) -> CompactCover:
    """The 2^depth closed intervals of the depth-th construction stage.

    Each interval has length 10^-depth; the cover is within 10^-depth of the
    ideal set, recorded as its resolution.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    return CompactCover(
        [iv for _, iv in addressed_cantor_cover(depth)],
        Fraction(1, 10 ** depth),
    )


def addressed_cantor_cover(depth: int) -> List[Tuple[BitWord, RationalInterval]]:
    """Stage intervals labeled by the digit word that selects them."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    length = Fraction(1, 10 ** depth)
    out = []
    for word in all_words(depth):
        lo = sum((Fraction(9, 10 ** (k + 1)) for k, b in enumerate(word) if b), ZERO)
        out.append((word, RationalInterval(lo, lo + length)))
    return out


# --- structural property checks ----------------------------------------------

@dataclass(frozen=True)
class SeriesIdentityReport:
    passed: bool
    n_terms: int
    partial: Fraction
    closed_form: Fraction
    limit: Fraction
    discrepancy: Fraction
    tail_bound: Fraction


def verify_series_identity(x: BitStream, n_terms: int) -> SeriesIdentityReport:
    """Check the partial-sum closed form and the tail bound, exactly.

    sum_{n<=N} d_{x|n} must equal sum_{k<=N, x_k=1} (9/10^k)(1 - 2^(k-N-1)),
    and the partial sum must sit within (9/8)*2^-N of the full digit sum.
    The bound is tight: the all-ones sequence realizes 2^-N*(9/8 - 5^-N/8).
    """
    partial, limit = address_sum(x, n_terms)
    closed = sum(
        (
            Fraction(9, 10 ** k) * (1 - Fraction(1, 2 ** (n_terms + 1 - k)))
            for k in range(1, n_terms + 1)
            if x.bit(k) == 1
        ),
        ZERO,
    )
    discrepancy = abs(partial - limit)
    tail_bound = Fraction(9, 8) * Fraction(1, 2 ** n_terms)
    passed = partial == closed and discrepancy <= tail_bound
    return SeriesIdentityReport(passed, n_terms, partial, closed, limit, discrepancy, tail_bound)


def chain_lower_bound(n: int, m: int) -> Tuple[Fraction, Fraction]:
    """(lhs, rhs) of the worst-case increment comparison at first-divergence m.

    lhs = 9/10^m * 2^-(n-m+1) is the increment a leading 1 at position m
    contributes; rhs is the largest total the remaining positions m+1..n can
    contribute.  Strict lhs > rhs is what makes lex order carry over to the
    increments.
    """
    if not 1 <= m < n:
        raise ValueError("need 1 <= m < n")
    lhs = Fraction(9, 10 ** m) * Fraction(1, 2 ** (n - m + 1))
    rhs = sum(
        (Fraction(9, 10 ** i) * Fraction(1, 2 ** (n - i + 1)) for i in range(m + 1, n + 1)),
        ZERO,
    )
    return lhs, rhs


def chain_extremal_words(n: int, m: int) -> Tuple[BitWord, BitWord]:
    """The pair realizing the worst case: t = 0^(m-1) 1 0^(n-m), s = 0^(m-1) 0 1^(n-m)."""
    t = (0,) * (m - 1) + (1,) + (0,) * (n - m)
    s = (0,) * (m - 1) + (0,) + (1,) * (n - m)
    return s, t


@dataclass(frozen=True)
class LexOrderReport:
    passed: bool
    maxlen: int
    pairs_checked: int
    failures: Tuple[Tuple[BitWord, BitWord, Fraction, Fraction], ...]
    chain_passed: bool


def verify_lex_order(maxlen: int, exhaustive_pairs: bool = True) -> LexOrderReport:
    """d_s < d_t for every equal-length lex-ordered pair up to maxlen.

    Also replays the worst-case chain: for every 1 <= m < n <= maxlen the
    leading increment strictly dominates the competing tail sum, and the
    extremal word pair attains that bound exactly.
    """
    if maxlen > 12:
        raise ValueError("exhaustive budget is maxlen <= 12")
    failures = []
    pairs = 0
    for length in range(1, maxlen + 1):
        values = [(word, d_value(word)) for word in all_words(length)]
        if exhaustive_pairs:
            for (s, ds), (t, dt) in combinations(values, 2):
                pairs += 1
                if not ds < dt:  # generation order is lex order
                    failures.append((s, t, ds, dt))
        else:
            for (s, ds), (t, dt) in zip(values, values[1:]):
                pairs += 1
                if not ds < dt:
                    failures.append((s, t, ds, dt))
    chain_ok = True
    for n in range(2, maxlen + 1):
        for m in range(1, n):
            lhs, rhs = chain_lower_bound(n, m)
            s, t = chain_extremal_words(n, m)
            if not (lhs > rhs and d_value(t) - d_value(s) == lhs - rhs):
                chain_ok = False
    return LexOrderReport(
        passed=not failures and chain_ok,
        maxlen=maxlen,
        pairs_checked=pairs,
        failures=tuple(failures[:5]),
        chain_passed=chain_ok,
    )
