"""Exact rational scalars: parsing, formatting, and certified big-power comparisons.

Public values in this package are `fractions.Fraction` (always normalized,
positive denominator).  The section construction, however, produces powers
delta^(k-1) whose exact numerators and denominators reach hundreds of millions
of digits at deep levels.  Materializing those as Fractions is pointless; what
the construction needs is exact *comparisons*.  This module provides:

  * ``Enclosure`` -- a closed rational interval certified to contain a value;
  * ``pow_enclosure`` / ``geometric_sum_enclosure`` -- outward-rounded dyadic
    interval evaluation of the two expensive primitives;
  * ``ExactScalar`` -- a positive scalar knowable through enclosures at any
    precision, with an exact (possibly huge) fallback representation;
  * ``certified_cmp`` -- adaptive-precision comparison that is exact in
    outcome: enclosures decide when they separate, otherwise the exact
    representations are cross-multiplied.

Exact fallbacks run on ``RawRatio`` pairs of backend integers with
normalization deliberately skipped: gcd runs on the power denominators would
dominate everything, and the results never leave the kernel.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from typing import Callable, Optional, Union

try:
    from gmpy2 import mpq as fastq, mpz as _mpz
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    fastq = Fraction
    _mpz = int


def fraction_from_fast(value) -> Fraction:
    """Fraction from a fastq value.

    gmpy2.mpq is registered as numbers.Rational and is always canonical, so
    Fraction(value) takes the trusted-rational path: no gcd is recomputed and
    the components stay GMP integers, which keeps later comparisons (plain
    cross-multiplications) at GMP speed on huge endpoints.
    """
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def to_fastq(value):
    """fastq from any rational; goes through the components because
    gmpy2.mpq rejects Fractions whose internals are already mpz."""
    if fastq is Fraction:
        return Fraction(value)
    return fastq(value.numerator, value.denominator)

# CPython refuses int<->str conversions beyond 4300 digits by default; cover
# endpoints at deep section levels legitimately exceed that.
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(2_000_000_000)

ScalarLike = Union["ExactScalar", Fraction, int]

_PREC_LADDER = (96, 192, 384, 768, 1536, 3072)


def parse_rational(text: str, require_slash: bool = False) -> Fraction:
    """Parse ``p/q`` (or a bare integer unless require_slash) into a Fraction."""
    from .errors import ParseError

    text = text.strip()
    if "/" in text:
        parts = text.split("/")
        if len(parts) != 2:
            raise ParseError(f"malformed rational {text!r}")
        num_s, den_s = parts
    else:
        if require_slash:
            raise ParseError(f"malformed rational {text!r} (expected p/q)")
        num_s, den_s = text, "1"
    try:
        num = int(num_s)
        den = int(den_s)
    except ValueError as exc:
        raise ParseError(f"malformed rational {text!r}") from exc
    if den <= 0:
        raise ParseError(f"malformed rational {text!r} (denominator must be positive)")
    return Fraction(num, den)


def format_rational(value: Fraction) -> str:
    """Lowest-terms ``p/q`` text; the ``/1`` is kept for integers."""
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def decimal_approx(value: Fraction, significant: int = 12) -> str:
    """Deterministic decimal rendering with the given significant digits.

    Integer arithmetic only (half-up ties); no float ever touches the value,
    so equal inputs render byte-identically on every platform.
    """
    if significant < 1:
        raise ValueError("need at least one significant digit")
    q = Fraction(value)
    if q == 0:
        return "0"
    sign = "-" if q < 0 else ""
    q = abs(q)
    # exponent e with 10^e <= q < 10^(e+1)
    e = len(str(q.numerator)) - len(str(q.denominator))
    while Fraction(10) ** e > q:
        e -= 1
    while Fraction(10) ** (e + 1) <= q:
        e += 1
    scaled = q * Fraction(10) ** (significant - 1 - e)
    digits = (2 * scaled.numerator + scaled.denominator) // (2 * scaled.denominator)
    if digits >= 10 ** significant:  # rounding carried into a new digit
        digits //= 10
        e += 1
    text = str(digits)
    point = e + 1  # digits before the decimal point
    if 0 < point <= significant:
        out = text[:point] + "." + text[point:]
    elif point <= 0:
        out = "0." + "0" * (-point) + text
    else:
        out = text + "0" * (point - significant)
    if "." in out:
        out = out.rstrip("0").rstrip(".")
    return sign + out


class RawRatio:
    """Exact rational as a pair of backend integers, *not* normalized.

    Denominator kept positive.  Only comparison, sign and ring operations are
    provided; conversion to Fraction normalizes and should only be used on
    values known to be small.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        if den == 0:
            raise ZeroDivisionError("RawRatio with zero denominator")
        if den < 0:
            num, den = -num, -den
        self.num = num
        self.den = den

    @classmethod
    def from_fraction(cls, q: Fraction) -> "RawRatio":
        return cls(_mpz(q.numerator), _mpz(q.denominator))

    def add(self, other: "RawRatio") -> "RawRatio":
        return RawRatio(self.num * other.den + other.num * self.den, self.den * other.den)

    def sub(self, other: "RawRatio") -> "RawRatio":
        return RawRatio(self.num * other.den - other.num * self.den, self.den * other.den)

    def mul(self, other: "RawRatio") -> "RawRatio":
        return RawRatio(self.num * other.num, self.den * other.den)

    def div(self, other: "RawRatio") -> "RawRatio":
        return RawRatio(self.num * other.den, self.den * other.num)

    def compare(self, other: "RawRatio") -> int:
        lhs = self.num * other.den
        rhs = other.num * self.den
        if lhs < rhs:
            return -1
        if lhs > rhs:
            return 1
        return 0

    def sign(self) -> int:
        if self.num < 0:
            return -1
        if self.num > 0:
            return 1
        return 0

    def to_fraction(self) -> Fraction:
        return Fraction(int(self.num), int(self.den))


class Enclosure:
    """Closed interval [lo, hi] of Fractions certified to contain a value."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Fraction, hi: Optional[Fraction] = None):
        if hi is None:
            hi = lo
        if lo > hi:
            raise ValueError("enclosure with lo > hi")
        self.lo = lo
        self.hi = hi

    def __repr__(self):
        return f"Enclosure({self.lo}, {self.hi})"

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def _coerce(other) -> "Enclosure":
        if isinstance(other, Enclosure):
            return other
        return Enclosure(Fraction(other))

    def __add__(self, other) -> "Enclosure":
        other = Enclosure._coerce(other)
        return Enclosure(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other) -> "Enclosure":
        other = Enclosure._coerce(other)
        return Enclosure(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other) -> "Enclosure":
        return Enclosure._coerce(other) - self

    def __mul__(self, other) -> "Enclosure":
        other = Enclosure._coerce(other)
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Enclosure(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Enclosure":
        other = Enclosure._coerce(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("enclosure division by interval containing zero")
        quotients = (
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        )
        return Enclosure(min(quotients), max(quotients))

    def __rtruediv__(self, other) -> "Enclosure":
        return Enclosure._coerce(other) / self

    def strictly_less_than(self, other) -> bool:
        other = Enclosure._coerce(other)
        return self.hi < other.lo

    def strictly_greater_than(self, other) -> bool:
        other = Enclosure._coerce(other)
        return self.lo > other.hi


def pow_enclosure(base: Fraction, exponent: int, prec: int = 128) -> Enclosure:
    """Outward-rounded [lo, hi] containing base**exponent, base > 0, exponent >= 0.

    Square-and-multiply on prec-bit dyadic bounds; cost is O(log exponent)
    small-integer multiplications regardless of how huge the exact power is.
    """
    if base <= 0:
        raise ValueError("pow_enclosure requires a positive base")
    if exponent < 0:
        raise ValueError("pow_enclosure requires a nonnegative exponent")
    if exponent == 0:
        return Enclosure(Fraction(1))
    scale = 1 << prec
    p = _mpz(base.numerator)
    q = _mpz(base.denominator)
    base_lo = (p * scale) // q
    base_hi = -((-(p * scale)) // q)
    lo, hi = base_lo, base_hi
    for bit in bin(exponent)[3:]:  # skip the leading 1; lo/hi start at base
        lo = (lo * lo) >> prec
        hi = -((-(hi * hi)) >> prec)
        if bit == "1":
            lo = (lo * base_lo) >> prec
            hi = -((-(hi * base_hi)) >> prec)
    return Enclosure(Fraction(int(lo), scale), Fraction(int(hi), scale))


def pow_fraction(base: Fraction, exponent: int) -> Fraction:
    """Exact base**exponent through backend integer powers."""
    if exponent < 0:
        return 1 / pow_fraction(base, -exponent)
    num = _mpz(base.numerator) ** exponent
    den = _mpz(base.denominator) ** exponent
    # base is normalized, so the powers are coprime; skip the gcd.
    return Fraction(int(num), int(den))


def pow_raw(base: Fraction, exponent: int) -> RawRatio:
    """Exact base**exponent as an unnormalized backend pair (for monsters)."""
    if exponent < 0:
        raise ValueError("pow_raw requires a nonnegative exponent")
    return RawRatio(_mpz(base.numerator) ** exponent, _mpz(base.denominator) ** exponent)


def geometric_sum_enclosure(ratio: Fraction, terms: int, prec: int = 128) -> Enclosure:
    """Enclosure of 1 + ratio + ... + ratio**(terms-1) for ratio in (0, 1)."""
    if not 0 < ratio < 1:
        raise ValueError("geometric_sum_enclosure requires ratio in (0, 1)")
    if terms <= 0:
        return Enclosure(Fraction(0))
    power = pow_enclosure(ratio, terms, prec)
    return (1 - power) / Enclosure(1 - ratio)


def geometric_sum_raw(ratio: Fraction, terms: int) -> RawRatio:
    """Exact 1 + ratio + ... + ratio**(terms-1) as an unnormalized pair."""
    if terms <= 0:
        return RawRatio(_mpz(0), _mpz(1))
    p = _mpz(ratio.numerator)
    q = _mpz(ratio.denominator)
    # (q^terms - p^terms) / (q^(terms-1) * (q - p))
    return RawRatio(q ** terms - p ** terms, (q ** (terms - 1)) * (q - p))


class ExactScalar:
    """A positive exact scalar reachable through enclosures at any precision.

    ``enclosure(prec)`` is always cheap; ``exact()`` may build huge integers
    and is only hit when enclosures fail to separate two values.
    """

    __slots__ = ("_enclose", "_exact_fn", "_exact_cache", "_best", "desc")

    def __init__(
        self,
        enclose: Callable[[int], Enclosure],
        exact: Callable[[], RawRatio],
        desc: str = "",
    ):
        self._enclose = enclose
        self._exact_fn = exact
        self._exact_cache: Optional[RawRatio] = None
        self._best: Optional[Enclosure] = None
        self.desc = desc

    def __repr__(self):
        enc = self.enclosure(64)
        mid = (enc.lo + enc.hi) / 2
        return f"ExactScalar({self.desc or '?'} ~ {float(mid):.6g})"

    @classmethod
    def from_fraction(cls, value) -> "ExactScalar":
        q = Fraction(value)
        return cls(lambda prec: Enclosure(q), lambda: RawRatio.from_fraction(q), desc=str(q))

    @classmethod
    def coerce(cls, value: ScalarLike) -> "ExactScalar":
        if isinstance(value, ExactScalar):
            return value
        return cls.from_fraction(value)

    def enclosure(self, prec: int = 128) -> Enclosure:
        if self._exact_cache is not None and self._exact_cache.den.bit_length() < 1 << 20:
            q = self._exact_cache.to_fraction()
            return Enclosure(q)
        enc = self._enclose(prec)
        if self._best is not None:
            lo = max(enc.lo, self._best.lo)
            hi = min(enc.hi, self._best.hi)
            enc = Enclosure(lo, hi)
        self._best = enc
        return enc

    def exact(self) -> RawRatio:
        if self._exact_cache is None:
            self._exact_cache = self._exact_fn()
        return self._exact_cache

    def exact_fraction(self) -> Fraction:
        """Normalized exact value. Only call when the value is known small."""
        return self.exact().to_fraction()

    def _combine(self, other: ScalarLike, enc_op, raw_op, desc: str) -> "ExactScalar":
        other = ExactScalar.coerce(other)
        return ExactScalar(
            lambda prec: enc_op(self.enclosure(prec), other.enclosure(prec)),
            lambda: raw_op(self.exact(), other.exact()),
            desc=desc,
        )

    def __add__(self, other: ScalarLike) -> "ExactScalar":
        return self._combine(other, lambda a, b: a + b, RawRatio.add, f"({self.desc}+)")

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> "ExactScalar":
        return self._combine(other, lambda a, b: a - b, RawRatio.sub, f"({self.desc}-)")

    def __rsub__(self, other: ScalarLike) -> "ExactScalar":
        return ExactScalar.coerce(other) - self

    def __mul__(self, other: ScalarLike) -> "ExactScalar":
        return self._combine(other, lambda a, b: a * b, RawRatio.mul, f"({self.desc}*)")

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> "ExactScalar":
        return self._combine(other, lambda a, b: a / b, RawRatio.div, f"({self.desc}/)")

    def __rtruediv__(self, other: ScalarLike) -> "ExactScalar":
        return ExactScalar.coerce(other) / self


def certified_cmp(a: ScalarLike, b: ScalarLike) -> int:
    """Exact three-way comparison: enclosures first, cross-multiplied exact last."""
    sa = ExactScalar.coerce(a)
    sb = ExactScalar.coerce(b)
    for prec in _PREC_LADDER:
        ea = sa.enclosure(prec)
        eb = sb.enclosure(prec)
        if ea.hi < eb.lo:
            return -1
        if eb.hi < ea.lo:
            return 1
        if ea.lo == ea.hi == eb.lo == eb.hi:
            return 0
    return sa.exact().compare(sb.exact())


def certified_lt(a: ScalarLike, b: ScalarLike) -> bool:
    return certified_cmp(a, b) < 0


def certified_le(a: ScalarLike, b: ScalarLike) -> bool:
    return certified_cmp(a, b) <= 0
