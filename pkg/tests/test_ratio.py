"""The exact-scalar kernel: enclosures, certified comparisons, raw ratios."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from hyperfrac.errors import ParseError
from hyperfrac.ratio import (
    Enclosure,
    ExactScalar,
    RawRatio,
    certified_cmp,
    certified_le,
    certified_lt,
    format_rational,
    fraction_from_fast,
    geometric_sum_enclosure,
    geometric_sum_raw,
    parse_rational,
    pow_enclosure,
    pow_fraction,
    pow_raw,
    to_fastq,
)


class TestParseFormat:
    def test_round_trip(self):
        for q in (F(0), F(9, 10), F(-5, 3), F(7)):
            assert parse_rational(format_rational(q)) == q

    def test_slash_mandatory_on_output(self):
        assert format_rational(F(3)) == "3/1"

    def test_bare_integer_lenient(self):
        assert parse_rational("4") == 4
        with pytest.raises(ParseError):
            parse_rational("4", require_slash=True)

    @pytest.mark.parametrize("text", ["", "1/2/3", "a/b", "1/0", "1/-2", "1.5"])
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            parse_rational(text)


class TestEnclosure:
    def test_arithmetic_contains_exact(self):
        a = Enclosure(F(1, 3), F(1, 2))
        b = Enclosure(F(2, 7), F(3, 7))
        for lo_a, hi_a in [(a.lo, a.hi)]:
            total = a + b
            assert total.lo <= lo_a + b.lo and hi_a + b.hi <= total.hi
        prod = a * b
        assert prod.lo <= F(1, 3) * F(2, 7) <= prod.hi

    def test_negative_multiplication(self):
        a = Enclosure(F(-2), F(3))
        b = Enclosure(F(-1), F(5))
        prod = a * b
        assert prod.lo == -10 and prod.hi == 15

    def test_division_guard(self):
        with pytest.raises(ZeroDivisionError):
            Enclosure(F(1)) / Enclosure(F(-1), F(1))


class TestPowEnclosure:
    @settings(max_examples=150, deadline=None)
    @given(
        st.fractions(min_value=F(1, 100), max_value=F(99, 100)),
        st.integers(0, 40),
    )
    def test_contains_exact_power(self, base, exponent):
        exact = pow_fraction(base, exponent)
        enc = pow_enclosure(base, exponent, 128)
        assert enc.lo <= exact <= enc.hi

    def test_huge_exponent_is_cheap_and_tight(self):
        base = 1 - F(9, 8607497842)
        enc = pow_enclosure(base, 21626879, 192)
        assert enc.hi - enc.lo < F(1, 2 ** 150)
        assert F(190, 199) < enc.lo  # the certificate the construction needs

    def test_base_above_one(self):
        enc = pow_enclosure(F(3, 2), 10, 128)
        assert enc.lo <= pow_fraction(F(3, 2), 10) <= enc.hi

    def test_precision_narrows(self):
        base = F(7553, 7562)
        wide = pow_enclosure(base, 19, 32)
        narrow = pow_enclosure(base, 19, 256)
        assert narrow.hi - narrow.lo < wide.hi - wide.lo


class TestGeometricSum:
    @settings(max_examples=80, deadline=None)
    @given(st.fractions(min_value=F(1, 50), max_value=F(49, 50)), st.integers(1, 30))
    def test_contains_exact(self, ratio, terms):
        exact = sum(pow_fraction(ratio, t) for t in range(terms))
        enc = geometric_sum_enclosure(ratio, terms, 128)
        assert enc.lo <= exact <= enc.hi
        raw = geometric_sum_raw(ratio, terms)
        assert raw.to_fraction() == exact


class TestRawRatio:
    def test_unnormalized_compare(self):
        a = RawRatio(6, 4)
        b = RawRatio(3, 2)
        assert a.compare(b) == 0
        assert RawRatio(1, 3).compare(RawRatio(1, 2)) == -1

    def test_negative_denominator_flips(self):
        r = RawRatio(1, -2)
        assert r.num == -1 and r.den == 2

    def test_ring_ops(self):
        a = RawRatio(1, 3)
        b = RawRatio(1, 6)
        assert a.add(b).compare(RawRatio(1, 2)) == 0
        assert a.sub(b).compare(RawRatio(1, 6)) == 0
        assert a.mul(b).to_fraction() == F(1, 18)
        assert a.div(b).to_fraction() == 2


class TestExactScalar:
    def test_from_fraction(self):
        s = ExactScalar.from_fraction(F(3, 7))
        enc = s.enclosure(64)
        assert enc.lo == enc.hi == F(3, 7)
        assert s.exact_fraction() == F(3, 7)

    def test_arithmetic(self):
        a = ExactScalar.from_fraction(F(1, 3))
        b = ExactScalar.from_fraction(F(1, 6))
        assert (a + b).exact_fraction() == F(1, 2)
        assert (a * 2).exact_fraction() == F(2, 3)
        assert (1 - a).exact_fraction() == F(2, 3)
        assert (a / b).exact_fraction() == 2

    def test_certified_comparisons(self):
        base = F(7553, 7562)
        power = ExactScalar(
            lambda prec: pow_enclosure(base, 19, prec),
            lambda: pow_raw(base, 19),
        )
        exact = pow_fraction(base, 19)
        assert certified_cmp(power, exact) == 0  # forced through the exact route
        assert certified_lt(F(190, 199), power)
        assert certified_le(power, F(1))

    def test_near_tie_falls_back_to_exact(self):
        tiny = F(1, 10 ** 200)
        a = ExactScalar.from_fraction(F(1, 3))
        b = ExactScalar.from_fraction(F(1, 3) + tiny)
        assert certified_cmp(a, b) == -1
        assert certified_cmp(b, a) == 1
        assert certified_cmp(a, ExactScalar.from_fraction(F(1, 3))) == 0


class TestFastConversions:
    def test_round_trip(self):
        q = F(12345, 67891)
        assert fraction_from_fast(to_fastq(q)) == q

    def test_mpz_backed_fraction_survives(self):
        q = fraction_from_fast(to_fastq(F(1, 3)))
        assert q == F(1, 3)
        assert to_fastq(q) == to_fastq(F(1, 3))
