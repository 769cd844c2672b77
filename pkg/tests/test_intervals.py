"""Covers, the exact Hausdorff metric, and the set-file format."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from hyperfrac.errors import ParseError
from hyperfrac.intervals import (
    CompactCover,
    RationalInterval,
    cover_from_text,
    cover_to_text,
    hausdorff_distance,
    union,
)


def cover(*pairs, resolution=0):
    return CompactCover.from_pairs(pairs, resolution)


UNIT = cover((0, 1))
CANTOR1 = cover((0, F(1, 10)), (F(9, 10), 1))


class TestNormalization:
    def test_sorted_and_merged(self):
        c = cover((F(1, 2), 1), (0, F(1, 2)))
        assert c.intervals == (RationalInterval(0, 1),)

    def test_overlap_merges(self):
        c = cover((0, F(3, 5)), (F(2, 5), 1))
        assert c.intervals == (RationalInterval(0, 1),)

    def test_disjoint_kept(self):
        assert len(CANTOR1.intervals) == 2

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            CompactCover([])

    def test_bad_interval_rejected(self):
        with pytest.raises(ValueError):
            RationalInterval(1, 0)


class TestOperations:
    def test_affine_scale_shift(self):
        assert cover((0, 1)).affine(F(1, 10), F(9, 10)).intervals == (
            RationalInterval(F(9, 10), 1),
        )

    def test_affine_translation(self):
        out = CANTOR1.affine(1, F(1, 2))
        assert out.intervals == (
            RationalInterval(F(1, 2), F(3, 5)),
            RationalInterval(F(7, 5), F(3, 2)),
        )

    def test_affine_prescaling_exceeds_unit(self):
        out = cover((0, 1)).affine(F(19, 10), 0)
        assert out.intervals == (RationalInterval(0, F(19, 10)),)

    def test_affine_zero_scale_rejected(self):
        with pytest.raises(ValueError):
            cover((0, 1)).affine(0, 0)

    def test_affine_negative_scale_reverses(self):
        out = CANTOR1.affine(-1, 1)
        assert out.intervals == CANTOR1.intervals

    def test_union_adjacent_merge(self):
        assert union(cover((0, F(1, 2))), cover((F(1, 2), 1))).intervals == (
            RationalInterval(0, 1),
        )

    def test_union_disjoint(self):
        out = union(cover((0, F(1, 10))), cover((F(9, 10), 1)))
        assert out.intervals == CANTOR1.intervals

    def test_union_idempotent(self):
        assert union(CANTOR1, CANTOR1) == CANTOR1

    def test_union_resolution_max(self):
        a = cover((0, 1), resolution=F(1, 4))
        b = cover((2, 3), resolution=F(1, 2))
        assert union(a, b).resolution == F(1, 2)

    def test_recenter_already_centered(self):
        assert cover((0, 1)).recenter(F(1, 2)).intervals == (RationalInterval(0, 1),)

    def test_recenter_point_target(self):
        out = cover((0, F(1, 10))).recenter(F(1, 2))
        assert out.intervals == (RationalInterval(F(9, 20), F(11, 20)),)

    def test_recenter_negative(self):
        out = CANTOR1.recenter(0)
        assert out.intervals == (
            RationalInterval(F(-1, 2), F(-2, 5)),
            RationalInterval(F(2, 5), F(1, 2)),
        )

    def test_contains_cover(self):
        assert UNIT.contains_cover(CANTOR1)
        assert not CANTOR1.contains_cover(UNIT)


class TestHausdorff:
    def test_identity(self):
        assert hausdorff_distance(UNIT, UNIT) == 0

    def test_point_vs_interval(self):
        assert hausdorff_distance(UNIT, cover((0, 0))) == 1

    def test_cantor_stage_vs_unit(self):
        assert hausdorff_distance(CANTOR1, UNIT) == F(2, 5)

    def test_brute_force_grid_oracle(self):
        # independent estimate: sample the covers on a fine rational grid;
        # the true distance exceeds any sampled one by at most the grid step
        a = cover((0, F(1, 7)), (F(1, 2), F(5, 7)))
        b = cover((F(1, 9), F(1, 3)), (F(6, 7), 1))
        step = F(1, 1000)
        sampled = F(0)
        for first, second in ((a, b), (b, a)):
            for iv in first.intervals:
                t = iv.lo
                while t <= iv.hi:
                    sampled = max(sampled, second.distance_to_point(t))
                    t += step
                sampled = max(sampled, second.distance_to_point(iv.hi))
        exact = hausdorff_distance(a, b)
        assert sampled <= exact <= sampled + step

    def test_singletons(self):
        assert hausdorff_distance(cover((0, 0)), cover((1, 1))) == 1


@st.composite
def covers(draw, max_intervals=8, denominator=60):
    count = draw(st.integers(1, max_intervals))
    points = draw(
        st.lists(
            st.integers(0, denominator),
            min_size=2 * count,
            max_size=2 * count,
            unique=True,
        )
    )
    points.sort()
    return CompactCover.from_pairs(
        [
            (F(points[2 * i], denominator), F(points[2 * i + 1], denominator))
            for i in range(count)
        ]
    )


class TestMetricProperties:
    @settings(max_examples=150, deadline=None)
    @given(covers(), covers())
    def test_symmetry_and_identity(self, a, b):
        d = hausdorff_distance(a, b)
        assert d == hausdorff_distance(b, a)
        assert (d == 0) == (a.intervals == b.intervals)

    @settings(max_examples=100, deadline=None)
    @given(covers(), covers(), covers())
    def test_triangle(self, a, b, c):
        assert hausdorff_distance(a, c) <= hausdorff_distance(a, b) + hausdorff_distance(b, c)

    @settings(max_examples=100, deadline=None)
    @given(covers(), covers(), st.fractions(F(-3), F(3)), st.fractions(F(-2), F(2)))
    def test_affine_equivariance(self, a, b, scale, shift):
        if scale == 0:
            return
        lhs = hausdorff_distance(a.affine(scale, shift), b.affine(scale, shift))
        assert lhs == abs(scale) * hausdorff_distance(a, b)

    @settings(max_examples=100, deadline=None)
    @given(covers(), st.fractions(F(-3), F(3)), st.fractions(F(-2), F(2)))
    def test_affine_round_trip(self, c, scale, shift):
        if scale == 0:
            return
        back = c.affine(scale, shift).affine(1 / scale, -shift / scale)
        assert back == c

    @settings(max_examples=100, deadline=None)
    @given(covers(), covers(), covers())
    def test_union_algebra(self, a, b, c):
        assert union(a, b) == union(b, a)
        assert union(union(a, b), c) == union(a, union(b, c))
        assert union(a, a) == a


class TestFileFormat:
    def test_round_trip(self):
        original = CompactCover.from_pairs(
            [(0, F(1, 10)), (F(9, 10), 1)], resolution=F(1, 100)
        )
        text = cover_to_text(original)
        parsed, dim = cover_from_text(text)
        assert parsed == original
        assert dim is None
        assert cover_to_text(parsed) == text

    def test_embed_dim_header(self):
        text = cover_to_text(UNIT, embed_dim=3)
        parsed, dim = cover_from_text(text)
        assert dim == 3
        assert parsed.intervals == UNIT.intervals

    def test_integers_keep_slash(self):
        assert "0/1 1/1" in cover_to_text(UNIT)

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "something else\n0/1 1/1\n",
            "compactcover v1\n0/1 1/1\n",
            "compactcover v1 resolution=0/1\n",
            "compactcover v1 resolution=0/1\n0/1\n",
            "compactcover v1 resolution=0/1\n1/2 1/3\n",
            "compactcover v1 resolution=0/1\n0.5 1/1\n",
            "compactcover v1 resolution=1/2 embed_dim=0\n0/1 1/1\n",
        ],
    )
    def test_malformed_rejected(self, text):
        with pytest.raises(ParseError):
            cover_from_text(text)
