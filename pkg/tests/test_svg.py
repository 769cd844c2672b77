"""Deterministic SVG rendering."""

from fractions import Fraction as F

import pytest

from hyperfrac.addressing import cantor_cover
from hyperfrac.intervals import CompactCover
from hyperfrac.ratio import decimal_approx
from hyperfrac.svg import render_cover_svg


class TestDecimalApprox:
    def test_simple(self):
        assert decimal_approx(F(1, 2)) == "0.5"
        assert decimal_approx(F(0)) == "0"
        assert decimal_approx(F(-3, 4)) == "-0.75"

    def test_rounding_is_half_up(self):
        assert decimal_approx(F(1, 3), 4) == "0.3333"
        assert decimal_approx(F(2, 3), 4) == "0.6667"
        assert decimal_approx(F(1, 80000), 3) == "0.0000125"

    def test_carry(self):
        assert decimal_approx(F(99999, 100000), 4) == "1"

    def test_integers(self):
        assert decimal_approx(F(800)) == "800"


class TestRenderer:
    def test_single_rectangle(self):
        svg = render_cover_svg(CompactCover.from_pairs([(0, 1)]))
        assert svg.count("<rect") == 1
        assert 'width="800"' in svg

    def test_cantor_depth_three_has_eight_rects(self):
        svg = render_cover_svg(cantor_cover(3))
        assert svg.count("<rect") == 8

    def test_byte_identical(self):
        cover = cantor_cover(4)
        assert render_cover_svg(cover) == render_cover_svg(cover)

    def test_embed_dim_comment(self):
        svg = render_cover_svg(CompactCover.from_pairs([(0, 1)]), embed_dim=3)
        assert "embed_dim=3" in svg

    def test_point_marker_gets_width(self):
        svg = render_cover_svg(CompactCover.from_pairs([(F(1, 2), F(1, 2))]))
        assert 'width="0.5"' in svg

    def test_prescaled_covers_extend_viewbox(self):
        svg = render_cover_svg(CompactCover.from_pairs([(0, F(19, 10))]))
        assert svg.count("<rect") == 1

    def test_bad_dimensions(self):
        with pytest.raises(ValueError):
            render_cover_svg(cantor_cover(1), height=0)
