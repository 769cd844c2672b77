"""Column descriptor algebra and the prefix-union preimage identity."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from hyperfrac.errors import ParseError
from hyperfrac.gridsets import (
    ColumnDesc,
    GridSet,
    all_columns_finite,
    column_prefix_union,
    complement,
    complement_identity_holds,
    exhaustive_window_gridsets,
    gridset_from_text,
    gridset_to_text,
    infinitely_many_cofinite_columns,
    infinitely_many_finite_columns,
    preimage_identity_holds,
    random_gridset,
    verify_preimage_identity,
)


class TestColumnDesc:
    def test_membership(self):
        fin = ColumnDesc.finite({1, 3})
        cof = ColumnDesc.cofinite({2})
        assert fin.contains(1) and not fin.contains(2)
        assert cof.contains(1) and not cof.contains(2) and cof.contains(100)

    def test_complement_involution(self):
        d = ColumnDesc.finite({1, 3})
        assert d.complement() == ColumnDesc.cofinite({1, 3})
        assert d.complement().complement() == d

    def test_union_table(self):
        fin_a = ColumnDesc.finite({1})
        fin_b = ColumnDesc.finite({2})
        cof = ColumnDesc.cofinite({1, 2})
        assert fin_a.union(fin_b) == ColumnDesc.finite({1, 2})
        assert cof.union(fin_a) == ColumnDesc.cofinite({2})
        assert cof.union(ColumnDesc.cofinite({2, 3})) == ColumnDesc.cofinite({2})

    def test_subset(self):
        assert ColumnDesc.finite({1}).subset_of(ColumnDesc.finite({1, 2}))
        assert not ColumnDesc.cofinite().subset_of(ColumnDesc.finite({1}))
        assert ColumnDesc.finite({3}).subset_of(ColumnDesc.cofinite({1}))


class TestGridSet:
    def test_empty_and_full(self):
        assert not GridSet.empty().contains(4, 7)
        assert GridSet.full().contains(4, 7)

    def test_tail_repeat(self):
        g = GridSet({2: ColumnDesc.finite({5})}, tail="repeat")
        assert g.contains(2, 5) and g.contains(9, 5) and not g.contains(9, 6)
        assert not g.contains(1, 5)  # below the explicit range, default empty

    def test_membership_in_target_families(self):
        assert all_columns_finite(GridSet.empty())
        assert not all_columns_finite(GridSet({1: ColumnDesc.cofinite()}))
        assert infinitely_many_finite_columns(GridSet.empty())
        assert not infinitely_many_finite_columns(GridSet.full())
        # one cofinite column, default empty: all other columns are finite
        assert infinitely_many_finite_columns(GridSet({1: ColumnDesc.cofinite()}))

    def test_full_default_with_gap_column(self):
        # column 1 unlisted under a full default is infinite
        g = GridSet({2: ColumnDesc.finite({1})}, default="full")
        assert not all_columns_finite(g)

    def test_subset_of(self):
        small = GridSet({1: ColumnDesc.finite({1})})
        assert small.subset_of(GridSet.full())
        assert not GridSet.full().subset_of(small)


class TestComplement:
    def test_empty_full(self):
        assert complement(GridSet.empty()) == GridSet.full()
        assert complement(GridSet.full()) == GridSet.empty()

    def test_involution(self):
        g = GridSet({1: ColumnDesc.finite({1, 3}), 4: ColumnDesc.cofinite({2})})
        assert complement(complement(g)) == g

    def test_columnwise(self):
        g = GridSet({2: ColumnDesc.finite({1, 3})})
        c = complement(g)
        assert c.column(2) == ColumnDesc.cofinite({1, 3})
        assert c.contains(1, 1)


class TestPrefixUnion:
    def test_empty(self):
        f = column_prefix_union(GridSet.empty())
        assert all_columns_finite(f)
        assert not f.contains(3, 1)

    def test_single_cell_propagates(self):
        g = GridSet({1: ColumnDesc.finite({5})})
        f = column_prefix_union(g)
        assert all(f.contains(n, 5) for n in (1, 2, 3, 10))
        assert not f.contains(1, 4)

    def test_cofinite_column_absorbs(self):
        g = GridSet({2: ColumnDesc.cofinite({7})})
        f = column_prefix_union(g)
        assert not f.contains(1, 9)
        assert f.contains(2, 9) and f.contains(5, 9)
        assert not f.contains(2, 7) and not f.contains(5, 7)

    def test_columns_increase(self):
        rng = random.Random(0)
        for _ in range(100):
            g = random_gridset(rng)
            f = column_prefix_union(g)
            horizon = f.max_explicit + 2
            for n in range(1, horizon):
                assert f.column(n).subset_of(f.column(n + 1))

    def test_monotone_in_argument(self):
        small = GridSet({1: ColumnDesc.finite({2})})
        big = GridSet({1: ColumnDesc.finite({2, 3}), 2: ColumnDesc.finite({1})})
        assert column_prefix_union(small).subset_of(column_prefix_union(big))


class TestPreimageIdentity:
    def test_trivial_cases(self):
        assert preimage_identity_holds(GridSet.empty())
        assert preimage_identity_holds(GridSet.full())

    def test_one_cofinite_column(self):
        b = GridSet({1: ColumnDesc.cofinite()})
        f = column_prefix_union(b)
        assert not infinitely_many_finite_columns(f)
        assert not all_columns_finite(b)
        assert preimage_identity_holds(b)

    def test_exhaustive_small_window(self):
        report = verify_preimage_identity(exhaustive_window_gridsets(3, 3))
        assert report.passed
        assert report.instances == 2 * 2 ** 9

    def test_randomized(self):
        rng = random.Random(7)
        report = verify_preimage_identity(random_gridset(rng) for _ in range(2000))
        assert report.passed

    def test_complement_identity(self):
        rng = random.Random(1)
        for _ in range(500):
            g = random_gridset(rng)
            assert complement_identity_holds(g)
            assert infinitely_many_finite_columns(g) == infinitely_many_cofinite_columns(
                complement(g)
            )


class TestFileFormat:
    def test_round_trip(self):
        g = GridSet(
            {1: ColumnDesc.finite({1, 3}), 3: ColumnDesc.cofinite({2})},
            default="empty",
            tail="repeat",
        )
        text = gridset_to_text(g)
        assert gridset_from_text(text) == g
        assert gridset_to_text(gridset_from_text(text)) == text

    def test_default_tail_omitted(self):
        text = gridset_to_text(GridSet.empty())
        assert "tail=" not in text
        assert gridset_from_text(text) == GridSet.empty()

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "gridset v2 default=empty\n",
            "gridset v1\n",
            "gridset v1 default=half\n",
            "gridset v1 default=empty tail=sometimes\n",
            "gridset v1 default=empty\nrow 1 finite 2\n",
            "gridset v1 default=empty\ncol 0 finite 2\n",
            "gridset v1 default=empty\ncol 1 finite 0\n",
            "gridset v1 default=empty\ncol 1 finite 2\ncol 1 finite 3\n",
        ],
    )
    def test_malformed_rejected(self, text):
        with pytest.raises(ParseError):
            gridset_from_text(text)


@st.composite
def descriptors(draw):
    members = frozenset(draw(st.lists(st.integers(1, 9), max_size=4)))
    if draw(st.booleans()):
        return ColumnDesc.finite(members)
    return ColumnDesc.cofinite(members)


@st.composite
def gridsets_strategy(draw):
    columns = {}
    for n in draw(st.lists(st.integers(1, 6), unique=True, max_size=4)):
        columns[n] = draw(descriptors())
    default = draw(st.sampled_from(["empty", "full"]))
    tail = draw(st.sampled_from(["empty", "full", "repeat"]))
    return GridSet(columns, default, tail)


class TestProperties:
    @settings(max_examples=200, deadline=None)
    @given(gridsets_strategy())
    def test_identities_hold(self, g):
        assert preimage_identity_holds(g)
        assert complement_identity_holds(g)
        assert complement(complement(g)) == g

    @settings(max_examples=100, deadline=None)
    @given(gridsets_strategy())
    def test_round_trip(self, g):
        assert gridset_from_text(gridset_to_text(g)) == g
