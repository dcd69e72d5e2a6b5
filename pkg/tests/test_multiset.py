import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from ghostcredit.multiset import (
    EnumerationTooLarge,
    GroupSizes,
    enumerate_label_permutations,
    multinomial,
    occupancy_table,
    paper_quota,
    position_occupancy,
    verify_pascal,
)
from oracles import distinct_orderings

small_sizes = st.lists(st.integers(1, 4), min_size=1, max_size=5).filter(lambda s: sum(s) <= 8)
count_sizes = st.lists(st.integers(1, 12), min_size=1, max_size=5).filter(lambda s: sum(s) <= 12)


class TestMultinomial:
    @pytest.mark.parametrize("parts,expected", [((1, 1), 2), ((3,), 1), ((2, 2, 1), 30)])
    def test_examples(self, parts, expected):
        assert multinomial(parts) == expected
        assert len(distinct_orderings(parts)) == expected

    def test_zero_parts(self):
        assert multinomial([0, 0]) == 1
        assert multinomial([0, 3]) == 1

    def test_exact_beyond_machine_words(self):
        parts = [30] * 5
        expected = math.factorial(150) // math.factorial(30) ** 5
        assert multinomial(parts) == expected
        assert expected > 2 ** 64

    @pytest.mark.parametrize("parts", [[], [-1, 2]])
    def test_rejects(self, parts):
        with pytest.raises(ValueError):
            multinomial(parts)


class TestGroupSizes:
    def test_derived(self):
        g = GroupSizes([2, 2, 1])
        assert (g.n, g.m, g.sizes) == (5, 3, (2, 2, 1))

    @pytest.mark.parametrize("bad", [[], [0], [2, -1], [1.5]])
    def test_invalid(self, bad):
        with pytest.raises(ValueError):
            GroupSizes(bad)


class TestQuota:
    @pytest.mark.parametrize("sizes,i,expected", [((1, 1), 1, 1), ((2, 1), 1, 2), ((2, 2, 1), 3, 6)])
    def test_examples(self, sizes, i, expected):
        assert paper_quota(sizes, i) == expected
        # oracle: orderings that start with group i
        assert sum(1 for p in distinct_orderings(sizes) if p[0] == i) == expected

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            paper_quota((1, 1), 3)

    @pytest.mark.parametrize("sizes", [(1, 1), (2, 1), (2, 2, 1)])
    def test_pascal_examples(self, sizes):
        assert verify_pascal(sizes)

    @given(count_sizes)
    def test_pascal_property(self, sizes):
        assert verify_pascal(sizes)


class TestEnumeration:
    def test_aac_aca_caa(self):
        assert list(enumerate_label_permutations((2, 1))) == [(1, 1, 2), (1, 2, 1), (2, 1, 1)]

    def test_abc(self):
        got = list(enumerate_label_permutations((1, 1, 1)))
        assert got == list(itertools.permutations((1, 2, 3)))
        assert len(got) == 6

    def test_single_group(self):
        assert list(enumerate_label_permutations((3,))) == [(1, 1, 1)]

    def test_cap_raises_eagerly(self):
        with pytest.raises(EnumerationTooLarge) as info:
            enumerate_label_permutations((2, 2, 1), cap=29)
        assert info.value.k == 30 and info.value.cap == 29
        assert "30" in str(info.value) and "29" in str(info.value)

    def test_cap_none(self):
        assert sum(1 for _ in enumerate_label_permutations((3, 3, 3), cap=None)) == 1680

    @settings(max_examples=60)
    @given(small_sizes)
    def test_matches_brute_force(self, sizes):
        got = list(enumerate_label_permutations(sizes))
        assert got == distinct_orderings(sizes)
        assert len(got) == multinomial(sizes)

    @settings(max_examples=60)
    @given(small_sizes)
    def test_strictly_increasing_and_multiset_preserved(self, sizes):
        got = list(enumerate_label_permutations(sizes))
        assert all(a < b for a, b in zip(got, got[1:]))
        for perm in got:
            assert [perm.count(g) for g in range(1, len(sizes) + 1)] == list(sizes)

    def test_reproducible(self):
        assert list(enumerate_label_permutations((2, 2, 2))) == list(enumerate_label_permutations((2, 2, 2)))


class TestOccupancy:
    @pytest.mark.parametrize("sizes,i,p,expected", [((2, 1), 1, 1, 2), ((2, 1), 2, 3, 1), ((1, 1), 1, 2, 1)])
    def test_examples(self, sizes, i, p, expected):
        assert position_occupancy(sizes, i, p) == expected

    @settings(max_examples=40)
    @given(small_sizes)
    def test_uniform(self, sizes):
        table = occupancy_table(sizes)
        for i, row in enumerate(table, start=1):
            assert row == [paper_quota(sizes, i)] * sum(sizes)

    def test_bad_position(self):
        with pytest.raises(ValueError):
            position_occupancy((2, 1), 1, 4)

    def test_cap(self):
        with pytest.raises(EnumerationTooLarge):
            position_occupancy((2, 2, 1), 1, 1, cap=10)
