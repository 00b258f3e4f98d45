import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from newsort_lab.core_sort import (
    SortStats,
    make_keys,
    new_sort,
    partition_segment,
    quicksort_baseline,
    verify_sorted_permutation,
)

from oracles import expected_random_comparisons, literal_new_sort


def literal_partition(seg):
    pivot, rest = seg[0], seg[1:]
    le = [e for e in rest if e <= pivot]
    gt = [e for e in rest if e > pivot]
    return le + [pivot] + gt[::-1], len(le)


class TestPartition:
    def test_mixed(self):
        stats = SortStats()
        out, p = partition_segment([3, 1, 4, 1, 5], stats)
        assert out.tolist() == [1, 1, 3, 5, 4]
        assert p == 2
        assert stats.comparisons == 4
        assert stats.writes == 10

    def test_single(self):
        stats = SortStats()
        out, p = partition_segment([7], stats)
        assert (out.tolist(), p, stats.comparisons) == ([7], 0, 0)

    def test_all_greater_fill_from_back(self):
        stats = SortStats()
        out, p = partition_segment([1, 2, 3], stats)
        assert (out.tolist(), p, stats.comparisons) == ([1, 3, 2], 0, 2)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            partition_segment([])

    @given(st.lists(st.integers(-5, 5), min_size=1, max_size=30))
    def test_layout_matches_rule(self, seg):
        out, p = partition_segment(seg)
        assert (out.tolist(), p) == literal_partition(seg)

    def test_input_untouched(self):
        seg = np.array([5, 4, 3], dtype=np.int64)
        partition_segment(seg)
        assert seg.tolist() == [5, 4, 3]


class TestNewSort:
    def test_worked_example(self):
        res = new_sort([3, 1, 4, 1, 5])
        assert res.output.tolist() == [1, 1, 3, 4, 5]
        assert res.stats.comparisons == 6
        assert res.stats.writes == 10 + 4 + 4
        assert res.stats.max_depth == 2

    def test_empty(self):
        s = new_sort([]).stats
        assert (s.comparisons, s.writes, s.max_depth) == (0, 0, 0)

    def test_singleton(self):
        assert new_sort([9]).stats.counters() == (0, 0, 0)

    def test_all_equal_small(self):
        res = new_sort([2, 2, 2, 2])
        assert res.stats.comparisons == 6
        assert res.stats.max_depth == 3

    @pytest.mark.parametrize("n", [2, 3, 17, 500, 2000])
    def test_all_equal_closed_form(self, n):
        s = new_sort(np.full(n, 4, dtype=np.int64)).stats
        assert s.comparisons == n * (n - 1) // 2
        assert s.max_depth == n - 1
        # every partition of length m >= 2 writes 2m
        assert s.writes == sum(2 * m for m in range(2, n + 1))

    @pytest.mark.parametrize("n", [1, 2, 5, 10, 1000])
    def test_sorted_and_reversed_quadratic(self, n):
        asc = np.arange(1, n + 1)
        assert new_sort(asc).stats.comparisons == n * (n - 1) // 2
        assert new_sort(asc[::-1]).stats.comparisons == n * (n - 1) // 2

    def test_closed_form_matches_oracle_small(self):
        for n in range(1, 11):
            counts = {"comparisons": 0, "writes": 0, "max_depth": 0}
            literal_new_sort(range(1, n + 1), counts)
            assert counts["comparisons"] == n * (n - 1) // 2

    def test_exhaustive_matches_literal_oracle(self):
        for n in range(0, 9):
            for perm in itertools.permutations(range(n)):
                counts = {"comparisons": 0, "writes": 0, "max_depth": 0}
                expected = literal_new_sort(perm, counts)
                res = new_sort(np.array(perm, dtype=np.int64))
                assert res.output.tolist() == expected
                assert res.stats.counters() == (
                    counts["comparisons"], counts["writes"], counts["max_depth"]
                ), perm

    def test_mean_comparisons_n3_exact(self):
        perms = list(itertools.permutations([1, 2, 3]))
        total = sum(new_sort(list(p)).stats.comparisons for p in perms)
        assert Fraction(total, len(perms)) == Fraction(8, 3)
        assert expected_random_comparisons(3) == Fraction(8, 3)

    @given(st.lists(st.integers(-3, 3), max_size=12))
    def test_duplicates_match_literal_oracle(self, xs):
        counts = {"comparisons": 0, "writes": 0, "max_depth": 0}
        literal_new_sort(xs, counts)
        res = new_sort(np.array(xs, dtype=np.int64))
        assert res.stats.counters() == (
            counts["comparisons"], counts["writes"], counts["max_depth"])

    @given(st.lists(st.integers(-(2**63), 2**63 - 1), max_size=200))
    def test_int_mode_sorted_permutation(self, xs):
        res = new_sort(np.array(xs, dtype=np.int64))
        assert verify_sorted_permutation(xs, res.output)

    @given(st.lists(st.floats(allow_nan=False, allow_infinity=True), max_size=200))
    def test_real_mode_sorted_permutation(self, xs):
        res = new_sort(xs, mode="real")
        assert verify_sorted_permutation(np.array(xs, dtype=float), res.output)

    @settings(max_examples=50)
    @given(st.lists(st.floats(-1e6, 1e6, allow_nan=False), min_size=1, max_size=300),
           st.sampled_from([lambda v: np.exp(v / 100), np.arctan, lambda v: 3.0 * v + 7.0, np.cbrt]))
    def test_monotone_transform_invariance(self, xs, f):
        x = np.array(xs) / 1e3
        y = f(x)
        # the transform must keep order and ties exactly in float64
        order_kept = np.array_equal(np.argsort(x, kind="stable"), np.argsort(y, kind="stable"))
        ties_kept = np.array_equal(x[:, None] == x[None, :], y[:, None] == y[None, :])
        if order_kept and ties_kept:
            assert new_sort(x).stats.counters() == new_sort(y).stats.counters()

    def test_input_not_modified(self):
        a = np.array([3, 2, 1], dtype=np.int64)
        new_sort(a)
        assert a.tolist() == [3, 2, 1]

    def test_not_stable(self):
        # right-hand segments come out in reverse encounter order
        out, _ = partition_segment([0, 1, 2, 3])
        assert out.tolist() == [0, 3, 2, 1]

    def test_deep_degenerate_input_does_not_recurse(self):
        n = 50_000
        s = new_sort(np.zeros(n, dtype=np.int64)).stats
        assert s.max_depth == n - 1
        assert s.comparisons == n * (n - 1) // 2


class TestQuicksortBaseline:
    def test_two(self):
        res = quicksort_baseline([2, 1])
        assert res.output.tolist() == [1, 2]
        assert res.stats.comparisons == 1

    def test_all_equal(self):
        assert quicksort_baseline(np.full(100, 1)).stats.comparisons == 4950

    def test_n3_mean(self):
        perms = list(itertools.permutations([1, 2, 3]))
        total = sum(quicksort_baseline(list(p)).stats.comparisons for p in perms)
        assert Fraction(total, 6) == Fraction(8, 3)

    @given(st.lists(st.integers(-50, 50), max_size=200))
    def test_same_output_as_new_sort(self, xs):
        a = np.array(xs, dtype=np.int64)
        assert quicksort_baseline(a).output.tolist() == new_sort(a).output.tolist()

    def test_swap_writes_counted_in_pairs(self):
        s = quicksort_baseline([2, 1]).stats
        assert s.writes == 2


class TestKeys:
    def test_nan_rejected(self):
        with pytest.raises(ValueError):
            make_keys([1.0, math.nan], "real")
        with pytest.raises(ValueError):
            new_sort([1.0, float("nan")])

    def test_mode_inference(self):
        assert make_keys([1, 2]).dtype == np.int64
        assert make_keys([1.5]).dtype == np.float64

    def test_int_mode_rejects_fractions(self):
        with pytest.raises(ValueError):
            make_keys([1.5], "int")


class TestVerify:
    @pytest.mark.parametrize("inp,out,ok", [
        ([3, 1], [1, 3], True),
        ([3, 1], [1, 2], False),
        ([1, 1, 2], [1, 2, 2], False),
        ([2, 1], [2, 1], False),
        ([], [], True),
        ([1], [1, 1], False),
    ])
    def test_cases(self, inp, out, ok):
        assert verify_sorted_permutation(inp, out) is ok


def test_expected_comparisons_formula_small_exhaustive():
    for n in range(1, 7):
        perms = list(itertools.permutations(range(n)))
        total = sum(new_sort(list(p)).stats.comparisons for p in perms)
        assert Fraction(total, len(perms)) == expected_random_comparisons(n)
