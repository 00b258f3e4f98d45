# coding: utf-8

# # Sorting with a two-ended temporary array
#
# `new_sort` takes the first element of a segment as pivot, sends smaller-or-equal
# elements to the front of a scratch array and larger ones to the back, then drops
# the pivot into the gap. Every call reports comparisons, writes and recursion depth.

import numpy as np

from newsort_lab import new_sort, partition_segment, quicksort_baseline

# A single partition. The right part comes out in reverse order of encounter.

arr, pivot_at = partition_segment(np.array([5, 9, 2, 7, 1, 5]))
print(arr, "pivot at", pivot_at)

# Sorting the small worked example.

out = new_sort([3, 1, 4, 1, 5])
print(out.output, out.stats)

# Ties always go left, so an array of one repeated value is the worst case:
# n(n-1)/2 comparisons and a partition chain n-1 deep.

for n in (10, 100, 1000):
    s = new_sort(np.zeros(n, dtype=np.int64)).stats
    print(n, s.comparisons, n * (n - 1) // 2, s.max_depth)

# On distinct random keys the count sits near 2(n+1)H_n - 4n.

n = 10_000
harmonic = np.sum(1 / np.arange(1, n + 1))
gen = np.random.default_rng(1)
counts = [new_sort(gen.permutation(n)).stats.comparisons for _ in range(20)]
print("mean", np.mean(counts), "expected", 2 * (n + 1) * harmonic - 4 * n)

# The Lomuto baseline uses the same pivot rule, so comparison counts agree on the
# same input while writes differ.

keys = gen.integers(0, 50, 5000)
print("new_sort ", new_sort(keys).stats.counters())
print("baseline ", quicksort_baseline(keys).stats.counters())
