import itertools

import pytest

from topocount.core import is_t0
from topocount.enumeration import (CountTable, count_preorders, count_t0, count_topologies_naive,
                                   count_topologies_partition, enumerate_preorders, iter_down_masks,
                                   shard_frontier, stirling2, _count_shard, t0_table, t_table)
from topocount.errors import CountOverflow, MissingEntry, OutOfRange, TooLarge


def set_partitions(n):
    """Restricted growth strings: independent oracle for Stirling numbers."""
    def rec(prefix, m):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for b in range(m + 1):
            yield from rec(prefix + [b], max(m, b + 1))
    yield from rec([], 0)


class TestNaive:
    @pytest.mark.parametrize("n, expected", [(0, 1), (1, 1), (3, 29)])
    def test_values(self, n, expected):
        assert count_topologies_naive(n) == expected

    def test_too_large(self):
        with pytest.raises(TooLarge):
            count_topologies_naive(5)

    @pytest.mark.parametrize("n", range(5))
    def test_t0_filter(self, topologies, n):
        assert count_topologies_naive(n, t0_only=True) == sum(map(is_t0, topologies(n)))


class TestBacktrack:
    @pytest.mark.parametrize("n", range(5))
    def test_matches_naive_oracle(self, n):
        assert enumerate_preorders(n) == count_topologies_naive(n)

    def test_values(self):
        assert [enumerate_preorders(n) for n in range(7)] == [1, 1, 4, 29, 355, 6942, 209527]

    def test_visitor_count(self):
        seen = []
        assert enumerate_preorders(3, seen.append) == 29
        assert len(seen) == 29 and len(set(seen)) == 29

    def test_visitor_sees_valid_preorders(self):
        from topocount.core import Preorder
        enumerate_preorders(4, lambda r: Preorder(r.n, r.rel))

    def test_deterministic_order(self):
        assert list(iter_down_masks(5)) == list(iter_down_masks(5))

    def test_too_large(self):
        with pytest.raises(TooLarge):
            enumerate_preorders(8)
        with pytest.raises(TooLarge):
            count_t0(8)

    def test_negative(self):
        with pytest.raises(OutOfRange):
            enumerate_preorders(-1)


class TestT0:
    @pytest.mark.parametrize("n, expected", [(0, 1), (1, 1), (2, 3), (3, 19)])
    def test_small(self, topologies, n, expected):
        assert sum(map(is_t0, topologies(n))) == expected
        assert count_t0(n) == expected

    @pytest.mark.parametrize("n", range(6))
    def test_matches_filtered_engine(self, topologies, n):
        assert count_t0(n) == sum(map(is_t0, topologies(n)))

    def test_monotone_and_below_t(self):
        t = [count_preorders(n) for n in range(7)]
        t0 = [count_t0(n) for n in range(7)]
        for n in range(1, 6):
            assert t[n] < t[n + 1] and t0[n] < t0[n + 1]
        for n in range(7):
            assert t0[n] <= t[n]
            assert (t0[n] == t[n]) == (n <= 1)


class TestStirling:
    @pytest.mark.parametrize("n", range(21))
    def test_edges(self, n):
        assert stirling2(n, n) == 1
        if n >= 1:
            assert stirling2(n, 1) == 1

    def test_s42(self):
        assert sum(1 for p in set_partitions(4) if max(p) + 1 == 2) == 7
        assert stirling2(4, 2) == 7

    @pytest.mark.parametrize("n", range(8))
    def test_against_enumeration(self, n):
        blocks = [0] * (n + 1)
        for p in set_partitions(n):
            blocks[max(p) + 1 if p else 0] += 1
        assert [stirling2(n, k) for k in range(n + 1)] == blocks

    @pytest.mark.parametrize("n, k", [(21, 1), (3, 4), (-1, 0), (3, -1)])
    def test_out_of_range(self, n, k):
        with pytest.raises(OutOfRange):
            stirling2(n, k)


class TestPartitionFormula:
    def test_n2(self):
        tab = CountTable("T0", {1: 1, 2: 3})
        assert count_topologies_partition(2, tab) == 4 == count_topologies_naive(2)

    def test_n3(self):
        tab = CountTable("T0", {1: 1, 2: 3, 3: 19})
        assert count_topologies_partition(3, tab) == 1 * 1 + 3 * 3 + 1 * 19 == 29

    def test_n0(self):
        assert count_topologies_partition(0, CountTable("T0")) == 1

    def test_missing(self):
        with pytest.raises(MissingEntry):
            count_topologies_partition(3, CountTable("T0", {1: 1, 2: 3}))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_matches_engine(self, n):
        assert count_topologies_partition(n, t0_table(n)) == enumerate_preorders(n)

    @pytest.mark.slow
    def test_seven_both_ways(self):
        t7 = t_table(7)[7]
        assert t7 % 7 == 2
        assert t7 == count_preorders(7)


class TestSharding:
    @pytest.mark.parametrize("n, min_nodes", [(4, 1), (5, 8), (5, 64), (6, 100), (3, 10**6)])
    @pytest.mark.parametrize("t0", [False, True])
    def test_shards_partition_the_search(self, n, min_nodes, t0):
        frontier = shard_frontier(n, min_nodes, t0)
        for split in (1, 3, 8):
            parts = [_count_shard((frontier[i::split], n, t0, None)) for i in range(split)]
            assert sum(parts) == count_preorders(n, t0=t0)

    def test_process_pool(self):
        assert count_preorders(5, jobs=3) == 6942
        assert count_preorders(5, t0=True, jobs=2) == 4231


class TestCountTable:
    def test_overflow(self):
        tab = CountTable("T")
        with pytest.raises(CountOverflow):
            tab.put(30, 2**64, "naive")
        tab.put(3, 2**64 - 1, "naive")

    def test_missing(self):
        with pytest.raises(MissingEntry):
            CountTable("T")[4]

    def test_kind(self):
        with pytest.raises(ValueError):
            CountTable("X")
