import itertools
from fractions import Fraction
from math import comb, perm

import pytest
from hypothesis import given, settings, strategies as st

from storalloc import (Allocation, Problem, best_symmetric_exact, brute_force_optimal, count_failing_subsets,
                       make_allocation, ordered_failure_probability, symmetric_allocation)
from storalloc.errors import DoesNotFit, SearchSpaceTooLarge
from storalloc.exact import (_bounded_partitions, brute_force_unreduced, count_bounded_partitions,
                             count_failing_subsets_naive)


def ordered_distinct_failure(x, r, F):
    """Failure share over ordered vectors of distinct nodes, enumerated directly."""
    fails = sum(1 for s in itertools.permutations(range(len(x)), r) if sum(x[i] for i in s) < F)
    return Fraction(fails, perm(len(x), r))


def test_hand_enumerated_example(small_problem):
    res = count_failing_subsets(make_allocation((2, 1, 1, 0), small_problem), small_problem)
    assert (res.psi, res.total, res.success) == (2, 6, Fraction(2, 3))


@pytest.mark.parametrize("n, r", [(5, 1), (6, 2), (10, 3), (9, 9), (12, 4)])
def test_single_full_node(n, r):
    F = 7
    p = Problem(n, r, F, F)
    res = count_failing_subsets(make_allocation((F,) + (0,) * (n - 1), p), p)
    assert res.psi == comb(n, r) - comb(n - 1, r - 1)


@pytest.mark.parametrize("n, r", [(5, 2), (6, 3), (10, 2), (8, 8)])
def test_two_half_nodes(n, r):
    F = 8
    p = Problem(n, r, F, F)
    res = count_failing_subsets(make_allocation((4, 4) + (0,) * (n - 2), p), p)
    assert res.psi == comb(n, r) - comb(n - 2, r - 2)


def test_ordered_failure_examples(small_problem):
    assert ordered_failure_probability(make_allocation((2, 1, 1, 0), small_problem), small_problem) == Fraction(1, 3)
    p = Problem(10, 2, 6, 6)
    assert ordered_failure_probability(make_allocation((6,) + (0,) * 9, p), p) == Fraction(4, 5)
    p = Problem(5, 3, 2, 12)
    assert ordered_failure_probability(make_allocation((2, 3, 2, 4, 1), p), p) == 1 - Fraction(comb(5, 3) - 0, 10)


cases = st.integers(1, 9).flatmap(lambda n: st.tuples(
    st.integers(1, n), st.integers(1, 8), st.lists(st.integers(0, 10), min_size=n, max_size=n)))


@settings(max_examples=300)
@given(cases, st.randoms())
def test_dp_matches_enumeration(case, rnd):
    r, F, x = case
    n = len(x)
    T = max(sum(x), F)
    x[-1] += T - sum(x)
    p = Problem(n, r, F, T)
    alloc = make_allocation(x, p)
    psi = count_failing_subsets(alloc, p).psi
    assert psi == count_failing_subsets_naive(x, r, F)
    assert Fraction(psi, comb(n, r)) == ordered_distinct_failure(x, r, F)
    shuffled = x[:]
    rnd.shuffle(shuffled)
    assert count_failing_subsets(make_allocation(shuffled, p), p).psi == psi
    # one more symbol anywhere never increases psi
    k = rnd.randrange(n)
    more = x[:]
    more[k] += 1
    p1 = Problem(n, r, F, T + 1)
    assert count_failing_subsets(make_allocation(more, p1), p1).psi <= psi


def test_psi_is_exact_beyond_64_bits():
    n, r, F = 80, 40, 50
    p = Problem(n, r, F, F)
    res = count_failing_subsets(make_allocation((F,) + (0,) * (n - 1), p), p)
    assert res.total == comb(80, 40) > 2**64
    assert res.psi == comb(80, 40) - comb(79, 39)


def test_partition_count_matches_enumeration():
    for total, parts, cap in [(10, 4, 4), (7, 7, 7), (12, 6, 4), (0, 3, 2), (5, 1, 5), (9, 3, 2)]:
        listed = list(_bounded_partitions(total, parts, cap))
        assert len(listed) == count_bounded_partitions(total, parts, cap)
        assert all(sum(x) == total and list(x) == sorted(x, reverse=True) and max(x, default=0) <= cap
                   for x in listed)


def test_brute_force_examples():
    rep = brute_force_optimal(Problem(4, 2, 2, 2))
    assert rep.best_psi == comb(4, 2) - comb(3, 1) == 3
    assert rep.optimal_allocations == [(2, 0, 0, 0)]

    rep = brute_force_optimal(Problem(5, 3, 3, 15))
    assert rep.best_psi == 0 and (3, 3, 3, 3, 3) in rep.optimal_allocations

    p = Problem(10, 2, 10, 45)
    rep = brute_force_optimal(p)
    sym = min(count_failing_subsets(symmetric_allocation(p, j), p).psi for j in (10, 5))
    assert rep.best_psi <= sym
    for x in rep.optimal_allocations:
        assert count_failing_subsets_naive(x, 2, 10) == rep.best_psi


def test_brute_force_budget_above_saturation():
    rep = brute_force_optimal(Problem(3, 2, 2, 10))
    assert rep.best_psi == 0 and rep.optimal_allocations == [(2, 2, 2)]


def test_brute_force_limit():
    with pytest.raises(SearchSpaceTooLarge) as info:
        brute_force_optimal(Problem(20, 3, 10, 100), max_space=1000)
    assert info.value.size == count_bounded_partitions(100, 20, 10)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_reductions_lose_nothing(n):
    for r in range(1, n + 1):
        for F in range(1, 4):
            for T in range(F, 8):
                p = Problem(n, r, F, T)
                assert brute_force_optimal(p).best_psi == brute_force_unreduced(p)


def test_parallel_branches_match_serial():
    p = Problem(6, 3, 4, 11)
    assert brute_force_optimal(p, workers=2) == brute_force_optimal(p)


def test_best_symmetric_exact_examples():
    j, res = best_symmetric_exact(Problem(10, 2, 10, 44))
    assert j == 10 and res.success == Fraction(2, 3)
    # the j=5 plan for comparison: 8 half nodes plus a 4-symbol node
    alt = count_failing_subsets(symmetric_allocation(Problem(10, 2, 10, 44), 5), Problem(10, 2, 10, 44))
    assert alt.success == Fraction(28, 45)
    assert best_symmetric_exact(Problem(10, 2, 10, 45))[0] == 5
    for n, r, F in [(10, 2, 10), (7, 3, 5), (12, 4, 9)]:
        assert best_symmetric_exact(Problem(n, r, F, F))[0] == F


def test_best_symmetric_exact_strict_mode_skips_oversized_plans():
    p = Problem(10, 2, 10, 60)
    assert best_symmetric_exact(p)[0] == 5
    j, res = best_symmetric_exact(p, saturate=False)
    assert j == 6 and res.success == 1
    with pytest.raises(DoesNotFit):
        symmetric_allocation(p, 5)


def test_saturated_allocation_counts(small_problem):
    res = count_failing_subsets(Allocation((1, 1, 1, 0), 1), small_problem)
    assert res.psi == 3
