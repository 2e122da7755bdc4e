"""Exact failing-subset counts, and exhaustive search over allocations."""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import DoesNotFit, SearchSpaceTooLarge
from .model import Allocation, Problem, check_allocation, symmetric_allocation


@dataclass(frozen=True)
class ExactResult:
    psi: int
    total: int

    @property
    def success(self) -> Fraction:
        return 1 - Fraction(self.psi, self.total)

    @property
    def failure(self) -> Fraction:
        return Fraction(self.psi, self.total)


@dataclass(frozen=True)
class BruteForceReport:
    best_psi: int
    optimal_allocations: list
    search_space_size: int


def _failing_count(values, r, F) -> int:
    """Count r-subsets of ``values`` whose sum stays below ``F``.

    Nodes are grouped by value; ``ways[k][s]`` is the number of ways to pick
    ``k`` nodes from the groups seen so far with capped sum ``s``.
    """
    groups = Counter(min(v, F) for v in values)
    ways = [[0] * (F + 1) for _ in range(r + 1)]
    ways[0][0] = 1
    for v, mult in groups.items():
        nxt = [row[:] for row in ways]
        for t in range(1, min(mult, r) + 1):
            weight = comb(mult, t)
            add = t * v
            for k in range(r - t + 1):
                src = ways[k]
                dst = nxt[k + t]
                for s in range(F + 1):
                    if src[s]:
                        dst[min(s + add, F)] += weight * src[s]
        ways = nxt
    return sum(ways[r][:F])


def count_failing_subsets(alloc: Allocation, problem: Problem) -> ExactResult:
    check_allocation(alloc, problem)
    psi = _failing_count(alloc.x, problem.r, problem.F)
    return ExactResult(psi, comb(problem.n, problem.r))


def count_failing_subsets_naive(x, r, F) -> int:
    """Direct enumeration of every r-subset; the oracle for the counting DP."""
    return sum(1 for S in itertools.combinations(x, r) if sum(S) < F)


def ordered_failure_probability(alloc: Allocation, problem: Problem) -> Fraction:
    """Failure probability for ``r`` distinct nodes drawn in order; equals psi / C(n, r)."""
    return count_failing_subsets(alloc, problem).failure


# -- exhaustive search ----------------------------------------------------------

def _bounded_partitions(total, parts, cap):
    """Non-increasing tuples of length ``parts``, entries in [0, cap], summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    hi = min(cap, total)
    lo = -(-total // parts)  # the largest entry is at least the average
    for first in range(hi, lo - 1, -1):
        for rest in _bounded_partitions(total - first, parts - 1, first):
            yield (first,) + rest


def count_bounded_partitions(total, parts, cap) -> int:
    """Size of the search space: partitions of ``total`` into ``<= parts`` parts ``<= cap``."""

    @lru_cache(maxsize=None)
    def count(s, k, c):
        if s == 0:
            return 1
        if k == 0 or c == 0:
            return 0
        # largest part below c, or a part equal to c plus the rest
        return count(s, k, c - 1) + (count(s - c, k - 1, c) if s >= c else 0)

    return count(total, parts, cap)


def _search_branch(args):
    first, total, n, r, F = args
    best = None
    winners = []
    for rest in _bounded_partitions(total - first, n - 1, first):
        x = (first,) + rest
        psi = _failing_count(x, r, F)
        if best is None or psi < best:
            best, winners = psi, [x]
        elif psi == best:
            winners.append(x)
    return best, winners


def brute_force_optimal(problem: Problem, max_space: int = 1_000_000, workers: int = 1) -> BruteForceReport:
    """Exhaustive minimum of psi over all allocations, up to permutation.

    Entries are capped at ``F`` and the budget at ``n * F``; both reductions
    keep the minimum because psi never increases when symbols are added.
    Work splits by the largest entry; ``workers > 1`` runs the branches in
    separate processes and the merged report is the same either way.
    """
    n, r, F = problem.n, problem.r, problem.F
    total = min(problem.T, n * F)
    size = count_bounded_partitions(total, n, F)
    if size > max_space:
        raise SearchSpaceTooLarge(size, max_space)
    lo = -(-total // n)
    tasks = [(first, total, n, r, F) for first in range(min(F, total), lo - 1, -1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_search_branch, tasks))
    else:
        results = [_search_branch(t) for t in tasks]
    best = min(b for b, _ in results if b is not None)
    winners = [x for b, xs in results if b == best for x in xs]
    return BruteForceReport(best, winners, size)


def brute_force_unreduced(problem: Problem):
    """Minimum psi over every ordered allocation summing to exactly T (tiny n only)."""
    n, r, F, T = problem.n, problem.r, problem.F, problem.T
    best = None
    for head in itertools.product(range(T + 1), repeat=n - 1):
        last = T - sum(head)
        if last < 0:
            continue
        psi = _failing_count(head + (last,), r, F)
        if best is None or psi < best:
            best = psi
    return best


# -- symmetric plans -------------------------------------------------------------

def symmetric_plan_key(success, stored, j):
    """Sort key shared by the symmetric optimizers; the maximum wins.

    Higher success first, then fewer stored symbols (a saturated plan that
    discards budget beats an equally good plan storing more), then larger j.
    """
    return (success, -stored, j)


def best_symmetric_exact(problem: Problem, saturate: bool = True):
    """Best chunk size with the remainder placed, evaluated by exact counting.

    Returns ``(j_star, ExactResult)``. Plans with more chunks than nodes are
    evaluated saturated (``j`` on every node) unless ``saturate`` is false,
    in which case they are skipped.
    """
    best = None
    for j in range(1, problem.F + 1):
        try:
            alloc = symmetric_allocation(problem, j, saturate=saturate)
        except DoesNotFit:
            continue
        res = count_failing_subsets(alloc, problem)
        key = symmetric_plan_key(res.success, alloc.total, j)
        if best is None or key > best[0]:
            best = (key, j, res)
    return best[1], best[2]
