"""Symmetric plans: ``m`` nodes with ``j`` symbols each, the rest empty.

Two evaluators live here. :func:`phi_symmetric` is the binomial-CDF form of
phi with the idealized fraction ``alpha_j = T / (n j)``; :func:`hypergeo_success`
is the exact success probability of a realizable plan with ``m`` whole chunks.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb

from .errors import InfeasibleProfile, InvalidChunk, InvalidParameter
from .exact import symmetric_plan_key
from .model import Problem


class Method(str, Enum):
    BINOMIAL_PHI = "binomial_phi"
    HYPERGEOMETRIC_EXACT = "hypergeometric_exact"


class ScanMode(str, Enum):
    CANDIDATES_ONLY = "candidates_only"
    FULL_SCAN = "full_scan"


@dataclass(frozen=True)
class SymmetricPlan:
    """``m = min(T // j, n)`` non-empty nodes with ``j`` symbols each."""

    j: int
    m: int
    alpha_j: Fraction
    method: Method = Method.HYPERGEOMETRIC_EXACT

    @property
    def stored(self) -> int:
        return self.m * self.j


@dataclass(frozen=True)
class SweepRow:
    T: int
    budget_ratio: Fraction
    j_star: int
    success: float
    method: Method
    m: int = 0


def make_plan(problem: Problem, j: int, method: Method = Method.HYPERGEOMETRIC_EXACT) -> SymmetricPlan:
    if not 1 <= j <= problem.F:
        raise InvalidChunk(j, problem.F)
    m = min(problem.T // j, problem.n)
    return SymmetricPlan(j, m, Fraction(m, problem.n), Method(method))


def binomial_phi(j: int, alpha_j, r: int, F: int):
    """``P(Binomial(r, alpha_j) <= (F-1)//j)``, or 1 when ``r*j < F``.

    Exact for a :class:`~fractions.Fraction` ``alpha_j``, float otherwise.
    """
    if not 1 <= j <= F:
        raise InvalidChunk(j, F)
    if alpha_j < 0 or alpha_j > 1:
        raise InfeasibleProfile(f"alpha_j = {alpha_j} outside [0, 1]")
    if r * j < F:
        return 1
    top = (F - 1) // j
    return sum(comb(r, i) * alpha_j**i * (1 - alpha_j) ** (r - i) for i in range(top + 1))


def phi_symmetric(j: int, problem: Problem) -> float:
    """phi of the symmetric profile with ``alpha_j = T / (n j)``."""
    if not 1 <= j <= problem.F:
        raise InvalidChunk(j, problem.F)
    alpha_j = Fraction(problem.T, problem.n * j)
    return float(binomial_phi(j, alpha_j, problem.r, problem.F))


def candidate_js(F: int, r: int) -> list[int]:
    """Chunk sizes ``ceil(F/i)`` and ``ceil((F-1)/i)`` for ``i = 1..r``, descending."""
    if F < 1:
        raise InvalidParameter("F", f"file size must be positive, got {F}")
    if r < 1:
        raise InvalidParameter("r", f"access size must be positive, got {r}")
    out = set()
    for i in range(1, r + 1):
        out.add(-(-F // i))
        out.add(-(-(F - 1) // i))
    return sorted((j for j in out if 1 <= j <= F), reverse=True)


def hypergeo_success_fraction(plan: SymmetricPlan, problem: Problem) -> Fraction:
    """Exact probability that a random r-subset sees at least ``ceil(F/j)`` full chunks."""
    n, r, F = problem.n, problem.r, problem.F
    m = plan.m
    need = -(-F // plan.j)
    hits = sum(comb(m, d) * comb(n - m, r - d) for d in range(need, r + 1))
    return Fraction(hits, comb(n, r))


def hypergeo_success(plan: SymmetricPlan, problem: Problem) -> float:
    return float(hypergeo_success_fraction(plan, problem))


def _scan(problem: Problem, mode):
    mode = ScanMode(mode)
    if mode is ScanMode.FULL_SCAN:
        return range(1, problem.F + 1)
    return candidate_js(problem.F, problem.r)


def optimize_symmetric(problem: Problem, mode=ScanMode.FULL_SCAN):
    """Best symmetric plan by exact hypergeometric success.

    Returns ``(j_star, success, SweepRow)``. Ties prefer fewer stored symbols,
    then larger ``j``.
    """
    best = None
    for j in _scan(problem, mode):
        plan = make_plan(problem, j)
        success = hypergeo_success_fraction(plan, problem)
        key = symmetric_plan_key(success, plan.stored, j)
        if best is None or key > best[0]:
            best = (key, plan, success)
    _, plan, success = best
    row = SweepRow(problem.T, Fraction(problem.T, problem.F), plan.j, float(success),
                   Method.HYPERGEOMETRIC_EXACT, plan.m)
    return plan.j, float(success), row


def sweep_budget(n, r, F, T_min, T_max, step=1, mode=ScanMode.FULL_SCAN) -> list[SweepRow]:
    if step < 1:
        raise InvalidParameter("t-step", f"step must be positive, got {step}")
    if T_min < F:
        raise InvalidParameter("t-min", f"budget {T_min} is below the file size {F}")
    if T_max < T_min:
        raise InvalidParameter("t-max", f"t-max {T_max} is below t-min {T_min}")
    return [optimize_symmetric(Problem(n, r, F, T), mode)[2] for T in range(T_min, T_max + 1, step)]


def success_curves(n, r, F, T_min, T_max, step=1, js=None):
    """Success of each fixed chunk size across budgets.

    Yields ``(T, j, m, success)``; ``js`` defaults to ``ceil(F/i)`` for ``i = 1..r``.
    """
    if js is None:
        js = sorted({-(-F // i) for i in range(1, r + 1)}, reverse=True)
    for T in range(T_min, T_max + 1, step):
        problem = Problem(n, r, F, T)
        for j in js:
            plan = make_plan(problem, j)
            yield T, j, plan.m, hypergeo_success(plan, problem)
