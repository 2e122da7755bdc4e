"""Problem instances, allocations and alpha-profiles shared by all engines."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import DoesNotFit, InfeasibleProfile, InvalidChunk, InvalidParameter


@dataclass(frozen=True)
class Problem:
    """``T`` coded symbols of a size-``F`` file spread over ``n`` nodes, read ``r`` at a time."""

    n: int
    r: int
    F: int
    T: int

    def __post_init__(self):
        for name in ("n", "r", "F", "T"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise InvalidParameter(name, f"expected an integer, got {value!r}")
        if self.n < 1:
            raise InvalidParameter("n", f"need at least one node, got {self.n}")
        if not 1 <= self.r <= self.n:
            raise InvalidParameter("r", f"need 1 <= r <= n={self.n}, got {self.r}")
        if self.F < 1:
            raise InvalidParameter("F", f"file size must be positive, got {self.F}")
        if self.T < self.F:
            raise InvalidParameter("T", f"budget {self.T} is below the file size {self.F}")

    @property
    def c(self) -> Fraction:
        """Mean number of symbols per node."""
        return Fraction(self.T, self.n)


def make_problem(n, r, F, T) -> Problem:
    return Problem(n=n, r=r, F=F, T=T)


@dataclass(frozen=True)
class Allocation:
    """Symbols per node.

    ``discarded`` counts budget symbols that were not placed anywhere; it is
    non-zero only for saturated symmetric plans, so ``sum(x) + discarded == T``.
    """

    x: tuple[int, ...]
    discarded: int = 0

    @property
    def total(self) -> int:
        return sum(self.x)

    def clamped(self, F) -> tuple[int, ...]:
        return tuple(min(v, F) for v in self.x)


def make_allocation(x, problem: Problem) -> Allocation:
    """Validate a full allocation (every budget symbol placed)."""
    x = tuple(int(v) for v in x)
    if len(x) != problem.n:
        raise InvalidParameter("alloc", f"expected {problem.n} entries, got {len(x)}")
    if any(v < 0 for v in x):
        raise InvalidParameter("alloc", "symbol counts must be non-negative")
    if sum(x) != problem.T:
        raise InvalidParameter("alloc", f"entries sum to {sum(x)}, budget is {problem.T}")
    return Allocation(x)


def check_allocation(alloc: Allocation, problem: Problem):
    if len(alloc.x) != problem.n:
        raise InvalidParameter("alloc", f"expected {problem.n} entries, got {len(alloc.x)}")
    if any(v < 0 for v in alloc.x):
        raise InvalidParameter("alloc", "symbol counts must be non-negative")
    if alloc.total + alloc.discarded != problem.T:
        raise InvalidParameter("alloc", "placed plus discarded symbols must equal the budget")


@dataclass(frozen=True)
class AlphaProfile:
    """Fractions ``alpha[k]`` of nodes holding ``k`` symbols, ``k = 0..F``.

    ``n`` is set when the profile must be realizable on ``n`` nodes
    (every ``alpha[k] * n`` integral). Profiles built from a continuous
    fraction, as in the symmetric analysis, leave it as ``None``.
    """

    alpha: tuple[Fraction, ...]
    c: Fraction
    n: int | None = None

    def __post_init__(self):
        if not self.alpha:
            raise InvalidParameter("alpha", "profile needs at least one entry")
        if any(a < 0 or a > 1 for a in self.alpha):
            raise InfeasibleProfile(f"fractions must lie in [0, 1]: {self.alpha}")
        if sum(self.alpha) != 1:
            raise InfeasibleProfile(f"fractions sum to {sum(self.alpha)}, not 1")
        if self.n is not None and any((a * self.n).denominator != 1 for a in self.alpha):
            raise InfeasibleProfile(f"profile is not realizable on {self.n} nodes")

    @property
    def F(self) -> int:
        return len(self.alpha) - 1

    @classmethod
    def two_point(cls, F, j, alpha_j) -> "AlphaProfile":
        """Profile with ``alpha_j`` of the nodes holding ``j`` symbols, the rest empty."""
        alpha_j = Fraction(alpha_j)
        if not 1 <= j <= F:
            raise InvalidChunk(j, F)
        if alpha_j > 1:
            raise InfeasibleProfile(f"alpha_j = {alpha_j} exceeds 1")
        alpha = [Fraction(0)] * (F + 1)
        alpha[0] += 1 - alpha_j
        alpha[j] += alpha_j
        return cls(tuple(alpha), j * alpha_j)


def alpha_of_allocation(alloc: Allocation, problem: Problem) -> AlphaProfile:
    # Counts above F are clamped: a node never contributes more than F usefully.
    n, F = problem.n, problem.F
    counts = Counter(min(v, F) for v in alloc.x)
    alpha = tuple(Fraction(counts.get(k, 0), n) for k in range(F + 1))
    return AlphaProfile(alpha, problem.c, n)


def symmetric_allocation(problem: Problem, j: int, saturate: bool = False) -> Allocation:
    """Chunks of ``j`` symbols on ``m = T // j`` nodes, descending order.

    A leftover ``T - m*j > 0`` goes to one extra node when there is room and is
    discarded when all ``n`` nodes are already used. With ``saturate=True``
    a plan with ``m > n`` puts ``j`` symbols on every node and discards the
    excess instead of raising :class:`DoesNotFit`.
    """
    n, F, T = problem.n, problem.F, problem.T
    if not 1 <= j <= F:
        raise InvalidChunk(j, F)
    m = T // j
    if m > n:
        if not saturate:
            raise DoesNotFit(f"{m} chunks of size {j} need more than {n} nodes")
        return Allocation((j,) * n, T - n * j)
    rem = T - m * j
    x = [j] * m
    discarded = 0
    if rem and m < n:
        x.append(rem)
    else:
        discarded = rem
    x.extend([0] * (n - len(x)))
    return Allocation(tuple(x), discarded)
