"""Failure probability with repeated draws (phi) and its sandwich around psi."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm, perm

import numpy as np

from . import kernels
from .errors import InstanceTooLarge
from .exact import count_failing_subsets
from .model import Allocation, AlphaProfile, Problem, alpha_of_allocation, check_allocation

ENUMERATION_LIMIT = 10**7


def truncated_mul(a, b, F):
    """Product of two coefficient sequences keeping only degrees below ``F``."""
    out = [0] * min(F, len(a) + len(b) - 1)
    for i, ai in enumerate(a[:F]):
        if not ai:
            continue
        for k, bk in enumerate(b[: F - i]):
            out[i + k] += ai * bk
    return out


def truncated_power(coeffs, r, F):
    """Degrees ``< F`` of ``p(u) ** r`` via ``r - 1`` truncated products.

    Truncating after every product is safe for non-negative coefficients:
    a term that reaches degree ``F`` can never come back below it.
    """
    base = list(coeffs[:F])
    acc = base
    for _ in range(r - 1):
        acc = truncated_mul(acc, base, F)
    return acc


def phi_from_profile(alpha: AlphaProfile, r: int) -> Fraction:
    """Probability that ``r`` nodes drawn with repetition hold fewer than ``F`` symbols."""
    F = alpha.F
    # integer arithmetic over a common denominator; exact and much faster than Fractions
    den = lcm(*(a.denominator for a in alpha.alpha))
    ints = [a.numerator * (den // a.denominator) for a in alpha.alpha]
    return Fraction(sum(truncated_power(ints, r, F)), den**r)


def phi_from_profile_float(alpha, r: int, F: int | None = None) -> float:
    """Floating-point fast path of :func:`phi_from_profile`.

    ``alpha`` may be an :class:`AlphaProfile` or a plain sequence of
    probabilities indexed by symbol count.
    """
    if isinstance(alpha, AlphaProfile):
        F = alpha.F
        coeffs = np.array([float(a) for a in alpha.alpha])
    else:
        coeffs = np.asarray(alpha, dtype=np.float64)
        F = len(coeffs) - 1 if F is None else F
    return float(kernels.truncated_power(coeffs, r, F).sum())


def phi_of_allocation(alloc: Allocation, problem: Problem) -> Fraction:
    return phi_from_profile(alpha_of_allocation(alloc, problem), problem.r)


def phi_enumerate(alloc: Allocation, problem: Problem, limit: int = ENUMERATION_LIMIT) -> Fraction:
    """Count failing vectors in ``[n]^r`` directly; an oracle for :func:`phi_from_profile`."""
    check_allocation(alloc, problem)
    n, r, F = problem.n, problem.r, problem.F
    size = n**r
    if size > limit:
        raise InstanceTooLarge(size, limit)
    values = np.minimum(np.asarray(alloc.x, dtype=np.int64), F)
    return Fraction(kernels.count_ordered_failures(values, r, F), size)


def tv_exact(n: int, r: int) -> Fraction:
    """Total variation between uniform draws from ``[n]^r`` with and without repetition."""
    return 1 - Fraction(perm(n, r), n**r)


def tv_bound(n: int, r: int) -> Fraction:
    return Fraction((r - 1) ** 2, n)


def scaled_psi(psi: int, n: int, r: int) -> Fraction:
    """``r! psi / n^r``: failing ordered distinct draws as a share of all ``n^r`` vectors."""
    return Fraction(factorial(r) * psi, n**r)


@dataclass(frozen=True)
class SandwichReport:
    """Where ``r! psi / n^r`` sits between ``phi - 2(r-1)^2/n`` and ``phi``."""

    phi: Fraction
    scaled_psi: Fraction
    bound: Fraction

    @property
    def slack_upper(self) -> Fraction:
        return self.phi - self.scaled_psi

    @property
    def holds(self) -> tuple[bool, bool]:
        """(psi side below phi, psi side above phi minus the bound)."""
        return self.scaled_psi <= self.phi, self.scaled_psi >= self.phi - self.bound


def sandwich_check(alloc: Allocation, problem: Problem) -> SandwichReport:
    n, r = problem.n, problem.r
    psi = count_failing_subsets(alloc, problem).psi
    return SandwichReport(phi_of_allocation(alloc, problem), scaled_psi(psi, n, r), 2 * tv_bound(n, r))

