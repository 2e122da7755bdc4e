"""Symmetric allocation on connected random graphs.

In G(n, p) with ``p = d ln(n) / n`` each node reads about ``r = (n-1) p`` other
nodes, and the count of non-empty chunks it sees is close to Poisson with mean
``mu / j`` where ``mu = r T / n``. :func:`gnp_recovery_rate` simulates the graph
to check that limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import DoesNotFit, InvalidChunk, InvalidParameter


@dataclass(frozen=True)
class PoissonRegime:
    mu: float
    F: int
    r: int

    def __post_init__(self):
        if not self.mu > 0:
            raise InvalidParameter("mu", f"must be positive, got {self.mu}")


def poisson_failure(j: int, mu: float, F: int) -> float:
    """``P(Poisson(mu / j) <= (F-1) // j)``."""
    if not 1 <= j <= F:
        raise InvalidChunk(j, F)
    if not mu > 0:
        raise InvalidParameter("mu", f"must be positive, got {mu}")
    lam = mu / j
    term = math.exp(-lam)
    total = term
    for k in range(1, (F - 1) // j + 1):
        term *= lam / k
        total += term
    return min(total, 1.0)


def optimize_symmetric_poisson(mu: float, F: int, r: int, full_scan: bool = False):
    """Chunk size minimizing the Poisson failure; returns ``(j_star, failure)``.

    Scans ``ceil(F/i)`` for ``i = 1..r`` or every ``j`` with ``full_scan``.
    Ties go to the larger ``j``.
    """
    PoissonRegime(mu, F, r)
    js = range(1, F + 1) if full_scan else {-(-F // i) for i in range(1, r + 1)}
    best = min(js, key=lambda j: (poisson_failure(j, mu, F), -j))
    return best, poisson_failure(best, mu, F)


@dataclass(frozen=True)
class GraphTrialConfig:
    n: int
    d: float
    j: int
    T: int
    trials: int = 20
    seed: int = 0
    closed: bool = True

    def __post_init__(self):
        if self.n < 2:
            raise InvalidParameter("n", f"need at least two nodes, got {self.n}")
        if self.trials < 1:
            raise InvalidParameter("trials", f"need at least one trial, got {self.trials}")
        if self.j < 1:
            raise InvalidParameter("j", f"chunk size must be positive, got {self.j}")
        if self.T < 0:
            raise InvalidParameter("T", f"budget must be non-negative, got {self.T}")
        if not self.d > 0:
            raise InvalidParameter("d", f"must be positive, got {self.d}")
        if self.p >= 1:
            raise InvalidParameter("d", f"edge probability d*ln(n)/n = {self.p:.6g} is not below 1")
        if self.T // self.j > self.n:
            raise DoesNotFit(f"{self.T // self.j} chunks of size {self.j} need more than {self.n} nodes")

    @property
    def p(self) -> float:
        return self.d * math.log(self.n) / self.n

    @property
    def m(self) -> int:
        return self.T // self.j

    @property
    def access_size(self) -> float:
        """Expected number of nodes a receiver reads."""
        return (self.n - 1) * self.p + (1 if self.closed else 0)

    def mu(self) -> float:
        """Mean number of placed symbols a receiver sees: ``access_size * m * j / n``."""
        return self.access_size * self.m * self.j / self.n


@lru_cache(maxsize=4)
def _pairs(n):
    src, dst = np.triu_indices(n, k=1)
    return src.astype(np.int64), dst.astype(np.int64)


def _trial_success(cfg: GraphTrialConfig, F: int, trial: int) -> float:
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed, spawn_key=(trial,)))
    src, dst = _pairs(cfg.n)
    keep = rng.random(src.shape[0]) < cfg.p
    x = np.zeros(cfg.n, dtype=np.int64)
    x[rng.permutation(cfg.n)[: cfg.m]] = cfg.j
    sums = kernels.neighbourhood_sums(x, src[keep], dst[keep], cfg.closed)
    return float(np.count_nonzero(sums >= F)) / cfg.n


def gnp_recovery_rate(cfg: GraphTrialConfig, F: int) -> tuple[float, float]:
    """Mean fraction of nodes that can rebuild the file, and its standard error.

    Each trial draws G(n, p) and places ``m = T // j`` chunks on distinct
    uniformly random nodes; any remainder is not placed. Trial ``t`` uses the
    generator seeded by ``(seed, t)``, so results do not depend on how trials
    are scheduled.
    """
    if F < 1:
        raise InvalidParameter("F", f"file size must be positive, got {F}")
    rates = np.array([_trial_success(cfg, F, t) for t in range(cfg.trials)])
    mean = math.fsum(rates) / cfg.trials
    if cfg.trials == 1:
        return mean, 0.0
    var = math.fsum((rates - mean) ** 2) / (cfg.trials - 1)
    return mean, math.sqrt(var / cfg.trials)
