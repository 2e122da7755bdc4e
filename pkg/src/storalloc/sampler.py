"""Seeded Monte Carlo estimates of the two failure probabilities.

Samples are drawn in fixed chunks of :data:`CHUNK` rows; chunk ``k`` comes from
``SeedSequence(seed, spawn_key=(k,))``. Sample ``i`` is therefore a pure
function of ``(seed, i)`` and the estimate does not depend on how chunks are
scheduled across workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import InvalidParameter
from .model import Allocation, Problem, check_allocation

CHUNK = 1 << 16


class SampleMode(str, Enum):
    WITH_REPETITION = "with_repetition"
    WITHOUT_REPETITION = "without_repetition"


@dataclass(frozen=True)
class McEstimate:
    mean: float
    stderr: float
    samples: int
    seed: int
    mode: SampleMode
    failures: int


def _draw_chunk(n, r, mode, size, seed, k):
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(k,)))
    if mode is SampleMode.WITH_REPETITION:
        return rng.integers(0, n, size=(size, r), dtype=np.int64)
    offsets = rng.integers(0, n - np.arange(r), size=(size, r), dtype=np.int64)
    return kernels.fisher_yates_prefix(offsets, n)


@lru_cache(maxsize=32)
def _chunk_indices(n, r, mode, size, seed, k):
    # the same draws serve every allocation on n nodes, so estimates in a sweep share them
    idx = _draw_chunk(n, r, mode, size, seed, k)
    idx.flags.writeable = False
    return idx


def _chunk_sizes(samples):
    full, rest = divmod(samples, CHUNK)
    return [CHUNK] * full + ([rest] if rest else [])


def mc_failure(alloc: Allocation, problem: Problem, mode=SampleMode.WITH_REPETITION,
               samples: int = 1_000_000, seed: int = 0, workers: int = 1) -> McEstimate:
    """Estimate the chance that ``r`` random nodes hold fewer than ``F`` symbols.

    ``with_repetition`` draws nodes i.i.d. (estimates phi); ``without_repetition``
    draws ``r`` distinct nodes (estimates psi / C(n, r)).
    """
    check_allocation(alloc, problem)
    mode = SampleMode(mode)
    if samples < 1:
        raise InvalidParameter("samples", f"need at least one sample, got {samples}")
    n, r, F = problem.n, problem.r, problem.F
    values = np.minimum(np.asarray(alloc.x, dtype=np.int64), F)

    def run(task):
        k, size = task
        return kernels.count_failing_rows(values, _chunk_indices(n, r, mode, size, seed, k), F)

    tasks = list(enumerate(_chunk_sizes(samples)))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            failures = sum(pool.map(run, tasks))
    else:
        failures = sum(map(run, tasks))
    mean = failures / samples
    return McEstimate(mean, math.sqrt(mean * (1 - mean) / samples), samples, seed, mode, failures)
