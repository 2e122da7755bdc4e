"""Hot numeric loops, each in a numba and a pure-numpy flavour.

The public names at the bottom dispatch on :data:`storalloc._accel.BACKEND`.
``IMPLEMENTATIONS`` exposes both flavours side by side for parity tests and
the benchmark script. All randomness is drawn by the callers with numpy, so the
kernels are deterministic functions of their array inputs.
"""

import numpy as np

from ._accel import BACKEND, njit


# -- failure counting over sampled index rows ---------------------------------

def _count_failing_rows_loop(values, idx, F):
    count = 0
    S, r = idx.shape
    for s in range(S):
        total = 0
        for i in range(r):
            total += values[idx[s, i]]
        if total < F:
            count += 1
    return count


def _count_failing_rows_np(values, idx, F):
    return int(np.count_nonzero(values[idx].sum(axis=1) < F))


# -- distinct draws via a partial Fisher-Yates shuffle -------------------------

def _fisher_yates_prefix_loop(offsets, n):
    # offsets[s, i] is uniform on [0, n - i); row s becomes r distinct nodes.
    S, r = offsets.shape
    out = np.empty((S, r), dtype=np.int64)
    perm = np.arange(n)
    for s in range(S):
        for i in range(r):
            k = i + offsets[s, i]
            tmp = perm[i]
            perm[i] = perm[k]
            perm[k] = tmp
            out[s, i] = perm[i]
        # undo the swaps in reverse so perm is the identity again
        for i in range(r - 1, -1, -1):
            k = i + offsets[s, i]
            tmp = perm[i]
            perm[i] = perm[k]
            perm[k] = tmp
    return out


def _fisher_yates_prefix_np(offsets, n):
    S, r = offsets.shape
    rows = np.arange(S)
    perm = np.tile(np.arange(n, dtype=np.int64), (S, 1))
    for i in range(r):
        k = i + offsets[:, i].astype(np.int64)
        a = perm[rows, i].copy()
        perm[rows, i] = perm[rows, k]
        perm[rows, k] = a
    return perm[:, :r].copy()


# -- exhaustive count over ordered vectors with repetition ---------------------

def _count_ordered_failures_loop(values, r, F):
    n = values.shape[0]
    digits = np.zeros(r, dtype=np.int64)
    count = 0
    while True:
        total = 0
        for i in range(r):
            total += values[digits[i]]
        if total < F:
            count += 1
        pos = r - 1
        while pos >= 0:
            digits[pos] += 1
            if digits[pos] < n:
                break
            digits[pos] = 0
            pos -= 1
        if pos < 0:
            return count


def _count_ordered_failures_np(values, r, F):
    capped = np.minimum(values, F)
    sums = capped.copy()
    for _ in range(r - 1):
        sums = np.minimum(np.add.outer(sums, capped).ravel(), F)
    return int(np.count_nonzero(sums < F))


# -- graph neighbourhood sums --------------------------------------------------

def _neighbourhood_sums_loop(x, src, dst, closed):
    n = x.shape[0]
    acc = np.zeros(n, dtype=np.int64)
    if closed:
        for v in range(n):
            acc[v] = x[v]
    for e in range(src.shape[0]):
        a = src[e]
        b = dst[e]
        acc[a] += x[b]
        acc[b] += x[a]
    return acc


def _neighbourhood_sums_np(x, src, dst, closed):
    n = x.shape[0]
    acc = x.copy() if closed else np.zeros(n, dtype=np.int64)
    np.add.at(acc, src, x[dst])
    np.add.at(acc, dst, x[src])
    return acc


# -- truncated power of a probability polynomial (float fast path) -------------

def _truncated_power_loop(coeffs, r, F):
    base = np.zeros(F, dtype=np.float64)
    for k in range(min(F, coeffs.shape[0])):
        base[k] = coeffs[k]
    acc = base.copy()
    for _ in range(r - 1):
        nxt = np.zeros(F, dtype=np.float64)
        for a in range(F):
            if acc[a] == 0.0:
                continue
            for b in range(F - a):
                nxt[a + b] += acc[a] * base[b]
        acc = nxt
    return acc


def _truncated_power_np(coeffs, r, F):
    base = np.zeros(F, dtype=np.float64)
    k = min(F, coeffs.shape[0])
    base[:k] = coeffs[:k]
    acc = base.copy()
    for _ in range(r - 1):
        acc = np.convolve(acc, base)[:F]
    return acc


_count_failing_rows_nb = njit(_count_failing_rows_loop)
_fisher_yates_prefix_nb = njit(_fisher_yates_prefix_loop)
_count_ordered_failures_nb = njit(_count_ordered_failures_loop)
_neighbourhood_sums_nb = njit(_neighbourhood_sums_loop)
_truncated_power_nb = njit(_truncated_power_loop)

IMPLEMENTATIONS = {
    "numba": {
        "count_failing_rows": _count_failing_rows_nb,
        "fisher_yates_prefix": _fisher_yates_prefix_nb,
        "count_ordered_failures": _count_ordered_failures_nb,
        "neighbourhood_sums": _neighbourhood_sums_nb,
        "truncated_power": _truncated_power_nb,
    },
    "numpy": {
        "count_failing_rows": _count_failing_rows_np,
        "fisher_yates_prefix": _fisher_yates_prefix_np,
        "count_ordered_failures": _count_ordered_failures_np,
        "neighbourhood_sums": _neighbourhood_sums_np,
        "truncated_power": _truncated_power_np,
    },
}

_active = IMPLEMENTATIONS[BACKEND]


def count_failing_rows(values, idx, F) -> int:
    """Number of rows ``s`` with ``sum(values[idx[s]]) < F``."""
    return int(_active["count_failing_rows"](np.ascontiguousarray(values, dtype=np.int64),
                                             np.ascontiguousarray(idx, dtype=np.int64), int(F)))


def fisher_yates_prefix(offsets, n):
    """Map offsets ``offsets[s, i] in [0, n - i)`` to rows of distinct node indices."""
    return _active["fisher_yates_prefix"](np.ascontiguousarray(offsets, dtype=np.int64), int(n))


def count_ordered_failures(values, r, F) -> int:
    """Number of vectors in ``[n]^r`` whose summed values fall below ``F``."""
    return int(_active["count_ordered_failures"](np.ascontiguousarray(values, dtype=np.int64), int(r), int(F)))


def neighbourhood_sums(x, src, dst, closed=True):
    """Symbols reachable from each node over the undirected edges ``src[e]-dst[e]``."""
    return _active["neighbourhood_sums"](np.ascontiguousarray(x, dtype=np.int64),
                                         np.ascontiguousarray(src, dtype=np.int64),
                                         np.ascontiguousarray(dst, dtype=np.int64), bool(closed))


def truncated_power(coeffs, r, F):
    """Coefficients of degrees ``< F`` of ``p(u) ** r``, truncating after every product."""
    return _active["truncated_power"](np.ascontiguousarray(coeffs, dtype=np.float64), int(r), int(F))
