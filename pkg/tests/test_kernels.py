"""Both backends must agree exactly; results are compared with the plain-Python definitions."""

import itertools

import numpy as np
import pytest

from storalloc import kernels
from storalloc._accel import NUMBA_AVAILABLE

BACKENDS = [pytest.param("numba", marks=pytest.mark.skipif(not NUMBA_AVAILABLE, reason="numba missing")), "numpy"]


@pytest.fixture
def gen():
    return np.random.default_rng(42)


@pytest.mark.parametrize("backend", BACKENDS)
def test_count_failing_rows(backend, gen):
    fn = kernels.IMPLEMENTATIONS[backend]["count_failing_rows"]
    values = gen.integers(0, 6, size=12)
    idx = gen.integers(0, 12, size=(5000, 4))
    expected = sum(1 for row in idx if values[row].sum() < 9)
    assert fn(values, idx, 9) == expected


@pytest.mark.parametrize("backend", BACKENDS)
def test_fisher_yates_prefix(backend, gen):
    fn = kernels.IMPLEMENTATIONS[backend]["fisher_yates_prefix"]
    n, r = 7, 3
    offsets = gen.integers(0, n - np.arange(r), size=(4000, r))
    rows = fn(offsets, n)
    for off, row in zip(offsets.tolist(), rows.tolist()):
        pool = list(range(n))
        picked = []
        for i, o in enumerate(off):
            pool[i], pool[i + o] = pool[i + o], pool[i]
            picked.append(pool[i])
        assert row == picked


@pytest.mark.parametrize("backend", BACKENDS)
def test_count_ordered_failures(backend):
    fn = kernels.IMPLEMENTATIONS[backend]["count_ordered_failures"]
    values = np.array([3, 0, 1, 2, 2], dtype=np.int64)
    for r in (1, 2, 3, 4):
        expected = sum(1 for v in itertools.product(values.tolist(), repeat=r) if sum(v) < 4)
        assert fn(values, r, 4) == expected


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("closed", [True, False])
def test_neighbourhood_sums(backend, closed, gen):
    fn = kernels.IMPLEMENTATIONS[backend]["neighbourhood_sums"]
    n = 40
    x = gen.integers(0, 5, size=n)
    src, dst = np.triu_indices(n, k=1)
    keep = gen.random(src.shape[0]) < 0.1
    adj = np.zeros((n, n), dtype=np.int64)
    adj[src[keep], dst[keep]] = 1
    adj = adj + adj.T + (np.eye(n, dtype=np.int64) if closed else 0)
    np.testing.assert_array_equal(fn(x, src[keep].astype(np.int64), dst[keep].astype(np.int64), closed), adj @ x)


@pytest.mark.parametrize("backend", BACKENDS)
def test_truncated_power(backend):
    fn = kernels.IMPLEMENTATIONS[backend]["truncated_power"]
    coeffs = np.array([0.2, 0.5, 0.3])
    poly = np.array([1.0])
    for _ in range(5):
        poly = np.convolve(poly, coeffs)
    np.testing.assert_allclose(fn(coeffs, 5, 6), poly[:6], rtol=1e-13)


def test_backends_agree_on_large_inputs(gen):
    if not NUMBA_AVAILABLE:
        pytest.skip("numba missing")
    nb, npy = kernels.IMPLEMENTATIONS["numba"], kernels.IMPLEMENTATIONS["numpy"]
    values = gen.integers(0, 20, size=500)
    idx = gen.integers(0, 500, size=(50_000, 8))
    assert nb["count_failing_rows"](values, idx, 60) == npy["count_failing_rows"](values, idx, 60)
    offsets = gen.integers(0, 500 - np.arange(8), size=(50_000, 8))
    np.testing.assert_array_equal(nb["fisher_yates_prefix"](offsets, 500), npy["fisher_yates_prefix"](offsets, 500))
    small = gen.integers(0, 4, size=9)
    assert nb["count_ordered_failures"](small, 5, 9) == npy["count_ordered_failures"](small, 5, 9)
