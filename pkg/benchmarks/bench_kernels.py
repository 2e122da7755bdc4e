"""Time each hot kernel under both backends on representative inputs.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``. The first call of
every numba kernel is a warm-up and is not timed.
"""

import argparse
import time

import numpy as np

from storalloc import kernels
from storalloc._accel import NUMBA_AVAILABLE


def cases(gen):
    n, r = 200, 8
    values = gen.integers(0, 10, size=n)
    src, dst = np.triu_indices(2000, k=1)
    keep = gen.random(src.shape[0]) < 3 * np.log(2000) / 2000
    yield "count_failing_rows", (values, gen.integers(0, n, size=(1 << 16, r)), 40), "65536 x 8 rows"
    yield "fisher_yates_prefix", (gen.integers(0, n - np.arange(r), size=(1 << 16, r)), n), "65536 x 8 offsets"
    yield "count_ordered_failures", (gen.integers(0, 5, size=12), 6, 15), "12^6 vectors"
    yield ("neighbourhood_sums", (gen.integers(0, 10, size=2000), src[keep].astype(np.int64),
                                  dst[keep].astype(np.int64), True), f"n=2000, {keep.sum()} edges")
    yield "truncated_power", (gen.dirichlet(np.ones(41)), 64, 40), "degree 40, power 64"


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    backends = ["numba", "numpy"] if NUMBA_AVAILABLE else ["numpy"]
    gen = np.random.default_rng(0)
    print(f"{'kernel':<24}{'input':<26}" + "".join(f"{b + ' ms':>12}" for b in backends) + f"{'speed-up':>10}")
    for name, inputs, label in cases(gen):
        timings = []
        for backend in backends:
            fn = kernels.IMPLEMENTATIONS[backend][name]
            fn(*inputs)
            timings.append(best_of(fn, inputs, args.repeat) * 1e3)
        ratio = f"{timings[1] / timings[0]:.1f}x" if len(timings) == 2 else "-"
        print(f"{name:<24}{label:<26}" + "".join(f"{t:>12.3f}" for t in timings) + f"{ratio:>10}")


if __name__ == "__main__":
    main()
