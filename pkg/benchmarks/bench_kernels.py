"""Time each hot kernel under the numba and numpy backends.

    python benchmarks/bench_kernels.py [--repeat 5]

The first numba call per kernel is reported separately as compile time;
outputs of the two backends are compared before timing.
"""

import argparse
import time

import numpy as np

from charsumlab import kernels
from charsumlab.congruence import _multiplicity


def cases():
    rng = np.random.default_rng(0)
    l = 1_000_003
    S = np.sort(rng.choice(l, size=400, replace=False)).astype(np.int64)
    f = kernels.NUMPY["product_histogram"](l, S, 200)
    small_l = 10007
    f_small = kernels.NUMPY["product_histogram"](small_l, S % small_l, 60)
    f_wide = kernels.NUMPY["product_histogram"](101, np.arange(40, dtype=np.int64), 300)
    signs = rng.choice([-1, 0, 1], size=2_000_000).astype(np.int64)
    phases = np.exp(2j * np.pi * rng.random(1_000_000))
    pts = np.array([0, 1990, 4100, 6020, 8007], dtype=np.int64)
    primes = np.array([p for p in range(41, 81) if all(p % d for d in range(2, p))], dtype=np.int64)
    return {
        "jacobi_range": (12345, 1_000_000, 1_000_003),
        "max_abs_prefix_int": (signs,),
        "max_abs_prefix_complex": (phases,),
        "product_histogram": (l, S, 200),
        "window_sums": (f, 200),
        "weighted_correlation": (f_wide, _multiplicity(101, 300)),
        "autocorrelation": (f_small,),
        "count_m": (pts, 10_000, 200, 40, primes),
    }


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    if isinstance(a, float):
        return abs(a - b) <= 1e-9 * max(1.0, abs(a))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if "numba" not in kernels.BACKENDS:
        print("numba is not installed; only the numpy backend is available")
        return
    print(f"{'kernel':24s} {'numpy s':>10s} {'numba s':>10s} {'compile s':>10s} {'speedup':>8s}")
    for name, inputs in cases().items():
        np_fn, jit_fn = kernels.NUMPY[name], kernels.JIT[name]
        t0 = time.perf_counter()
        jit_out = jit_fn(*inputs)
        compile_s = time.perf_counter() - t0
        if not same(np_fn(*inputs), jit_out):
            raise SystemExit(f"{name}: backends disagree")
        t_np = best_of(np_fn, inputs, args.repeat)
        t_jit = best_of(jit_fn, inputs, args.repeat)
        print(f"{name:24s} {t_np:10.4f} {t_jit:10.4f} {compile_s:10.3f} {t_np / t_jit:8.1f}x")


if __name__ == "__main__":
    main()
