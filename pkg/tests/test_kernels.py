import os
import subprocess
import sys

import numpy as np
from hypothesis import given, settings, strategies as st

from charsumlab import kernels
from charsumlab.arith import jacobi

ints = st.lists(st.integers(-5, 5), min_size=1, max_size=200)


def test_jacobi_range(backend):
    for q in (1, 3, 9, 15, 10007):
        got = backend["jacobi_range"](q - 3 if q > 3 else 0, 50, q)
        start = q - 3 if q > 3 else 0
        assert list(got) == [jacobi(n, q) for n in range(start, start + 50)]


@settings(max_examples=50, deadline=None)
@given(ints)
def test_max_abs_prefix_int(vals):
    expected = max(abs(x) for x in np.cumsum(vals))
    for backend in kernels.BACKENDS.values():
        assert backend["max_abs_prefix_int"](np.array(vals, dtype=np.int64)) == expected


def test_max_abs_prefix_complex(backend):
    rng = np.random.default_rng(0)
    v = np.exp(2j * np.pi * rng.random(500))
    assert abs(backend["max_abs_prefix_complex"](v) - np.abs(np.cumsum(v)).max()) < 1e-9


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([3, 5, 7, 31, 101]), st.lists(st.integers(0, 100), max_size=20, unique=True),
       st.integers(1, 40))
def test_product_histogram_and_windows(l, S, n):
    s = np.array(sorted({x % l for x in S}), dtype=np.int64)
    f_ref = np.zeros(l, dtype=np.int64)
    for a in range(1, n + 1):
        for x in s:
            f_ref[a * x % l] += 1
    mult = np.bincount(np.arange(-n, n + 1) % l, minlength=l)
    corr_ref = sum(int(f_ref[x]) * int(f_ref[y]) * int(mult[(x - y) % l]) for x in range(l) for y in range(l))
    auto_ref = np.array([sum(int(f_ref[y + d - l if y + d >= l else y + d]) * int(f_ref[y]) for y in range(l))
                         for d in range(l)])
    for backend in kernels.BACKENDS.values():
        f = backend["product_histogram"](l, s, n)
        assert np.array_equal(f, f_ref)
        assert backend["weighted_correlation"](f, mult) == corr_ref
        assert np.array_equal(backend["autocorrelation"](f), auto_ref)
        if 2 * n + 1 <= l:
            w = backend["window_sums"](f, n)
            w_ref = [sum(int(f_ref[(x + c) % l]) for c in range(-n, n + 1)) for x in range(l)]
            assert list(w) == w_ref


def _count_m_ref(points, q, H, P, primes):
    m1 = m2 = 0
    for p1 in primes:
        for p2 in primes:
            for nj in points:
                for nk in points:
                    for a1 in range(p1):
                        for a2 in range(p2):
                            if abs((nj - a1 * q) * p2 - (nk - a2 * q) * p1) * P <= H * p1 * p2:
                                if p1 == p2:
                                    m1 += 1
                                else:
                                    m2 += 1
    return m1, m2


def test_count_m_backends_agree(backend):
    pts = np.array([0, 230, 517, 900], dtype=np.int64)
    for P, primes in [(1, [2]), (4, [5, 7]), (6, [7, 11])]:
        ref = _count_m_ref(list(pts), 1000, 120, P, primes)
        assert backend["count_m"](pts, 1000, 120, P, np.array(primes, dtype=np.int64)) == ref


def test_backend_flag_selects_numpy():
    env = dict(os.environ, CHARSUMLAB_DISABLE_JIT="1")
    out = subprocess.run([sys.executable, "-c", "import charsumlab; print(charsumlab.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
