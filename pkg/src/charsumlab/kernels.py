"""Hot inner loops, each in two interchangeable implementations.

Every kernel exists as a numba ``@njit`` function (``jit_*``) and as a pure
numpy function (``np_*``). The public names (``jacobi_range`` and friends)
are bound to the jit versions unless ``CHARSUMLAB_DISABLE_JIT`` is set to a
truthy value, or numba cannot be imported. Both backends return identical
integers; ``benchmarks/bench_kernels.py`` times one against the other.

All counting kernels work in int64. Callers check magnitudes before calling
and switch to Python integers when a product could overflow.
"""

from __future__ import annotations

import logging
import os

import numpy as np

logger = logging.getLogger(__name__)

_FLAG = os.environ.get("CHARSUMLAB_DISABLE_JIT", "").strip().lower()
JIT_REQUESTED = _FLAG not in ("1", "true", "yes", "on")

try:
    import numba

    logging.getLogger("numba").setLevel(logging.WARNING)
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_JIT = JIT_REQUESTED and HAVE_NUMBA
BACKEND = "numba" if USE_JIT else "numpy"


def _njit(func):
    if not HAVE_NUMBA:
        return func
    return numba.njit(cache=True)(func)


# --------------------------------------------------------------------------
# Jacobi symbol over a run of consecutive integers


def np_jacobi_range(start: int, count: int, q: int) -> np.ndarray:
    """Jacobi symbols (n/q) for n = start, ..., start+count-1; q odd."""
    a = (np.arange(count, dtype=np.int64) + (start % q)) % q
    m = np.full(count, q, dtype=np.int64)
    res = np.ones(count, dtype=np.int8)
    active = a != 0
    while active.any():
        while True:
            even = active & (a % 2 == 0)
            if not even.any():
                break
            a[even] //= 2
            flip = even & ((m % 8 == 3) | (m % 8 == 5))
            res[flip] = -res[flip]
        idx = np.nonzero(active)[0]
        na, nm = m[idx], a[idx]
        flip = (na % 4 == 3) & (nm % 4 == 3)
        r = res[idx]
        r[flip] = -r[flip]
        res[idx] = r
        a[idx] = na % nm
        m[idx] = nm
        active = a != 0
    res[m != 1] = 0
    return res


@_njit
def jit_jacobi_range(start, count, q):
    out = np.empty(count, dtype=np.int8)
    base = start % q
    for i in range(count):
        a = (base + i) % q
        m = q
        res = 1
        while a != 0:
            while a % 2 == 0:
                a //= 2
                r8 = m % 8
                if r8 == 3 or r8 == 5:
                    res = -res
            a, m = m, a
            if a % 4 == 3 and m % 4 == 3:
                res = -res
            a = a % m
        out[i] = res if m == 1 else 0
    return out


# --------------------------------------------------------------------------
# Running prefix maxima


def np_max_abs_prefix_int(vals: np.ndarray) -> int:
    if len(vals) == 0:
        return 0
    return int(np.abs(np.cumsum(vals, dtype=np.int64)).max())


@_njit
def jit_max_abs_prefix_int(vals):
    best = 0
    acc = 0
    for i in range(len(vals)):
        acc += vals[i]
        v = acc if acc >= 0 else -acc
        if v > best:
            best = v
    return best


def np_max_abs_prefix_complex(vals: np.ndarray) -> float:
    if len(vals) == 0:
        return 0.0
    # cumsum accumulates left to right, matching the jit loop term for term
    return float(np.abs(np.cumsum(vals)).max())


@_njit
def jit_max_abs_prefix_complex(vals):
    best = 0.0
    acc = 0j
    for i in range(len(vals)):
        acc += vals[i]
        v = abs(acc)
        if v > best:
            best = v
    return best


# --------------------------------------------------------------------------
# Histograms and correlations over F_l


def np_product_histogram(l: int, elements: np.ndarray, n: int) -> np.ndarray:
    """f[x] = #{(a, s): 1 <= a <= n, s in S, a*s = x mod l}."""
    f = np.zeros(l, dtype=np.int64)
    if n == 0 or len(elements) == 0:
        return f
    s = np.asarray(elements, dtype=np.int64) % l
    # one residue row per a keeps memory at O(|S|)
    step = s.copy()
    cur = s.copy()
    for _ in range(n):
        f += np.bincount(cur, minlength=l)
        cur += step
        cur %= l
    return f


@_njit
def jit_product_histogram(l, elements, n):
    f = np.zeros(l, dtype=np.int64)
    for j in range(len(elements)):
        s = elements[j] % l
        x = 0
        for _ in range(n):
            x += s
            if x >= l:
                x -= l
            f[x] += 1
    return f


def np_window_sums(f: np.ndarray, n: int) -> np.ndarray:
    """W[x] = sum_{|c| <= n} f[(x - c) mod l], requires 2n+1 <= l."""
    l = len(f)
    ext = np.concatenate((f[l - n:], f, f[:n])) if n else f
    pref = np.concatenate(([0], np.cumsum(ext, dtype=np.int64)))
    return pref[2 * n + 1: 2 * n + 1 + l] - pref[:l]


@_njit
def jit_window_sums(f, n):
    l = len(f)
    w = np.zeros(l, dtype=np.int64)
    acc = 0
    for c in range(-n, n + 1):
        acc += f[c % l]
    for x in range(l):
        w[x] = acc
        # slide window [x-n, x+n] -> [x+1-n, x+1+n]
        acc += f[(x + 1 + n) % l] - f[(x - n) % l]
    return w


def np_weighted_correlation(f: np.ndarray, mult: np.ndarray) -> int:
    """sum_x f[x] sum_y f[y] mult[(x - y) mod l] as an exact Python int."""
    total = 0
    for d in np.nonzero(mult)[0]:
        # sum_x f[x] f[x - d]
        total += int(mult[d]) * int(np.dot(f, np.roll(f, int(d))))
    return total


@_njit
def jit_weighted_correlation(f, mult):
    l = len(f)
    total = 0
    for d in range(l):
        md = mult[d]
        if md == 0:
            continue
        acc = 0
        for x in range(l):
            fx = f[x]
            if fx != 0:
                y = x - d
                if y < 0:
                    y += l
                acc += fx * f[y]
        total += md * acc
    return total


def np_autocorrelation(f: np.ndarray) -> np.ndarray:
    """D[d] = sum_x f[x] f[(x - d) mod l], exact int64."""
    l = len(f)
    nz = np.nonzero(f)[0]
    d = np.zeros(l, dtype=np.int64)
    for x in nz:
        # contributes f[x] f[y] to D[x - y] for every y
        d += f[x] * np.roll(f[::-1], x + 1)
    return d


@_njit
def jit_autocorrelation(f):
    l = len(f)
    nz = np.nonzero(f)[0]
    d = np.zeros(l, dtype=np.int64)
    for i in range(len(nz)):
        x = nz[i]
        fx = f[x]
        for j in range(len(nz)):
            y = nz[j]
            k = x - y
            if k < 0:
                k += l
            d[k] += fx * f[y]
    return d


# --------------------------------------------------------------------------
# Tuple count for the Burgess reduction


def np_count_m(points: np.ndarray, q: int, H: int, P: int, primes: np.ndarray):
    """(M1, M2): tuples (a1, a2, p1, p2, N_j, N_k) with
    |(N_j - a1 q) p2 - (N_k - a2 q) p1| * P <= H p1 p2, split by p1 == p2."""
    pts = np.asarray(points, dtype=np.int64)
    m1 = m2 = 0
    if len(pts) == 0:
        return 0, 0
    for p1 in primes:
        p1 = int(p1)
        a1 = np.arange(p1, dtype=np.int64)
        for p2 in primes:
            p2 = int(p2)
            a2 = np.arange(p2, dtype=np.int64)
            bound = H * p1 * p2
            x = ((pts[:, None] - a1[None, :] * q) * p2).ravel()
            y = ((pts[:, None] - a2[None, :] * q) * p1).ravel()
            cnt = 0
            for i in range(0, len(x), 256):
                diff = np.abs(x[i:i + 256, None] - y[None, :]) * P
                cnt += int(np.count_nonzero(diff <= bound))
            if p1 == p2:
                m1 += cnt
            else:
                m2 += cnt
    return m1, m2


@_njit
def jit_count_m(points, q, H, P, primes):
    m1 = 0
    m2 = 0
    J = len(points)
    for i1 in range(len(primes)):
        p1 = primes[i1]
        for i2 in range(len(primes)):
            p2 = primes[i2]
            bound = H * p1 * p2
            cnt = 0
            for j in range(J):
                for a1 in range(p1):
                    x = (points[j] - a1 * q) * p2
                    for k in range(J):
                        for a2 in range(p2):
                            d = x - (points[k] - a2 * q) * p1
                            if d < 0:
                                d = -d
                            if d * P <= bound:
                                cnt += 1
            if p1 == p2:
                m1 += cnt
            else:
                m2 += cnt
    return m1, m2


# --------------------------------------------------------------------------

NAMES = (
    "jacobi_range",
    "max_abs_prefix_int",
    "max_abs_prefix_complex",
    "product_histogram",
    "window_sums",
    "weighted_correlation",
    "autocorrelation",
    "count_m",
)

NUMPY = {name: globals()["np_" + name] for name in NAMES}
JIT = {name: globals()["jit_" + name] for name in NAMES}


def _wrap_jit_weighted_correlation(f, mult):
    return int(jit_weighted_correlation(np.ascontiguousarray(f, dtype=np.int64),
                                        np.ascontiguousarray(mult, dtype=np.int64)))


def _wrap_jit_count_m(points, q, H, P, primes):
    m1, m2 = jit_count_m(np.asarray(points, dtype=np.int64), np.int64(q), np.int64(H),
                         np.int64(P), np.asarray(primes, dtype=np.int64))
    return int(m1), int(m2)


def _wrap_jit_product_histogram(l, elements, n):
    return jit_product_histogram(np.int64(l), np.asarray(elements, dtype=np.int64), np.int64(n))


def _wrap_jit_max_abs_prefix_int(vals):
    return int(jit_max_abs_prefix_int(np.asarray(vals, dtype=np.int64)))


def _wrap_jit_max_abs_prefix_complex(vals):
    return float(jit_max_abs_prefix_complex(np.asarray(vals, dtype=np.complex128)))


def _wrap_jit_jacobi_range(start, count, q):
    return jit_jacobi_range(np.int64(start % q), np.int64(count), np.int64(q))


def _wrap_jit_window_sums(f, n):
    return jit_window_sums(np.asarray(f, dtype=np.int64), np.int64(n))


def _wrap_jit_autocorrelation(f):
    return jit_autocorrelation(np.asarray(f, dtype=np.int64))


JIT.update(
    jacobi_range=_wrap_jit_jacobi_range,
    max_abs_prefix_int=_wrap_jit_max_abs_prefix_int,
    max_abs_prefix_complex=_wrap_jit_max_abs_prefix_complex,
    product_histogram=_wrap_jit_product_histogram,
    window_sums=_wrap_jit_window_sums,
    weighted_correlation=_wrap_jit_weighted_correlation,
    autocorrelation=_wrap_jit_autocorrelation,
    count_m=_wrap_jit_count_m,
)

BACKENDS = {"numpy": NUMPY}
if HAVE_NUMBA:
    BACKENDS["numba"] = JIT

_active = JIT if USE_JIT else NUMPY

jacobi_range = _active["jacobi_range"]
max_abs_prefix_int = _active["max_abs_prefix_int"]
max_abs_prefix_complex = _active["max_abs_prefix_complex"]
product_histogram = _active["product_histogram"]
window_sums = _active["window_sums"]
weighted_correlation = _active["weighted_correlation"]
autocorrelation = _active["autocorrelation"]
count_m = _active["count_m"]
