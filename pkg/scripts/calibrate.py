"""Re-derive the regression constants frozen in tests/test_acceptance.py.

Every count used here is cross-checked against the brute-force oracle.
Run: python scripts/calibrate.py
"""

import math

from charsumlab.arith import is_prime
from charsumlab.congruence import count_N_bruteforce, extremal_set
from charsumlab.harness import ExperimentConfig, run_proposition, run_theorem

SHARPNESS_GRID = [(5, 100), (10, 50), (20, 25)]


def theorem_primes(count=20, lo=10_000, hi=100_000):
    """Primes spread evenly over [lo, hi]: next prime up, or the last one below hi."""
    out = []
    for i in range(count):
        p = lo + (hi - lo) * i // (count - 1)
        step = 1 if i < count - 1 else -1
        while not is_prime(p):
            p += step
        out.append(p)
    return out


def main():
    cfg = ExperimentConfig.default("proposition", epsilon=0.2, oracle_limit=10**9, chain=False)
    rows = [r for r in run_proposition(cfg) if not r.skipped]
    assert all(r.extra["oracle"] == r.lhs for r in rows)
    print(f"proposition: max N / prop_rhs over {len(rows)} rows = {max(r.ratios['prop'] for r in rows)!r}")

    l = 10007
    c0 = []
    for n, m in SHARPNESS_GRID:
        N = count_N_bruteforce(l, extremal_set(l, m), n).N
        c0.append(N / (n * n * m))
        print(f"sharpness: n={n} m={m} N={N} N/(n^2 m)={c0[-1]!r}")
    print(f"sharpness: min = {min(c0)!r}")

    primes = theorem_primes()
    rows = run_theorem(ExperimentConfig("theorem", q_list=primes, H_pow=0.3, r=2, J_frac=0.5))
    assert all(r.passed for r in rows)
    print(f"theorem primes: {primes}")
    print(f"theorem: max lhs / rhs_thm2r = {max(r.ratios['thm2r'] for r in rows)!r}")


if __name__ == "__main__":
    main()
