"""Parameters and tuple counts of the Burgess-type reduction to N(l, S, 12P).

Given spaced points N_1 < ... < N_J mod q, pick a prime l in (q/H, 2q/H],
a scale P ~ 2H q^(-1/(2r)), embed the points as M_j = floor(N_j l / q) in
F_l, and count the tuples (a1, a2, p1, p2, N_j, N_k) with p1, p2 primes in
(P, 2P], 0 <= a_i < p_i and

    |(N_j - a1 q)/p1 - (N_k - a2 q)/p2| <= H/P.

The count with p1 != p2 injects into the solutions counted by N(l, S, 12P).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .arith import is_prime, prime_in_interval, primes_in_range
from .charsum import BoundParams, SpacedPoints
from .congruence import ResidueSet, count_N_fast
from .errors import EmbeddingCollision, HTooSmall, ScaleExceeded, ValidationError

__all__ = [
    "ReductionConfig",
    "MCount",
    "M2Check",
    "choose_l",
    "choose_P",
    "embed_points",
    "count_M",
    "enumerate_M2_tuples",
    "check_m2_vs_N",
    "hb1_rhs",
    "prop_hb_rhs",
    "make_reduction_config",
]

BRUTE_CAP = 10**9
INT64_SAFE = 2**62


def choose_l(q: int, H: int) -> int:
    """Smallest prime in (q/H, 2q/H]."""
    if not 1 <= H <= q:
        raise ValidationError(f"need 1 <= H <= q, got H={H}, q={q}")
    return prime_in_interval(Fraction(q, H), Fraction(2 * q, H))


def _root_le(H: int, q: int, r: int) -> bool:
    """H <= q^(1/(2r)), exactly."""
    return H ** (2 * r) <= q


def choose_P(q: int, H: int, r: int) -> int:
    """ceil(2 H q^(-1/(2r))), the smallest admissible P."""
    if _root_le(H, q, r):
        raise HTooSmall(f"H={H} must exceed q^(1/(2r)) = {q ** (1 / (2 * r)):.6g}")
    P = max(1, math.ceil(2 * H / q ** (1 / (2 * r))))
    # settle the float estimate exactly: P is least with P^(2r) q >= (2H)^(2r)
    target = (2 * H) ** (2 * r)
    while P > 1 and (P - 1) ** (2 * r) * q >= target:
        P -= 1
    while P ** (2 * r) * q < target:
        P += 1
    return P


def embed_points(points: SpacedPoints, l: int, q: int) -> ResidueSet:
    """S = {floor(N_j l / q)}, which must be strictly increasing."""
    M = [n * l // q for n in points.points]
    for a, b in zip(M, M[1:]):
        if b <= a:
            raise EmbeddingCollision(f"M values collide ({a}, {b}); is l > q/H?")
    return ResidueSet(l, tuple(M))


@dataclass(frozen=True)
class ReductionConfig:
    q: int
    H: int
    r: int
    l: int
    P: int
    points: SpacedPoints

    def __post_init__(self):
        if not is_prime(self.l):
            raise ValidationError(f"l = {self.l} is not prime")
        if self.P < 1 or self.r < 1:
            raise ValidationError("need P >= 1 and r >= 1")
        if self.points.q != self.q:
            raise ValidationError("points use a different modulus")

    @property
    def J(self) -> int:
        return self.points.J

    def window_violations(self) -> list[str]:
        """Which of the parameter windows this config falls outside of."""
        q, H, r, l, P = self.q, self.H, self.r, self.l, self.P
        out = []
        if not (q < l * H and l * H <= 2 * q):
            out.append("l not in (q/H, 2q/H]")
        if P ** (2 * r) * q < (2 * H) ** (2 * r):
            out.append("P < 2H q^(-1/(2r))")
        if P ** (2 * r) * q > (4 * H) ** (2 * r):
            out.append("P > 4H q^(-1/(2r))")
        if _root_le(H, q, r):
            out.append("H <= q^(1/(2r))")
        return out


def make_reduction_config(q: int, H: int, r: int, points: SpacedPoints,
                          l: int | None = None, P: int | None = None) -> ReductionConfig:
    return ReductionConfig(q, H, r, choose_l(q, H) if l is None else l,
                           choose_P(q, H, r) if P is None else P, points)


@dataclass(frozen=True)
class MCount:
    M: int
    M1: int
    M2: int

    def __post_init__(self):
        if self.M != self.M1 + self.M2:
            raise AssertionError("M must equal M1 + M2")


def _primes(P: int) -> list[int]:
    return primes_in_range(P, 2 * P)


def count_M(cfg: ReductionConfig) -> MCount:
    """Exact brute-force count; the inequality is tested in cross-multiplied integers."""
    if cfg.J == 0:
        return MCount(0, 0, 0)
    primes = _primes(cfg.P)
    work = cfg.P**2 * len(primes) ** 2 * cfg.J**2
    if work > BRUTE_CAP:
        raise ScaleExceeded(f"brute-force work {work} exceeds {BRUTE_CAP}")
    P, q = cfg.P, cfg.q
    if 16 * P**3 * (q + 1) >= INT64_SAFE or cfg.H * 4 * P * P >= INT64_SAFE:
        raise ScaleExceeded("cross-multiplied quantities would overflow 64 bits")
    m1, m2 = kernels.count_m(np.asarray(cfg.points.points, dtype=np.int64), q, cfg.H, P,
                             np.asarray(primes, dtype=np.int64))
    return MCount(m1 + m2, m1, m2)


def enumerate_M2_tuples(cfg: ReductionConfig):
    """Yield (a1, a2, p1, p2, N_j, N_k) with p1 != p2; for diagnosing failures."""
    q, H, P = cfg.q, cfg.H, cfg.P
    primes = _primes(P)
    for p1 in primes:
        for p2 in primes:
            if p1 == p2:
                continue
            for nj in cfg.points.points:
                for a1 in range(p1):
                    x = (nj - a1 * q) * p2
                    for nk in cfg.points.points:
                        for a2 in range(p2):
                            if abs(x - (nk - a2 * q) * p1) * P <= H * p1 * p2:
                                yield a1, a2, p1, p2, nj, nk


@dataclass
class M2Check:
    l: int
    P: int
    S: ResidueSet
    counts: MCount
    N: int
    passed: bool
    m1_constant: float  # M1 / (P^2 J)
    window_violations: list[str] = field(default_factory=list)
    tuples: list[tuple] | None = None


def check_m2_vs_N(cfg: ReductionConfig) -> M2Check:
    """Compare M2 with N(l, S, 12P) where S is the embedded point set."""
    S = embed_points(cfg.points, cfg.l, cfg.q)
    counts = count_M(cfg)
    N = count_N_fast(cfg.l, S, 12 * cfg.P).N if S.size else 0
    ok = counts.M2 <= N
    m1c = counts.M1 / (cfg.P**2 * cfg.J) if cfg.J else 0.0
    chk = M2Check(cfg.l, cfg.P, S, counts, N, ok, m1c, cfg.window_violations())
    if not ok:
        chk.tuples = list(enumerate_M2_tuples(cfg))
    return chk


def hb1_rhs(q: int, H: int, r: int, M: int, params: BoundParams | None = None) -> float:
    """C q^(1/4 + 3/(4r) + eps) H^(r-2) M^(1/2)."""
    p = params or BoundParams()
    return p.C * q ** (0.25 + 3 / (4 * r) + p.epsilon) * float(H) ** (r - 2) * math.sqrt(M)


def prop_hb_rhs(q: int, H: int, r: int, P: int, J: int, N: int, params: BoundParams | None = None) -> float:
    """C q^(1/4 + 3/(4r) + eps) H^(r-2) (P J^(1/2) + N^(1/2))."""
    p = params or BoundParams()
    return (p.C * q ** (0.25 + 3 / (4 * r) + p.epsilon) * float(H) ** (r - 2)
            * (P * math.sqrt(J) + math.sqrt(N)))
