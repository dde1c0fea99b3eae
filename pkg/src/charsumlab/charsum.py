"""Interval character sums, mean-value left sides and the closed-form bounds
they are compared against."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .dirichlet import EXACT_ORDER_CAP, Character, ExactSum
from .errors import InfeasibleSpacing, SpacingViolation, UnknownKind, ValidationError

__all__ = [
    "SpacedPoints",
    "UnionOfIntervals",
    "BoundParams",
    "BOUND_KINDS",
    "interval_sum",
    "interval_sum_exact",
    "max_prefix",
    "mean_value_lhs",
    "reference_bound",
    "union_sum",
    "make_spaced_points",
]


@dataclass(frozen=True)
class SpacedPoints:
    """Starting points 0 <= N_1 < ... < N_J < q with N_{j+1} - N_j >= H."""

    q: int
    H: int
    points: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(int(p) for p in self.points))
        if self.q < 1 or self.H < 1:
            raise SpacingViolation("q and H must be positive")
        pts = self.points
        if pts and (pts[0] < 0 or pts[-1] >= self.q):
            raise SpacingViolation(f"points must lie in [0, {self.q})")
        for a, b in zip(pts, pts[1:]):
            if b - a < self.H:
                raise SpacingViolation(f"spacing {b - a} < H={self.H} between {a} and {b}")

    @property
    def J(self) -> int:
        return len(self.points)

    def reversed_order(self) -> tuple[int, ...]:
        return self.points[::-1]


@dataclass(frozen=True)
class UnionOfIntervals:
    """A = (N_1, N_1+L_1] u ... u (N_s, N_s+L_s], disjoint, inside [1, q]."""

    q: int
    intervals: tuple[tuple[int, int], ...]

    def __post_init__(self):
        ivs = tuple(sorted((int(n), int(ln)) for n, ln in self.intervals))
        object.__setattr__(self, "intervals", ivs)
        end = 0
        for n, ln in ivs:
            if ln < 1:
                raise ValidationError(f"interval length must be positive, got {ln}")
            if n < end:
                raise ValidationError(f"interval ({n}, {n + ln}] overlaps its predecessor")
            end = n + ln
        if ivs and (ivs[0][0] < 0 or end > self.q):
            raise ValidationError(f"intervals must lie inside [1, {self.q}]")

    @property
    def s(self) -> int:
        return len(self.intervals)

    @property
    def size(self) -> int:
        return sum(ln for _, ln in self.intervals)

    @property
    def lengths(self) -> list[int]:
        return [ln for _, ln in self.intervals]


@dataclass(frozen=True)
class BoundParams:
    """epsilon and the implied constant C used by every closed-form bound."""

    epsilon: float = 0.1
    C: float = 1.0

    def __post_init__(self):
        if self.epsilon < 0 or self.C <= 0:
            raise ValidationError("need epsilon >= 0 and C > 0")


def interval_sum(chi: Character, N: int, h: int):
    """sum_{N < n <= N+h} chi(n).

    Returned as an int for real characters, otherwise as a complex number
    (built from exact per-root counts when the order is at most 16).
    """
    if h < 0 or h > chi.q:
        raise ValidationError(f"need 0 <= h <= q, got h={h}")
    if h == 0:
        return 0
    if chi.is_real:
        return int(chi.real_values(N + 1, h).sum())
    if chi.order <= EXACT_ORDER_CAP:
        return interval_sum_exact(chi, N, h).to_complex()
    return complex(np.sum(chi.values(N + 1, h)))


def interval_sum_exact(chi: Character, N: int, h: int) -> ExactSum:
    """The same sum kept as integer counts per root of unity."""
    return ExactSum.from_indices(chi.indices(N + 1, h), chi.order)


def max_prefix(chi: Character, N: int, H: int):
    """max_{1 <= h <= H} |S(N; h)| in one left-to-right prefix pass."""
    if H < 1:
        raise ValidationError("H must be positive")
    if chi.is_real:
        return kernels.max_abs_prefix_int(chi.real_values(N + 1, H))
    return kernels.max_abs_prefix_complex(chi.values(N + 1, H))


def mean_value_lhs(chi: Character, pts: SpacedPoints, r: int, power_factor: int = 2):
    """sum_j max_{h <= H} |S(N_j; h)|^(power_factor * r); exact int for real chi."""
    if power_factor not in (1, 2, 3):
        raise ValidationError("power_factor must be 1, 2 or 3")
    e = power_factor * r
    return sum(max_prefix(chi, n, pts.H) ** e for n in pts.points)


BOUND_KINDS = ("thm2r", "hb3r", "eq4", "burgess", "mean_r1", "mean_general", "trivial")


def reference_bound(kind: str, q: int, H: int, r: int, J: int | None = None,
                    params: BoundParams | None = None):
    """C times one of the closed-form right-hand sides.

    thm2r         q^(1/2 + 1/(2r) + eps) H^(2r-2)
    hb3r          q^(3/4 + 3/(4r) + eps) H^(3r-3)
    eq4           q^(1/4 + 1/(4r) + eps) H^(r-1) J^(1/2) + q^(-1/4 + eps) H^r J
    burgess       H^(1 - 1/r) q^((r+1)/(4r^2) + eps)
    mean_r1       q (log q)^2
    mean_general  q^eps (q H^(r-1) + q^(1/2) H^(2r-1))
    trivial       J H^(2r), an exact int when C is integral
    """
    p = params or BoundParams()
    eps, C = p.epsilon, p.C
    if kind not in BOUND_KINDS:
        raise UnknownKind(f"unknown bound kind {kind!r}; expected one of {BOUND_KINDS}")
    if q < 1 or H < 1 or r < 1:
        raise ValidationError("need q, H, r >= 1")
    if kind in ("eq4", "trivial") and J is None:
        raise ValidationError(f"{kind} bound needs J")
    if kind == "thm2r":
        v = q ** (0.5 + 1 / (2 * r) + eps) * H ** (2 * r - 2)
    elif kind == "hb3r":
        v = q ** (0.75 + 3 / (4 * r) + eps) * H ** (3 * r - 3)
    elif kind == "eq4":
        v = (q ** (0.25 + 1 / (4 * r) + eps) * H ** (r - 1) * math.sqrt(J)
             + q ** (-0.25 + eps) * H**r * J)
    elif kind == "burgess":
        v = H ** (1 - 1 / r) * q ** ((r + 1) / (4 * r * r) + eps)
    elif kind == "mean_r1":
        v = q * math.log(q) ** 2
    elif kind == "mean_general":
        v = q**eps * (q * H ** (r - 1) + math.sqrt(q) * H ** (2 * r - 1))
    else:
        v = J * H ** (2 * r)
        if float(C).is_integer():
            return int(C) * v
    return C * v


def union_sum(chi: Character, A: UnionOfIntervals):
    """sum_{n in A} chi(n), summed interval by interval."""
    return sum((interval_sum(chi, n, ln) for n, ln in A.intervals), 0)


def make_spaced_points(q: int, H: int, J: int, scheme: str = "uniform", seed: int = 0) -> SpacedPoints:
    """J starting points in [0, q) with gaps >= H.

    ``uniform`` puts N_j = (j-1) * floor(q/J). ``random`` draws J sorted values
    from [0, q - (J-1)H) with replacement and shifts the j-th by (j-1)H, so the
    spacing holds by construction for any seed.
    """
    if J < 0 or H < 1:
        raise ValidationError("need J >= 0 and H >= 1")
    if J * H > q:
        raise InfeasibleSpacing(f"J*H = {J * H} exceeds q = {q}")
    if J == 0:
        return SpacedPoints(q, H, ())
    if scheme == "uniform":
        step = q // J
        return SpacedPoints(q, H, tuple(j * step for j in range(J)))
    if scheme == "random":
        rng = np.random.default_rng(seed)
        room = q - (J - 1) * H
        base = np.sort(rng.integers(0, room, size=J))
        return SpacedPoints(q, H, tuple(int(b) + j * H for j, b in enumerate(base)))
    raise UnknownKind(f"unknown spacing scheme {scheme!r}")
