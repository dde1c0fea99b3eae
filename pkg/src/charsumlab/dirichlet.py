"""Dirichlet characters: construction, classification and exact evaluation.

A character is stored either as a discrete-log table over Z/qZ ("table"
mode, any order, q <= 10**7) or as the Jacobi symbol (n/q) ("quadratic"
mode, any odd q, nothing precomputed). Values are reported as exponent
indices k meaning exp(2*pi*i*k/m), with m the character's order and -1
marking n not coprime to q. Keeping indices instead of complex numbers
lets sums be accumulated exactly as integer counts per root of unity.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .arith import RootOfUnity, factorize, primitive_root
from .errors import ModulusTooLarge, ValidationError

__all__ = [
    "Character",
    "ExactSum",
    "build_character",
    "quadratic_character",
    "principal_character",
    "conductor",
    "is_primitive",
    "chi_eval",
    "enumerate_characters",
    "unit_group_generators",
]

TABLE_CAP = 10**7
ENUMERATE_CAP = 10**4
EXACT_ORDER_CAP = 16


@dataclass(frozen=True)
class _Generator:
    p: int  # the prime of the CRT component
    a: int
    g: int  # generator residue modulo p**a
    order: int


def unit_group_generators(q: int) -> list[_Generator]:
    """Generators of (Z/qZ)^* component by component, in increasing prime order.

    The 2^a component uses {-1} for a = 2 and {-1, 5} for a >= 3.
    """
    gens = []
    for p, a in factorize(q).factors:
        pa = p**a
        if p == 2:
            if a == 2:
                gens.append(_Generator(2, a, 3, 2))
            elif a >= 3:
                gens.append(_Generator(2, a, pa - 1, 2))
                gens.append(_Generator(2, a, 5, pa // 4))
        else:
            gens.append(_Generator(p, a, primitive_root(p, a), pa - pa // p))
    return gens


def _power_table(g: int, count: int, mod: int) -> np.ndarray:
    """[g^0, g^1, ..., g^(count-1)] mod ``mod`` by repeated doubling."""
    out = np.ones(1, dtype=np.int64)
    while len(out) < count:
        step = pow(g, len(out), mod)
        out = np.concatenate((out, out * step % mod))
    return out[:count]


def _component_logs(gen_list: list[_Generator], q: int, n: np.ndarray) -> list[np.ndarray]:
    """Discrete logs of every n (mod p^a) with respect to each generator; -1 off units."""
    p, a = gen_list[0].p, gen_list[0].a
    pa = p**a
    r = n % pa
    if p != 2:
        g = gen_list[0]
        table = np.full(pa, -1, dtype=np.int64)
        table[_power_table(g.g, g.order, pa)] = np.arange(g.order, dtype=np.int64)
        return [table[r]]
    odd = r % 2 == 1
    sign = np.where(odd, np.where(r % 4 == 1, 0, 1), -1)
    if a == 2:
        return [sign]
    five = gen_list[1]
    table = np.full(pa, -1, dtype=np.int64)
    table[_power_table(5, five.order, pa)] = np.arange(five.order, dtype=np.int64)
    pos = np.where(sign == 1, (pa - r) % pa, r)
    k5 = np.where(odd, table[pos], -1)
    return [sign, k5]


class Character:
    """A Dirichlet character modulo q. Build with ``build_character`` or
    ``quadratic_character``; instances are immutable."""

    __slots__ = ("q", "mode", "exponents", "generators", "order", "principal",
                 "_table", "_roots", "_coeffs")

    def __init__(self, q, mode, exponents, generators, order, table=None, coeffs=()):
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "exponents", tuple(exponents))
        object.__setattr__(self, "generators", tuple(generators))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "principal", order == 1)
        object.__setattr__(self, "_table", table)
        object.__setattr__(self, "_coeffs", tuple(coeffs))
        object.__setattr__(self, "_roots", _roots(order))

    def __setattr__(self, name, value):
        raise AttributeError("Character is immutable")

    def __repr__(self):
        if self.mode == "quadratic":
            return f"Character(q={self.q}, quadratic)"
        return f"Character(q={self.q}, exponents={list(self.exponents)}, order={self.order})"

    @property
    def is_real(self) -> bool:
        return self.order <= 2

    def index(self, n: int) -> int:
        """k with chi(n) = exp(2 pi i k / order), or -1 when gcd(n, q) > 1."""
        return int(self.indices(n, 1)[0])

    def indices(self, start: int, count: int) -> np.ndarray:
        """Exponent indices for n = start, start+1, ..., start+count-1."""
        q = self.q
        if count <= 0:
            return np.zeros(0, dtype=np.int64)
        if self.mode == "quadratic":
            if q == 1:
                return np.zeros(count, dtype=np.int64)
            j = kernels.jacobi_range(start % q, count, q).astype(np.int64)
            # 1 -> 0, -1 -> 1, 0 -> -1
            return np.where(j == 0, -1, (1 - j) // 2)
        n = (np.arange(count, dtype=np.int64) + start % q) % q
        return self._table[n].astype(np.int64)

    def values(self, start: int, count: int) -> np.ndarray:
        """chi(n) as complex128 for the same run of n as ``indices``."""
        idx = self.indices(start, count)
        out = self._roots[np.maximum(idx, 0)]
        out[idx < 0] = 0
        return out

    def real_values(self, start: int, count: int) -> np.ndarray:
        """chi(n) as int64 in {-1, 0, 1}; only for real characters."""
        if not self.is_real:
            raise ValidationError("real_values needs a character of order <= 2")
        if self.mode == "quadratic" and self.q > 1:
            return kernels.jacobi_range(start % self.q, count, self.q).astype(np.int64)
        idx = self.indices(start, count)
        return np.where(idx < 0, 0, 1 - 2 * idx)

    def __call__(self, n: int):
        return chi_eval(self, n)


@lru_cache(maxsize=None)
def _roots(m: int) -> np.ndarray:
    out = np.exp(2j * np.pi * np.arange(m) / m)
    for k in range(m):
        if (4 * k) % m == 0:
            out[k] = (1, 1j, -1, -1j)[4 * k // m]
    out.setflags(write=False)
    return out


def principal_character(q: int) -> Character:
    return build_character(q, [0] * len(unit_group_generators(q)))


def build_character(q: int, exponents) -> Character:
    """Character sending the i-th unit-group generator to exp(2 pi i e_i / ord_i)."""
    if q < 1:
        raise ValidationError("modulus must be positive")
    if q > TABLE_CAP:
        raise ModulusTooLarge(f"table mode is capped at q <= {TABLE_CAP}, got {q}")
    gens = unit_group_generators(q)
    exps = [int(e) for e in exponents]
    if len(exps) != len(gens):
        raise ValidationError(f"q={q} has {len(gens)} unit-group generators, got {len(exps)} exponents")
    exps = [e % g.order for e, g in zip(exps, gens)]
    m_full = math.lcm(*(g.order for g in gens)) if gens else 1
    coeffs = [e * (m_full // g.order) for e, g in zip(exps, gens)]
    red = math.gcd(m_full, *coeffs)
    order = m_full // red

    n = np.arange(q, dtype=np.int64)
    idx = np.zeros(q, dtype=np.int64)
    unit = np.ones(q, dtype=bool) if q > 1 else np.ones(1, dtype=bool)
    pos = 0
    for p, a in factorize(q).factors:
        comp = [g for g in gens if g.p == p]
        if not comp:  # q divisible by exactly 2^1: trivial unit group, parity only
            unit &= n % 2 == 1
            continue
        logs = _component_logs(comp, q, n)
        for lg in logs:
            unit &= lg >= 0
            idx += np.where(lg >= 0, lg, 0) * (coeffs[pos] // red)
            pos += 1
    idx %= order
    table = np.where(unit, idx, -1).astype(np.int32)
    table.setflags(write=False)
    return Character(q, "table", exps, gens, order, table=table, coeffs=coeffs)


def quadratic_character(q: int) -> Character:
    """The Jacobi-symbol character n -> (n/q) for odd q, with no table."""
    if q < 1 or q % 2 == 0:
        raise ValidationError(f"quadratic_character needs odd q, got {q}")
    square = math.isqrt(q) ** 2 == q
    return Character(q, "quadratic", (), (), 1 if square else 2)


def chi_eval(chi: Character, n: int):
    """chi(n) as a RootOfUnity, or the integer 0 when gcd(n, q) > 1."""
    k = chi.index(n)
    if k < 0:
        return 0
    return RootOfUnity(k, chi.order)


def conductor(chi: Character) -> int:
    q = chi.q
    if chi.mode == "quadratic":
        return math.prod(p for p, e in factorize(q).factors if e % 2 == 1)
    f = 1
    i = 0
    for p, a in factorize(q).factors:
        comp = [g for g in chi.generators if g.p == p]
        exps = chi.exponents[i:i + len(comp)]
        i += len(comp)
        if p != 2:
            e = exps[0]
            if e == 0:
                continue
            f *= p ** max(1, a - _valuation(e, p))
        elif a == 2:
            if exps[0]:
                f *= 4
        elif a >= 3:
            e_sign, e5 = exps
            if e5 == 0:
                f *= 4 if e_sign else 1
            else:
                f *= 2 ** (a - _valuation(e5, 2))
    return f


def _valuation(e: int, p: int) -> int:
    v = 0
    while e % p == 0:
        e //= p
        v += 1
    return v


def is_primitive(chi: Character) -> bool:
    return conductor(chi) == chi.q


def enumerate_characters(q: int) -> list[Character]:
    if q > ENUMERATE_CAP:
        raise ModulusTooLarge(f"enumeration is capped at q <= {ENUMERATE_CAP}")
    gens = unit_group_generators(q)
    return [build_character(q, exps) for exps in itertools.product(*(range(g.order) for g in gens))]


# --------------------------------------------------------------------------
# Exact accumulation


@lru_cache(maxsize=None)
def _cyclotomic(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, low degree first."""
    num = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            num = _poly_divexact(num, list(_cyclotomic(d)))
    return tuple(num)


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = num[:]
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    assert not any(num), "division was not exact"
    return out


@dataclass(frozen=True)
class ExactSum:
    """sum_k counts[k] * exp(2 pi i k / order), kept as integers."""

    order: int
    counts: tuple[int, ...]

    def is_zero(self) -> bool:
        # zero iff the count polynomial vanishes at a primitive order-th root,
        # i.e. iff the cyclotomic polynomial divides it
        rem = list(self.counts)
        phi = _cyclotomic(self.order)
        deg = len(phi) - 1
        for i in range(len(rem) - 1, deg - 1, -1):
            c = rem[i]
            if c:
                for j, pj in enumerate(phi):
                    rem[i - deg + j] -= c * pj
        return not any(rem[:deg])

    def to_complex(self) -> complex:
        return complex(np.dot(np.asarray(self.counts, dtype=np.float64), _roots(self.order)))

    def to_int(self) -> int:
        if self.order > 2:
            raise ValidationError("only real sums convert to int")
        c = list(self.counts) + [0, 0]
        return c[0] - c[1] if self.order == 2 else c[0]

    def __add__(self, other: ExactSum) -> ExactSum:
        if other.order != self.order:
            raise ValidationError("cannot add exact sums of different orders")
        return ExactSum(self.order, tuple(a + b for a, b in zip(self.counts, other.counts)))

    @classmethod
    def from_indices(cls, idx: np.ndarray, order: int) -> ExactSum:
        c = np.bincount(idx[idx >= 0], minlength=order)
        return cls(order, tuple(int(x) for x in c))
