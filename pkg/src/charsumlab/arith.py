"""Exact integer and modular arithmetic shared by the rest of the package."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NoPrimeInInterval, ValidationError

__all__ = [
    "Factorization",
    "RootOfUnity",
    "factorize",
    "is_prime",
    "is_cube_free",
    "jacobi",
    "primitive_root",
    "e_mod",
    "prime_in_interval",
    "primes_in_range",
    "euler_phi",
]

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# Deterministic Miller-Rabin with the first 13 primes as bases is exact below 3.3e24.
_MR_BASES = _SMALL_PRIMES
_TRIAL_LIMIT = 10**4


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """Return a nontrivial factor of the composite ``n`` (Brent's variant)."""
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1 or not is_prime(p):
                raise ValidationError(f"bad factor list {self.factors!r}")
            prod *= p**e
            last = p
        if prod != self.value:
            raise ValidationError(f"factors do not multiply to {self.value}")

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def prime_powers(self) -> list[int]:
        return [p**e for p, e in self.factors]


def factorize(q: int) -> Factorization:
    """Factor ``q`` by wheel trial division up to 10**4, then Pollard rho."""
    if q < 1:
        raise ValidationError("factorize needs q >= 1")
    n = q
    found: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    # wheel mod 30
    steps = (4, 2, 4, 2, 4, 6, 2, 6)
    p, i = 7, 0
    while p * p <= n and p <= _TRIAL_LIMIT:
        if n % p == 0:
            while n % p == 0:
                found[p] = found.get(p, 0) + 1
                n //= p
            if n > _TRIAL_LIMIT and is_prime(n):
                break
        p += steps[i]
        i = (i + 1) % 8
    if n > 1:
        stack = [n]
        while stack:
            m = stack.pop()
            if m == 1:
                continue
            if is_prime(m):
                found[m] = found.get(m, 0) + 1
                continue
            d = _pollard_rho(m)
            stack.extend((d, m // d))
    return Factorization(q, tuple(sorted(found.items())))


def euler_phi(q: int) -> int:
    out = q
    for p, _ in factorize(q).factors:
        out = out // p * (p - 1)
    return out


def is_cube_free(q: int) -> bool:
    return all(e < 3 for _, e in factorize(q).factors)


def jacobi(n: int, q: int) -> int:
    """Jacobi symbol (n/q) for odd positive q."""
    if q < 1 or q % 2 == 0:
        raise ValidationError(f"jacobi needs odd positive modulus, got {q}")
    n %= q
    result = 1
    while n:
        while n % 2 == 0:
            n //= 2
            if q % 8 in (3, 5):
                result = -result
        n, q = q, n
        if n % 4 == 3 and q % 4 == 3:
            result = -result
        n %= q
    return result if q == 1 else 0


def primitive_root(p: int, a: int = 1) -> int:
    """Smallest generator of the unit group modulo ``p**a`` (``p`` odd prime)."""
    if p == 2:
        raise ValidationError("2-power moduli have no cyclic unit group in general; use generators {-1, 5}")
    if a < 1 or not is_prime(p):
        raise ValidationError(f"primitive_root needs an odd prime and a >= 1, got p={p}, a={a}")
    order = p - 1
    qs = factorize(order).primes
    pp = p * p
    for g in range(2, p**a):
        if g % p == 0:
            continue
        gp = g % p
        if any(pow(gp, order // f, p) == 1 for f in qs):
            continue
        # a root mod p generates mod p^a (a >= 2) iff g^(p-1) != 1 mod p^2
        if a >= 2 and pow(g, p - 1, pp) == 1:
            continue
        return g
    raise AssertionError("unreachable: odd prime powers have primitive roots")


@dataclass(frozen=True, eq=False)
class RootOfUnity:
    """The complex number exp(2*pi*i*numerator/denominator)."""

    numerator: int
    denominator: int
    value: complex = field(init=False, repr=False)

    def __post_init__(self):
        if self.denominator < 1:
            raise ValidationError("denominator must be positive")
        object.__setattr__(self, "numerator", self.numerator % self.denominator)
        object.__setattr__(self, "value", _root_value(self.exponent))

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __mul__(self, other):
        if isinstance(other, RootOfUnity):
            d = math.lcm(self.denominator, other.denominator)
            num = self.numerator * (d // self.denominator) + other.numerator * (d // other.denominator)
            return RootOfUnity(num, d)
        return self.value * other

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, RootOfUnity):
            return self.exponent == other.exponent
        if isinstance(other, (int, float, complex)):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.exponent)

    def __complex__(self):
        return self.value

    def conjugate(self) -> RootOfUnity:
        return RootOfUnity(-self.numerator, self.denominator)


def _root_value(x: Fraction) -> complex:
    # exact at multiples of 1/4 so that 1, i, -1, -i carry no rounding
    # and so that the float angle is at most pi/4 (keeps the error under 2^-50)
    j = round(x * 4)
    u = x - Fraction(j, 4)
    quarter = (1 + 0j, 1j, -1 + 0j, -1j)[j % 4]
    if not u:
        return quarter
    theta = 2 * math.pi * float(u)
    return quarter * complex(math.cos(theta), math.sin(theta))


def e_mod(x: int, l: int) -> RootOfUnity:
    """e_l(x) = exp(2*pi*i*x/l)."""
    if l < 1:
        raise ValidationError("modulus must be positive")
    return RootOfUnity(x % l, l)


def prime_in_interval(lo, hi) -> int:
    """Smallest prime p with lo < p <= hi (lo, hi may be int, Fraction or float)."""
    start = math.floor(lo) + 1
    stop = math.floor(hi)
    for p in range(max(start, 2), stop + 1):
        if is_prime(p):
            return p
    raise NoPrimeInInterval(f"no prime in ({lo}, {hi}]")


def primes_in_range(lo: int, hi: int) -> list[int]:
    """Primes p with lo < p <= hi."""
    return [p for p in range(max(lo + 1, 2), hi + 1) if is_prime(p)]
