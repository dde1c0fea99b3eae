"""Counting solutions of a*s - b*t = c (mod l) and checking the Fourier
argument that bounds that count.

N(l, S, n) counts 5-tuples (a, b, c, s, t) with 1 <= a, b <= n, c an integer
with |c| <= n, s, t in S and a*s - b*t = c (mod l). Two exact routes exist:

* ``count_N_bruteforce`` enumerates a, b and c directly (the oracle);
* ``count_N_fast`` builds the histogram f[x] = #{(a, s): a*s = x} and sums
  f[x] * f[y] * mult[x - y], where mult[d] is the number of admissible c in
  the residue class d. When 2n+1 <= l the inner sum is a sliding window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .arith import is_prime
from .charsum import BoundParams
from .errors import OracleTooLarge, ScaleExceeded, ValidationError
from .smoothing import DEFAULT_CUTOFF, SmoothCutoff

__all__ = [
    "ResidueSet",
    "CongruenceCount",
    "ChainStep",
    "ChainReport",
    "count_N_bruteforce",
    "count_N_fast",
    "prop_rhs",
    "s_hat",
    "s_hat_all",
    "representation_count",
    "representation_counts",
    "smoothed_T",
    "verify_proof_chain",
    "extremal_set",
    "quadratic_residue_set",
    "random_residue_set",
]

ORACLE_CAP = 10**9  # n^2 |S|^2
WORK_CAP = 10**9  # n |S| + l
DENSE_CAP = 10**8
SPARSE_CAP = 5 * 10**7  # products materialised at once in the sparse path
SMOOTH_CAP = 10**9  # (n |S|) * l for the smoothed count
INT64_SAFE = 2**62
REL_TOL = 1e-9


@dataclass(frozen=True)
class ResidueSet:
    l: int
    elements: tuple[int, ...]

    def __post_init__(self):
        els = tuple(int(x) for x in self.elements)
        object.__setattr__(self, "elements", els)
        if not is_prime(self.l):
            raise ValidationError(f"l = {self.l} is not prime")
        for a, b in zip(els, els[1:]):
            if b <= a:
                raise ValidationError("residues must be strictly increasing")
        if els and (els[0] < 0 or els[-1] >= self.l):
            raise ValidationError(f"residues must lie in [0, {self.l})")

    @classmethod
    def of(cls, l: int, values) -> ResidueSet:
        """Reduce ``values`` mod l and sort; duplicates are an error."""
        red = [int(v) % l for v in values]
        if len(set(red)) != len(red):
            raise ValidationError("duplicate residues in set")
        return cls(l, tuple(sorted(red)))

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def array(self) -> np.ndarray:
        return np.asarray(self.elements, dtype=np.int64)

    def indicator(self) -> np.ndarray:
        ind = np.zeros(self.l, dtype=np.float64)
        ind[self.array()] = 1.0
        return ind

    def negated(self) -> ResidueSet:
        return ResidueSet.of(self.l, [-x for x in self.elements])


@dataclass(frozen=True)
class CongruenceCount:
    l: int
    n: int
    set_size: int
    N: int
    method: str

    def __post_init__(self):
        if self.N > (2 * self.n + 1) * self.n**2 * self.set_size**2:
            raise AssertionError("count exceeds the trivial bound")
        if self.n < self.l and self.N < self.n * self.set_size:
            raise AssertionError("count is below the diagonal solutions")


def _check_inputs(l: int, S: ResidueSet, n: int):
    if n < 1:
        raise ValidationError("n must be positive")
    if S.l != l:
        raise ValidationError(f"set lives in F_{S.l}, not F_{l}")


def count_N_bruteforce(l: int, S: ResidueSet, n: int) -> CongruenceCount:
    _check_inputs(l, S, n)
    k = S.size
    if n * n * k * k > ORACLE_CAP:
        raise OracleTooLarge(f"n^2 |S|^2 = {n * n * k * k} exceeds {ORACLE_CAP}")
    total = 0
    if k:
        s = S.array()
        b = np.arange(1, n + 1, dtype=np.int64)
        cs = np.arange(-n, n + 1, dtype=np.int64) % l
        for a in range(1, n + 1):
            d = (a * s[None, :, None] - b[:, None, None] * s[None, None, :]) % l
            hist = np.bincount(d.ravel(), minlength=l)
            # each integer c in [-n, n] counted on its own, repeats included
            total += int(hist[cs].sum())
    return CongruenceCount(l, n, k, total, "bruteforce")


def _multiplicity(l: int, n: int) -> np.ndarray:
    """mult[d] = #{c in Z : |c| <= n, c = d mod l}."""
    return np.bincount(np.arange(-n, n + 1, dtype=np.int64) % l, minlength=l).astype(np.int64)


def count_N_fast(l: int, S: ResidueSet, n: int) -> CongruenceCount:
    _check_inputs(l, S, n)
    k = S.size
    if k == 0:
        return CongruenceCount(l, n, 0, 0, "fast")
    dense = l <= DENSE_CAP
    work = n * k + (l if dense else 0)
    if work > WORK_CAP or (not dense and n * k > SPARSE_CAP):
        raise ScaleExceeded(f"work {work} for l={l}, n={n}, |S|={k} exceeds the cap")
    if not dense:
        return CongruenceCount(l, n, k, _count_sparse(l, S.array(), n), "fast")
    f = kernels.product_histogram(l, S.array(), n)
    safe = (2 * n + 1) * n * n * k * k < INT64_SAFE
    if 2 * n + 1 <= l:
        w = kernels.window_sums(f, n)
        if safe:
            total = int(np.dot(f, w))
        else:
            nz = np.nonzero(f)[0]
            total = sum(int(a) * int(b) for a, b in zip(f[nz], w[nz]))
    else:
        mult = _multiplicity(l, n)
        if safe:
            total = kernels.weighted_correlation(f, mult)
        else:
            total = kernels.np_weighted_correlation(f, mult)
    return CongruenceCount(l, n, k, int(total), "fast")


def _count_sparse(l: int, s: np.ndarray, n: int) -> int:
    """Window count with f kept as sorted (residue, multiplicity) pairs."""
    prods = ((np.arange(1, n + 1, dtype=np.int64)[:, None] * s[None, :]) % l).ravel()
    keys, cnt = np.unique(prods, return_counts=True)
    # three copies shifted by -l, 0, +l make the cyclic window a plain range
    ext_keys = np.concatenate((keys - l, keys, keys + l))
    pref = np.concatenate(([0], np.cumsum(np.tile(cnt, 3))))
    lo = np.searchsorted(ext_keys, keys - n, side="left")
    hi = np.searchsorted(ext_keys, keys + n, side="right")
    w = pref[hi] - pref[lo]
    return sum(int(a) * int(b) for a, b in zip(cnt, w))


def prop_rhs(l: int, S, n: int, params: BoundParams | None = None) -> float:
    """C * (n^3 |S|^2 / l + l^eps n^2 |S|)."""
    p = params or BoundParams()
    k = S if isinstance(S, int) else len(S)
    return p.C * (n**3 * k * k / l + l**p.epsilon * n * n * k)


def s_hat(S: ResidueSet, r: int) -> complex:
    """sum_{x in S} e_l(x r), each phase reduced mod l first."""
    if not S.size:
        return 0j
    ph = (S.array() * (r % S.l)) % S.l
    return complex(np.sum(np.exp(2j * np.pi * ph / S.l)))


def s_hat_all(S: ResidueSet) -> np.ndarray:
    """[S^(0), ..., S^(l-1)] through one FFT."""
    return S.l * np.fft.ifft(S.indicator())


def representation_count(l: int, n: int, s: int) -> int:
    """#{(a, r): 1 <= |a| <= n, 0 < |r| <= l/(5n), a r = s (mod l)}."""
    s %= l
    if s == 0:
        raise ValidationError("s must be a nonzero residue")
    if n >= l:
        raise ValidationError("need n < l")
    count = 0
    for a in range(-n, n + 1):
        if a == 0:
            continue
        r = s * pow(a, -1, l) % l
        if r > l // 2:
            r -= l
        if r != 0 and 5 * n * abs(r) <= l:
            count += 1
    return count


def representation_counts(l: int, n: int) -> np.ndarray:
    """rep[s] for every residue s, by enumerating the (a, r) pairs."""
    R = l // (5 * n)
    rep = np.zeros(l, dtype=np.int64)
    if R == 0:
        return rep
    a = np.concatenate((np.arange(-n, 0), np.arange(1, n + 1))).astype(np.int64)
    r = np.concatenate((np.arange(-R, 0), np.arange(1, R + 1))).astype(np.int64)
    rep += np.bincount(((a[:, None] * r[None, :]) % l).ravel(), minlength=l)
    return rep


def smoothed_T(l: int, S: ResidueSet, n: int, cutoff: SmoothCutoff = DEFAULT_CUTOFF) -> float:
    """sum over a, b, s, t and integers c = a s - b t (mod l), |c| <= 1000 n, of phi(c/n)."""
    _check_inputs(l, S, n)
    if not S.size:
        return 0.0
    if n * S.size * l > SMOOTH_CAP:
        raise ScaleExceeded("smoothed count is limited to n |S| l <= 1e9")
    f = kernels.product_histogram(l, S.array(), n)
    D = kernels.autocorrelation(f)
    T = 1000 * n
    c = np.arange(-T, T + 1, dtype=np.int64)
    w = np.bincount(c % l, weights=cutoff.phi(c / n), minlength=l)
    return float(np.dot(D.astype(np.float64), w))


@dataclass
class ChainStep:
    name: str
    lhs: float
    rhs: float
    relation: str = "<="  # "<=" or "=="
    note: str = ""

    @property
    def passed(self) -> bool:
        tol = REL_TOL
        if self.relation == "==":
            return abs(self.lhs - self.rhs) <= tol * max(abs(self.lhs), abs(self.rhs))
        return self.lhs <= self.rhs * (1 + tol)


@dataclass
class ChainReport:
    l: int
    n: int
    set_size: int
    N: int
    steps: list[ChainStep] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(s.passed for s in self.steps)

    def step(self, name: str) -> ChainStep:
        for s in self.steps:
            if s.name == name:
                return s
        raise KeyError(name)

    def failed(self) -> list[ChainStep]:
        return [s for s in self.steps if not s.passed]


def verify_proof_chain(l: int, S: ResidueSet, n: int, cutoff: SmoothCutoff = DEFAULT_CUTOFF,
                       N: int | None = None) -> ChainReport:
    """Evaluate both sides of every inequality in the Fourier bound for N(l, S, n).

    For l > n the steps are, in order: the cutoff lower bound, the Poisson
    expansion, the |phi_hat| <= 1 bound, AM-GM, the representation-count
    regrouping and Parseval, and the resulting explicit bound. For any l the
    per-tuple count of admissible c gives a direct bound; when l <= n that
    bound is also compared with 8 n^3 |S|^2 / l.
    """
    _check_inputs(l, S, n)
    k = S.size
    if N is None:
        N = count_N_fast(l, S, n).N
    rep = ChainReport(l, n, k, N)
    steps = rep.steps
    main = n**3 * k * k / l

    steps.append(ChainStep("v_choices_for_c", N, n * n * k * k * -(-(2 * n + 1) // l),
                           note="each (a, b, s, t) admits at most ceil((2n+1)/l) values of c"))
    if l <= n:
        steps.append(ChainStep("v_degenerate_const8", N, 8 * main,
                               note="l <= n: N <= 8 n^3 |S|^2 / l"))
        return rep

    phi_min = cutoff.phi_min
    T = smoothed_T(l, S, n, cutoff)
    steps.append(ChainStep("i_cutoff_lower", phi_min * N, T,
                           note=f"phi >= {phi_min:.6g} on [-1, 1]"))

    shat = s_hat_all(S)
    R = l // (5 * n)
    a = np.arange(1, n + 1, dtype=np.int64)
    rs = np.arange(-R, R + 1, dtype=np.int64)
    plus = shat[(a[None, :] * rs[:, None]) % l]  # S^(a r), rows indexed by r
    minus = shat[(-a[None, :] * rs[:, None]) % l]  # S^(-b r)
    U = plus.sum(axis=1)
    V = minus.sum(axis=1)
    ph = cutoff.phi_hat(-n * rs / l)
    fourier = n / l * float(np.real(np.sum(U * V * ph)))
    steps.append(ChainStep("ii_poisson", T, fourier,
                           note="truncated smoothed count <= its full Fourier expansion"))

    nz = rs != 0
    A = np.abs(plus).sum(axis=1)
    B = np.abs(minus).sum(axis=1)
    G = main + n / l * float(np.sum((A * B)[nz]))
    steps.append(ChainStep("ii_phi_hat_bound", fourier, G, note="|phi_hat| <= 1, r = 0 term isolated"))

    sq_plus = (np.abs(plus) ** 2).sum(axis=1)
    sq_minus = (np.abs(minus) ** 2).sum(axis=1)
    am_lhs = 2 * float(np.sum((A * B)[nz]))
    am_rhs = float(np.sum((n * (sq_plus + sq_minus))[nz]))
    steps.append(ChainStep("iii_am_gm", am_lhs, am_rhs,
                           note="2|S^(ar) S^(-br)| <= |S^(ar)|^2 + |S^(-br)|^2 summed over a, b, r"))
    Q = float(np.sum((sq_plus + sq_minus)[nz]))  # sum over 0<|r|<=R, 1<=|a|<=n
    K = main + n * n / l * Q
    steps.append(ChainStep("iii_am_gm_total", G, K))

    reps = representation_counts(l, n)
    absq = np.abs(shat) ** 2
    Q_rep = float(np.dot(reps, absq))
    steps.append(ChainStep("iv_representation", Q, Q_rep, relation="==",
                           note="regroup a r = s by representation counts"))
    parseval = float(np.sum(absq))
    steps.append(ChainStep("iv_parseval_identity", parseval, float(l * k), relation="==") if k
                 else ChainStep("iv_parseval_identity", parseval, 0.0))
    max_rep = int(reps.max()) if len(reps) else 0
    steps.append(ChainStep("iv_parseval_bound", Q_rep, float(max_rep * l * k),
                           note=f"max representation count {max_rep}"))
    steps.append(ChainStep("prop_explicit", phi_min * N, main + max_rep * n * n * k,
                           note="phi_min N <= n^3|S|^2/l + max_rep n^2 |S|"))
    return rep


def extremal_set(l: int, m: int) -> ResidueSet:
    """{1, 2, ..., m}, the set on which the n^2 |S| term is attained."""
    if not 1 <= m < l:
        raise ValidationError(f"need 1 <= m < l, got m={m}")
    return ResidueSet(l, tuple(range(1, m + 1)))


def quadratic_residue_set(l: int, m: int | None = None) -> ResidueSet:
    """The m smallest nonzero squares mod l (all of them when m is None)."""
    qr = sorted({x * x % l for x in range(1, l)})
    return ResidueSet(l, tuple(qr if m is None else qr[:m]))


def random_residue_set(l: int, m: int, rng: np.random.Generator) -> ResidueSet:
    if m > l:
        raise ValidationError(f"cannot draw {m} residues from F_{l}")
    return ResidueSet(l, tuple(sorted(int(x) for x in rng.choice(l, size=m, replace=False))))
