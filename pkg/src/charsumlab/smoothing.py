"""The Fejer-kernel cutoff used to smooth the congruence count.

phi(x) = (1/10) * (sin(pi x / 10) / (pi x / 10))^2 has Fourier transform
(with the e(xy) = exp(2 pi i x y) convention) equal to the triangle
max(0, 1 - 10|y|): non-negative, supported in [-1/10, 1/10], at most 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["SmoothCutoff", "DEFAULT_CUTOFF", "phi", "phi_hat", "poisson_residue_sum"]

TRUNCATION = 1000  # Poisson check sums c over |c| <= TRUNCATION * n


@dataclass(frozen=True)
class SmoothCutoff:
    t: float = math.pi / 10
    normalization: float = 0.1
    support: float = 0.1

    def phi(self, x):
        # np.sinc(u) = sin(pi u)/(pi u), removable singularity handled
        u = np.asarray(x, dtype=np.float64) * (self.t / math.pi)
        out = self.normalization * np.sinc(u) ** 2
        return float(out) if np.ndim(out) == 0 else out

    def phi_hat(self, y):
        y = np.asarray(y, dtype=np.float64)
        out = np.maximum(0.0, 1.0 - np.abs(y) / self.support)
        return float(out) if np.ndim(out) == 0 else out

    @property
    def phi_min(self) -> float:
        """min of phi over [-1, 1]; phi is even and decreasing on [0, 10]."""
        return self.phi(1.0)


DEFAULT_CUTOFF = SmoothCutoff()


def phi(x):
    return DEFAULT_CUTOFF.phi(x)


def phi_hat(y):
    return DEFAULT_CUTOFF.phi_hat(y)


def poisson_residue_sum(n: int, l: int, r: int, cutoff: SmoothCutoff = DEFAULT_CUTOFF):
    """Both sides of sum_c phi(c/n) e_l(-c r) = n sum_k phi_hat(n (k - r/l)).

    The left side is truncated at |c| <= 1000 n. The right side is a finite
    sum: only k with |k - r/l| <= support/n contribute.
    """
    T = TRUNCATION * n
    c = np.arange(-T, T + 1, dtype=np.int64)
    # reduce c*r mod l before scaling so the phase stays accurate for big c
    phase = -2 * np.pi * ((c * (r % l)) % l) / l
    lhs = complex(np.sum(cutoff.phi(c / n) * np.exp(1j * phase)))
    theta = (r % l) / l
    width = cutoff.support / n
    rhs = 0.0
    for k in range(math.floor(theta - width), math.ceil(theta + width) + 1):
        rhs += cutoff.phi_hat(n * (k - theta))
    return lhs, complex(n * rhs)
