"""Dirichlet character sums over intervals and unions of intervals.

Exact evaluation of characters and interval sums, exact counting of
solutions to a*s - b*t = c (mod l), the smoothed Fourier bound on that
count, the reduction quantities that feed it, and campaigns that check
every inequality numerically.
"""

from .arith import e_mod, factorize, is_cube_free, is_prime, jacobi, prime_in_interval, primitive_root
from .charsum import (BoundParams, SpacedPoints, UnionOfIntervals, interval_sum, make_spaced_points,
                      max_prefix, mean_value_lhs, reference_bound, union_sum)
from .congruence import (ResidueSet, count_N_bruteforce, count_N_fast, extremal_set, prop_rhs,
                         representation_count, s_hat, smoothed_T, verify_proof_chain)
from .dirichlet import (Character, build_character, chi_eval, conductor, enumerate_characters,
                        is_primitive, quadratic_character)
from .kernels import BACKEND
from .smoothing import SmoothCutoff, phi, phi_hat, poisson_residue_sum

__version__ = "0.1.0"
