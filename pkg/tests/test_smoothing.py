import math

import numpy as np
import pytest

from charsumlab.smoothing import DEFAULT_CUTOFF, SmoothCutoff, phi, phi_hat, poisson_residue_sum

GRID = [(n, l, r) for n in (1, 5, 20) for l in (101, 1009) for r in (0, 1, l - 1)]


def test_phi_examples():
    assert phi(0) == pytest.approx(0.1)
    assert phi(10) == pytest.approx(0.0, abs=1e-18)
    assert phi(1) == pytest.approx(0.09675, abs=5e-6)
    assert phi(1) == pytest.approx((math.sin(math.pi / 10) / (math.pi / 10)) ** 2 / 10, rel=1e-15)


def test_phi_hat_examples():
    assert phi_hat(0) == 1
    assert phi_hat(0.15) == 0
    assert phi_hat(0.05) == pytest.approx(0.5)


def test_phi_nonnegative_and_bounded_below():
    rng = np.random.default_rng(0)
    assert np.all(phi(rng.uniform(-100, 100, 10_000)) >= 0)
    assert np.all(phi(np.linspace(-1, 1, 1000)) >= 0.0967)
    assert DEFAULT_CUTOFF.phi_min == pytest.approx(phi(1))


def test_phi_hat_support():
    y = np.linspace(-3, 3, 60_001)
    v = phi_hat(y)
    assert np.all(np.abs(v) <= 1)
    assert np.all(v[np.abs(y) > 0.1] == 0)


def test_phi_hat_is_transform_of_phi():
    # Riemann sum of phi(x) e(xy) over a wide window
    x = np.linspace(-4000, 4000, 1_600_001)
    dx = x[1] - x[0]
    for y in (0.0, 0.03, 0.07, 0.12):
        val = np.sum(phi(x) * np.cos(2 * np.pi * x * y)) * dx
        assert val == pytest.approx(phi_hat(y), abs=2e-3)


@pytest.mark.parametrize("n,l,r", GRID)
def test_poisson_grid(n, l, r):
    lhs, rhs = poisson_residue_sum(n, l, r)
    assert abs(lhs - rhs) <= 0.01 * n


def test_poisson_examples():
    for n in (1, 3, 9):
        _, rhs = poisson_residue_sum(n, 10 * n + 1, 0)
        assert rhs == n
    lhs, rhs = poisson_residue_sum(1, 7, 3)
    assert abs(lhs - rhs) <= 0.01
    lhs, _ = poisson_residue_sum(5, 101, 0)
    assert abs(lhs - 5) <= 0.05


def test_other_cutoff_scale():
    c = SmoothCutoff(t=math.pi / 20, normalization=0.05, support=0.05)
    lhs, rhs = poisson_residue_sum(3, 101, 2, c)
    assert abs(lhs - rhs) <= 0.03
