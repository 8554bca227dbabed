"""Interior fixed point: location, residuals, limits and monotonicity."""

import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ewadyn import Params, equilibrium_limits, solve_fixed_point, step_x

# brentq-style oracle value for (a=10, b=0.4, sigma=0.25), solved on f(x)-x
# with the raw two-exponential form of the map
XBAR_ORACLE_10_04_025 = 0.40918354005341906


class TestSolveFixedPoint:
    def test_full_memory_recovers_nash(self):
        for a in (0.3, 2.0, 7.0, 480.0):
            res = solve_fixed_point(Params(a, 0.4, 0.0))
            assert res.xbar == pytest.approx(0.4, abs=1e-12)

    def test_symmetric_split_is_always_half(self):
        for sigma in (0.0, 0.25, 0.7, 1.0):
            assert solve_fixed_point(Params(13.0, 0.5, sigma)).xbar == pytest.approx(0.5, abs=1e-12)

    def test_against_independent_root_oracle(self):
        res = solve_fixed_point(Params(10.0, 0.4, 0.25))
        assert res.xbar == pytest.approx(XBAR_ORACLE_10_04_025, abs=1e-13)
        assert 0.4 < res.xbar < 0.5
        assert res.residual < 1e-12

    def test_residual_is_fixed_point_defect(self):
        p = Params(23.0, 0.3, 0.6)
        res = solve_fixed_point(p)
        assert res.residual == abs(step_x(p, res.xbar) - res.xbar)
        assert res.bracket >= 0.0

    @given(a=st.floats(0.1, 500.0), b=st.floats(0.01, 0.99), sigma=st.floats(0.0, 1.0))
    def test_residual_and_sandwich(self, a, b, sigma):
        res = solve_fixed_point(Params(a, b, sigma))
        assert res.residual < 1e-12
        assert min(b, 0.5) <= res.xbar <= max(b, 0.5)

    def test_sandwich_thousand_random(self):
        rng = random.Random(11)
        for _ in range(1000):
            b = rng.uniform(0.01, 0.99)
            res = solve_fixed_point(Params(rng.uniform(0.1, 500.0), b, rng.uniform(0.0, 1.0)))
            assert min(b, 0.5) <= res.xbar <= max(b, 0.5)

    def test_discount_to_zero_limit(self):
        # xbar(sigma) -> b as sigma -> 0, at |xbar - b| <= (sigma/a)*|log((1-x)/x)|
        p_args = (2.0, 0.3)
        gaps = []
        for sigma in (0.1, 0.01, 1e-3, 1e-6):
            xbar = solve_fixed_point(Params(*p_args, sigma)).xbar
            gaps.append(abs(xbar - 0.3))
        assert all(g2 < g1 for g1, g2 in zip(gaps, gaps[1:]))
        assert gaps[-1] < 1e-5


class TestEquilibriumLimits:
    def test_small_intensity_tends_to_half(self):
        (xbar,) = equilibrium_limits(0.4, 0.5, [0.01])
        assert abs(xbar - 0.5) < 1e-2

    def test_large_intensity_tends_to_nash(self):
        (xbar,) = equilibrium_limits(0.4, 0.5, [1e4])
        assert abs(xbar - 0.4) < 1e-3

    def test_strictly_monotone_below_half(self):
        grid = [2.0 ** k for k in range(11)]  # 1..1024
        xs = equilibrium_limits(0.3, 0.5, grid)
        assert all(x2 < x1 for x1, x2 in zip(xs, xs[1:]))
        assert 0.3 < xs[-1] < xs[0] < 0.5 + 1e-12

    def test_strictly_monotone_above_half(self):
        xs = equilibrium_limits(0.8, 0.4, [1.0, 4.0, 16.0, 64.0, 256.0])
        assert all(x2 > x1 for x1, x2 in zip(xs, xs[1:]))

    def test_rejects_unsorted_grid(self):
        with pytest.raises(ValueError):
            equilibrium_limits(0.4, 0.5, [2.0, 1.0])

    @given(b=st.floats(0.02, 0.98), sigma=st.floats(0.01, 1.0))
    def test_monotone_on_geometric_grid(self, b, sigma):
        grid = [0.25 * 3.0 ** k for k in range(8)]
        xs = equilibrium_limits(b, sigma, grid)
        if b < 0.5:
            assert all(x2 <= x1 for x1, x2 in zip(xs, xs[1:]))
        elif b > 0.5:
            assert all(x2 >= x1 for x1, x2 in zip(xs, xs[1:]))
