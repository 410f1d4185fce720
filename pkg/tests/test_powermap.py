"""Construction, lookup, evaluation and inversion of the piecewise power map.

Independent oracles used here:
  * breakpoints: the one-step recurrence log2 r_n = log2 r_{n-1} - 1/k_n
    accumulated from r_0 = 1;
  * interval lookup: a linear scan over the breakpoint chain;
  * evaluation: continuity-chaining from f(r_{n-1}) with the interval slope;
  * inversion: the forward evaluator.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radialqc import (
    RADIUS_ZERO_LOG2,
    NotDifferentiableError,
    breakpoint_log2,
    build_standard_map,
)

K_VALUES = st.floats(min_value=1.05, max_value=5.0, allow_nan=False)
LOG_RADII = st.floats(min_value=-40.0, max_value=0.0, allow_nan=False)


def recurrence_breakpoints(K, depth):
    """Oracle: iterate log2 r_n = log2 r_{n-1} - 1/k_n from log2 r_0 = 0."""
    out = [0.0]
    for n in range(1, depth + 1):
        k_n = K if n % 2 == 1 else 1.0 / K
        out.append(out[-1] - 1.0 / k_n)
    return np.array(out)


def scan_locate(f, x):
    """Oracle: first interval index containing x, by linear scan."""
    n = 1
    while not (f.breakpoint(n) <= x <= f.breakpoint(n - 1)):
        n += 1
    return n


class TestConstruction:
    def test_rejects_bad_parameters(self):
        for bad_K in (1.0, 0.5, -2.0, float("nan"), float("inf")):
            with pytest.raises(ValueError):
                build_standard_map(bad_K)
        with pytest.raises(ValueError):
            build_standard_map(2.0, depth=1)

    def test_normalization(self):
        for K in (1.1, 2.0, 3.7):
            f = build_standard_map(K, 50)
            assert f.log2_r[0] == 0.0
            assert f.log2_C[1] == 0.0

    def test_breakpoints_at_K2(self):
        f = build_standard_map(2.0, 10)
        assert f.breakpoint(0) == 0.0
        assert f.breakpoint(1) == -0.5
        assert f.breakpoint(2) == -2.5
        assert f.breakpoint(3) == -3.0

    def test_breakpoint_n4_matches_recurrence_oracle(self):
        # frozen from the recurrence: 0 - 1/2 - 2 - 1/2 - 2 = -5
        f = build_standard_map(2.0, 10)
        assert f.breakpoint(4) == -5.0
        assert recurrence_breakpoints(2.0, 4)[4] == -5.0

    def test_coefficients_at_K2(self):
        f = build_standard_map(2.0, 10)
        assert f.log2_C[2] == -0.75
        assert f.log2_C[3] == 3.0

    def test_closed_form_matches_recurrence_at_full_depth(self):
        f = build_standard_map(2.0, 10_000)
        oracle = recurrence_breakpoints(2.0, 10_000)
        n = np.arange(0, 10_001)
        assert np.max(np.abs(f.breakpoint(n) - oracle)) <= 1e-9

    @given(K=K_VALUES)
    @settings(max_examples=30, deadline=None)
    def test_closed_form_matches_recurrence_generic_K(self, K):
        depth = 400
        f = build_standard_map(K, depth)
        oracle = recurrence_breakpoints(K, depth)
        n = np.arange(0, depth + 1)
        assert np.max(np.abs(f.breakpoint(n) - oracle)) <= 1e-9

    @given(K=K_VALUES)
    @settings(max_examples=30, deadline=None)
    def test_anchor_and_continuity(self, K):
        depth = 300
        f = build_standard_map(K, depth)
        n = np.arange(1, depth + 1)
        lr = f.breakpoint(n)
        k_n = np.where(n % 2 == 1, K, 1.0 / K)
        anchor = f.log2_C[1:] + n + k_n * lr
        assert np.max(np.abs(anchor)) <= 1e-9
        left = f.log2_C[1:-1] + k_n[:-1] * lr[:-1]
        right = f.log2_C[2:] + k_n[1:] * lr[:-1]
        assert np.max(np.abs(left - right)) <= 1e-9

    @given(K=K_VALUES, n=st.integers(1, 60), m=st.integers(0, 60))
    @settings(max_examples=100, deadline=None)
    def test_breakpoint_product_identities(self, K, n, m):
        lr = lambda j: breakpoint_log2(K, j)
        assert abs(lr(2 * n) + lr(m) - lr(2 * n + m)) <= 1e-9
        assert abs(lr(2 * n + 1) + lr(2 * m + 1) - lr(2 * (n + m) + 1) + 1.0 / K) <= 1e-9

    def test_breakpoints_strictly_decreasing(self):
        f = build_standard_map(3.7, 2000)
        assert np.all(np.diff(f.log2_r) < 0.0)


class TestLocate:
    def test_spec_examples(self):
        f = build_standard_map(2.0, 100)
        assert f.locate_interval(math.log2(0.8)) == 1
        assert f.locate_interval(-2.5) == 2  # exact breakpoint: smaller index
        assert f.locate_interval(math.log2(0.15)) == 3

    def test_unit_radius(self):
        f = build_standard_map(2.0, 100)
        assert f.locate_interval(0.0) == 1

    def test_breakpoint_ties_prefer_smaller_index(self):
        f = build_standard_map(1.7, 100)
        for n in range(1, 40):
            assert f.locate_interval(f.breakpoint(n)) == n

    def test_rejects_sentinel_and_positive(self):
        f = build_standard_map(2.0, 10)
        with pytest.raises(ValueError):
            f.locate_interval(RADIUS_ZERO_LOG2)
        with pytest.raises(ValueError):
            f.locate_interval(0.25)

    @given(K=K_VALUES, x=LOG_RADII)
    @settings(max_examples=150, deadline=None)
    def test_matches_scan_oracle(self, K, x):
        f = build_standard_map(K, 64)
        assert f.locate_interval(x) == scan_locate(f, x)

    def test_vectorized_lookup(self):
        f = build_standard_map(2.0, 100)
        xs = np.linspace(-20.0, 0.0, 500)
        ns = f.locate_interval(xs)
        assert ns.shape == xs.shape
        assert all(int(a) == scan_locate(f, b) for a, b in zip(ns, xs))


class TestEval:
    def test_first_interval_square(self):
        f = build_standard_map(2.0, 10)
        assert abs(f.eval_log(math.log2(0.8)) - math.log2(0.64)) <= 1e-12

    def test_breakpoints_map_to_halving_powers(self):
        f = build_standard_map(2.0, 10_000)
        n = np.arange(0, 10_001)
        assert np.max(np.abs(f.eval_log(f.breakpoint(n)) + n)) <= 1e-9

    def test_midpoint_via_continuity_chain_oracle(self):
        # chain: log2 f(r_1) = -1, then slope 1/K from r_1 down to 0.5
        f = build_standard_map(2.0, 10)
        x = -1.0
        oracle = -1.0 + (1.0 / 2.0) * (x - f.breakpoint(1))
        assert oracle == -1.25
        assert abs(f.eval_log(x) - oracle) <= 1e-12

    def test_sentinel_passes_through(self):
        f = build_standard_map(2.0, 10)
        assert f.eval_log(RADIUS_ZERO_LOG2) == RADIUS_ZERO_LOG2

    @given(K=K_VALUES, x=LOG_RADII, dx=st.floats(1e-6, 5.0))
    @settings(max_examples=150, deadline=None)
    def test_strictly_monotone(self, K, x, dx):
        f = build_standard_map(K, 64)
        if x - dx < -40.0:
            dx = 1e-6
        assert f.eval_log(x - dx) < f.eval_log(x)

    @given(K=K_VALUES, x=LOG_RADII, n=st.integers(1, 20))
    @settings(max_examples=100, deadline=None)
    def test_even_breakpoint_multiplicativity(self, K, x, n):
        f = build_standard_map(K, 64)
        shifted = f.eval_log(x + f.breakpoint(2 * n))
        assert abs(shifted - (f.eval_log(x) - 2 * n)) <= 1e-9


class TestInverse:
    def test_spec_examples(self):
        f = build_standard_map(2.0, 10)
        assert abs(f.inverse_eval_log(-1.0) + 0.5) <= 1e-12
        assert f.inverse_eval_log(0.0) == 0.0
        # forward oracle: f(0.15) = 8 * 0.15^2 = 0.18 on the third interval
        assert abs(f.inverse_eval_log(math.log2(0.18)) - math.log2(0.15)) <= 1e-9

    def test_sentinel(self):
        f = build_standard_map(2.0, 10)
        assert f.inverse_eval_log(RADIUS_ZERO_LOG2) == RADIUS_ZERO_LOG2

    @given(K=K_VALUES, x=LOG_RADII)
    @settings(max_examples=150, deadline=None)
    def test_roundtrip(self, K, x):
        f = build_standard_map(K, 64)
        assert abs(f.inverse_eval_log(f.eval_log(x)) - x) <= 1e-9

    @given(K=K_VALUES, y=LOG_RADII)
    @settings(max_examples=100, deadline=None)
    def test_forward_of_inverse(self, K, y):
        f = build_standard_map(K, 64)
        assert abs(f.eval_log(f.inverse_eval_log(y)) - y) <= 1e-9


class TestLinearScale:
    def test_values(self):
        f = build_standard_map(2.0, 10)
        assert abs(f.eval(0.8) - 0.64) <= 1e-12
        assert f.eval(1.0) == 1.0
        assert f.eval(0.0) == 0.0
        assert abs(f.eval(0.15) - 0.18) <= 1e-12

    def test_rejects_out_of_range(self):
        f = build_standard_map(2.0, 10)
        for bad in (-0.1, 1.5, float("nan")):
            with pytest.raises(ValueError):
                f.eval(bad)

    def test_underflow_to_zero_documented_behavior(self):
        f = build_standard_map(2.0, 10)
        assert np.exp2(f.eval_log(-2000.0)) == 0.0


class TestMeanRadius:
    def test_equals_forward_eval(self):
        f = build_standard_map(2.0, 100)
        assert f.mean_radius_radial(f.breakpoint(2)) == -2.0
        assert f.mean_radius_radial(0.0) == 0.0
        assert abs(f.mean_radius_radial(-1.0) + 1.25) <= 1e-12
        grid = np.linspace(-9.0, 0.0, 100)
        assert np.array_equal(f.mean_radius_radial(grid), f.eval_log(grid))


class TestLocalExponent:
    def test_alternates(self):
        f = build_standard_map(2.0, 10)
        assert f.local_exponent(math.log2(0.8)) == 2.0
        assert f.local_exponent(-1.0) == 0.5

    def test_breakpoint_rejected(self):
        f = build_standard_map(2.0, 10)
        with pytest.raises(NotDifferentiableError):
            f.local_exponent(f.breakpoint(1))
        with pytest.raises(NotDifferentiableError):
            f.local_exponent(0.0)
