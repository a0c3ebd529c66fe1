"""
Unit tests for the limiting-regime approximations
"""
import math
import unittest

import numpy as np

from onebit.asymptotics.regimes import (
    Regime,
    high_snr_capacity,
    high_snr_e,
    large_alpha_capacity,
    large_alpha_e,
    low_snr_capacity,
    low_snr_saddle,
    saturation_alpha,
    small_alpha_capacity,
    small_alpha_saddle,
    solve_high_snr_saddle,
)
from onebit.common.errors import BracketError, DomainError
from onebit.numerics.special import LN2
from onebit.replica.capacity import capacity
from onebit.replica.functional import single_transceiver_capacity
from onebit.replica.saddle import SolverOptions, SystemPoint


class TestHighSnr(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.options = SolverOptions()
        cls.alpha_star = saturation_alpha(cls.options)

    def test_saturation_threshold(self):
        self.assertAlmostEqual(self.alpha_star, 1.24, delta=0.02)

    def test_saturates_above_threshold(self):
        self.assertEqual(high_snr_capacity(self.alpha_star + 0.05, self.options).c_avg, 1.0)
        self.assertEqual(high_snr_capacity(2.0, self.options).c_avg, 1.0)

    def test_below_threshold(self):
        approx = high_snr_capacity(self.alpha_star - 0.05, self.options)
        self.assertLess(approx.c_avg, 1.0)
        self.assertEqual(approx.regime, Regime.HIGH_SNR)
        self.assertAlmostEqual(high_snr_capacity(1.24, self.options).c_avg, 1.0, delta=0.01)

    def test_upper_bounds_finite_snr(self):
        for alpha in (0.5, 0.8, 1.0, 1.2):
            noise_free = high_snr_capacity(alpha, self.options).c_avg
            finite = capacity(SystemPoint(rho=1e4, alpha=alpha), self.options)
            self.assertFalse(finite.saddle.saturated, msg=alpha)
            self.assertGreaterEqual(noise_free, finite.c_avg - 1e-3, msg=alpha)
            self.assertLessEqual(noise_free, min(1.0, alpha) + 1e-9)

    def test_nondecreasing_in_alpha(self):
        values = [high_snr_capacity(a, self.options).c_avg for a in (0.25, 0.5, 0.75, 1.0, 1.5)]
        self.assertTrue(all(lo <= hi for lo, hi in zip(values, values[1:])))

    def test_saddle_matches_large_snr_solver_form(self):
        saddle = solve_high_snr_saddle(0.5, self.options)
        self.assertFalse(saddle.saturated)
        self.assertAlmostEqual(saddle.A, 1.0 / math.sqrt(1.0 - saddle.q), places=12)
        self.assertAlmostEqual(high_snr_e(0.5, saddle.q), saddle.E, places=9)

    def test_saturated_saddle_has_infinite_amplitude(self):
        saddle = solve_high_snr_saddle(2.0, self.options)
        self.assertTrue(saddle.saturated)
        self.assertTrue(math.isinf(saddle.A))

    def test_bracket_without_sign_change(self):
        with self.assertRaises(BracketError):
            saturation_alpha(self.options, bracket=(0.2, 0.4))

    def test_domain(self):
        with self.assertRaises(DomainError):
            high_snr_e(1.0, 1.0)
        with self.assertRaises(DomainError):
            solve_high_snr_saddle(0.0)


class TestLowSnr(unittest.TestCase):

    def test_zero_snr(self):
        self.assertEqual(low_snr_capacity(SystemPoint(rho=0.0, alpha=1.0)).c_avg, 0.0)

    def test_closed_form(self):
        approx = low_snr_capacity(SystemPoint(rho=0.1, alpha=1.0))
        expected = 0.1 / (math.pi * LN2) - (1.0 + math.pi - 1.0) / (math.pi**2 * LN2) * 0.01
        self.assertAlmostEqual(approx.c_avg, expected, places=15)
        self.assertEqual(approx.validity_hint, "alpha <= 0.4/rho")
        self.assertTrue(approx.within_validity)

    def test_validity_flag(self):
        self.assertFalse(low_snr_capacity(SystemPoint(rho=0.1, alpha=5.0)).within_validity)

    def test_matches_full_solver(self):
        point = SystemPoint(rho=0.01, alpha=0.5)
        full = capacity(point).c_avg
        self.assertAlmostEqual(low_snr_capacity(point).c_avg / full, 1.0, delta=0.01)

    def test_alpha_grid_at_low_snr(self):
        options = SolverOptions()
        for alpha in np.linspace(0.4, 4.0, 10):
            point = SystemPoint(rho=0.1, alpha=float(alpha))
            full = capacity(point, options).c_avg
            gap = abs(low_snr_capacity(point).c_avg - full) / full
            self.assertLessEqual(gap, 0.05, msg=alpha)

    def test_validity_rule_bounds_error(self):
        options = SolverOptions()
        for rho in (0.01, 0.05):
            limit = 0.4 / rho
            for alpha in np.linspace(limit / 10.0, limit, 10):
                point = SystemPoint(rho=rho, alpha=float(alpha))
                approx = low_snr_capacity(point)
                self.assertTrue(approx.within_validity)
                full = capacity(point, options).c_avg
                self.assertLessEqual(abs(approx.c_avg - full) / full, 0.05, msg=(rho, alpha))

    def test_saddle_estimate(self):
        saddle = low_snr_saddle(SystemPoint(rho=0.01, alpha=1.0))
        self.assertAlmostEqual(saddle.q, 0.02 / math.pi, places=15)
        self.assertAlmostEqual(saddle.A, 0.1, places=15)


class TestLargeAlpha(unittest.TestCase):

    def test_infinite_ratio_limit(self):
        self.assertEqual(large_alpha_capacity(SystemPoint(rho=0.5, alpha=1e6)).c_avg, 1.0)

    def test_close_to_full_solver(self):
        point = SystemPoint(rho=1.0, alpha=5.0)
        full = capacity(point).c_avg
        self.assertAlmostEqual(large_alpha_capacity(point).c_avg / full, 1.0, delta=0.02)

    def test_log_grid_gap(self):
        # the q -> 1 limit undershoots at moderate SNR; the gap peaks below rho = 1
        options = SolverOptions()
        rhos = np.logspace(-1.0, 1.0, 10)
        gaps = []
        for rho in rhos:
            point = SystemPoint(rho=float(rho), alpha=5.0)
            full = capacity(point, options).c_avg
            gaps.append(abs(large_alpha_capacity(point).c_avg - full) / full)
        worst = int(np.argmax(gaps))
        self.assertLessEqual(gaps[worst], 0.035)
        self.assertTrue(0.2 <= rhos[worst] <= 0.5, msg=rhos[worst])
        for rho, gap in zip(rhos, gaps):
            if rho >= 1.0:
                self.assertLessEqual(gap, 0.02, msg=rho)

    def test_linear_in_alpha(self):
        self.assertAlmostEqual(large_alpha_e(0.7, 3.0), 3.0 * large_alpha_e(0.7), places=12)
        self.assertEqual(large_alpha_e(0.0), 0.0)

    def test_requires_positive_snr(self):
        with self.assertRaises(DomainError):
            large_alpha_capacity(SystemPoint(rho=0.0, alpha=5.0))

    def test_validity_flag(self):
        self.assertTrue(large_alpha_capacity(SystemPoint(rho=1.0, alpha=6.0)).within_validity)
        self.assertFalse(large_alpha_capacity(SystemPoint(rho=1.0, alpha=2.0)).within_validity)


class TestSmallAlpha(unittest.TestCase):

    def test_first_order_term_dominates(self):
        for rho in (0.1, 1.0, 10.0):
            approx = small_alpha_capacity(SystemPoint(rho=rho, alpha=1e-9))
            self.assertAlmostEqual(approx.c_avg, single_transceiver_capacity(rho) * 1e-9, places=12)

    def test_close_to_full_solver(self):
        point = SystemPoint(rho=1.0, alpha=1.0)
        full = capacity(point).c_avg
        self.assertAlmostEqual(small_alpha_capacity(point).c_avg / full, 1.0, delta=0.02)

    def test_log_grid(self):
        options = SolverOptions()
        for rho in np.logspace(-1.0, 1.0, 10):
            point = SystemPoint(rho=float(rho), alpha=1.0)
            full = capacity(point, options).c_avg
            gap = abs(small_alpha_capacity(point).c_avg - full) / full
            self.assertLessEqual(gap, 0.02, msg=rho)

    def test_agrees_with_low_snr_to_first_order(self):
        rho = 0.01
        slope = single_transceiver_capacity(rho)
        self.assertAlmostEqual(slope / (rho / (math.pi * LN2)), 1.0, delta=0.01)

    def test_saddle_estimate(self):
        saddle = small_alpha_saddle(SystemPoint(rho=1.0, alpha=0.1))
        self.assertAlmostEqual(saddle.q, 0.1 / math.pi, places=15)
        self.assertAlmostEqual(saddle.A, math.sqrt(0.5), places=15)


if __name__ == "__main__":
    unittest.main()
