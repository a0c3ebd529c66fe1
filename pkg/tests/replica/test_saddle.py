"""
Unit tests for the saddle-point maps and the damped fixed-point solver
"""
import math
import unittest

from pydantic import ValidationError

from onebit.common.errors import BoundarySaddleError, ConvergenceError, DomainError
from onebit.numerics.quadrature import adaptive_integral
from onebit.numerics.special import q_function
from onebit.replica.saddle import (
    SolverOptions,
    SystemPoint,
    a_of_q,
    e_update,
    initial_guess,
    iterate_fixed_point,
    q_update,
    scaled_inv_q_integral,
    solve_saddle,
)


class TestSystemPoint(unittest.TestCase):

    def test_rejects_invalid_values(self):
        for rho, alpha in ((-0.1, 1.0), (1.0, 0.0), (math.nan, 1.0), (1.0, math.inf)):
            with self.assertRaises(ValidationError):
                SystemPoint(rho=rho, alpha=alpha)

    def test_is_frozen(self):
        point = SystemPoint(rho=1.0, alpha=1.0)
        with self.assertRaises(ValidationError):
            point.rho = 2.0


class TestUpdateMaps(unittest.TestCase):

    def test_a_of_q(self):
        self.assertAlmostEqual(a_of_q(SystemPoint(rho=4.0, alpha=1.0), 1.0), 2.0, places=14)
        self.assertAlmostEqual(
            a_of_q(SystemPoint(rho=1.0, alpha=1.0), 0.0), math.sqrt(0.5), places=14
        )
        self.assertAlmostEqual(
            a_of_q(SystemPoint(rho=1e12, alpha=1.0), 0.5), math.sqrt(2.0), delta=1e-5
        )
        with self.assertRaises(DomainError):
            a_of_q(SystemPoint(rho=1.0, alpha=1.0), 1.5)

    def test_q_update(self):
        self.assertEqual(q_update(0.0), 0.0)
        self.assertAlmostEqual(q_update(1e6), 1.0, delta=1e-6)
        values = [q_update(E) for E in (0.1, 0.5, 1.0, 3.0)]
        for lo, hi in zip(values, values[1:]):
            self.assertLess(lo, hi)
        with self.assertRaises(DomainError):
            q_update(-0.5)

    def test_q_update_matches_adaptive_integral(self):
        E = 1.0
        density = lambda z: math.exp(-0.5 * z * z) / math.sqrt(2.0 * math.pi)  # noqa: E731
        oracle = adaptive_integral(
            lambda z: math.tanh(math.sqrt(E) * z + E) * density(z), -12.0, 12.0
        )
        self.assertAlmostEqual(q_update(E), oracle, places=10)

    def test_scaled_integral_matches_unstabilized_integrand(self):
        for a in (0.3, 1.0, 3.0):
            half = 10.0 / math.sqrt(1.0 + a * a)
            oracle = adaptive_integral(
                lambda z: math.exp(-(a * a + 0.5) * z * z) / float(q_function(a * z)), -half, half
            )
            self.assertAlmostEqual(scaled_inv_q_integral(a) / oracle, 1.0, places=9)
        self.assertAlmostEqual(scaled_inv_q_integral(0.0), 2.0 * math.sqrt(2.0 * math.pi))

    def test_e_update_vanishes_with_alpha(self):
        self.assertLess(e_update(SystemPoint(rho=1.0, alpha=1e-12), 0.3), 1e-11)

    def test_e_update_low_snr(self):
        point = SystemPoint(rho=0.01, alpha=1.0)
        q = q_update(e_update(point, 0.0))
        expected = 2.0 * point.alpha * point.rho / math.pi
        self.assertAlmostEqual(e_update(point, q) / expected, 1.0, delta=0.02)

    def test_e_update_boundary_and_domain(self):
        point = SystemPoint(rho=1.0, alpha=1.0)
        with self.assertRaises(BoundarySaddleError):
            e_update(point, 1.0)
        with self.assertRaises(DomainError):
            e_update(point, -0.1)

    def test_initial_guess_is_capped(self):
        self.assertEqual(initial_guess(SystemPoint(rho=100.0, alpha=50.0)), 0.9)
        self.assertAlmostEqual(
            initial_guess(SystemPoint(rho=1.0, alpha=1.0)), 1.0 / math.pi, places=14
        )


class TestSolveSaddle(unittest.TestCase):

    def setUp(self):
        self.options = SolverOptions()

    def test_low_snr_fixed_point(self):
        point = SystemPoint(rho=0.01, alpha=0.5)
        saddle = solve_saddle(point, self.options)
        expected = 2.0 * point.alpha * point.rho / math.pi
        self.assertFalse(saddle.saturated)
        self.assertAlmostEqual(saddle.q / expected, 1.0, delta=0.05)
        self.assertAlmostEqual(saddle.E / expected, 1.0, delta=0.05)

    def test_noise_free_large_alpha_saturates(self):
        saddle = solve_saddle(SystemPoint(rho=1e6, alpha=2.0), self.options)
        self.assertTrue(saddle.saturated)
        self.assertEqual(saddle.q, 1.0)
        self.assertAlmostEqual(saddle.A, 1e3)

    def test_self_consistency(self):
        for rho, alpha in ((1.0, 1.0), (2.07, 3.4), (0.1, 4.0), (10.0, 0.5)):
            point = SystemPoint(rho=rho, alpha=alpha)
            saddle = solve_saddle(point, self.options)
            self.assertFalse(saddle.saturated, msg=point)
            self.assertLessEqual(saddle.residual, 1e-10)
            self.assertAlmostEqual(saddle.A, a_of_q(point, saddle.q), places=12)
            self.assertAlmostEqual(e_update(point, saddle.q), saddle.E, places=9)
            self.assertAlmostEqual(q_update(saddle.E), saddle.q, places=9)
            self.assertTrue(0.0 <= saddle.q <= 1.0 and saddle.E >= 0.0)

    def test_coexisting_solutions_report_lower_overlap(self):
        point = SystemPoint(rho=1000.0, alpha=1.2)
        saddle = solve_saddle(point, self.options)
        single = solve_saddle(point, SolverOptions(second_start=None))
        self.assertFalse(saddle.saturated)
        self.assertLess(saddle.q, 0.9)
        self.assertAlmostEqual(saddle.q, single.q, places=9)

    def test_non_convergence_carries_last_iterate(self):
        options = SolverOptions(max_iter=2, second_start=None)
        with self.assertRaises(ConvergenceError) as ctx:
            solve_saddle(SystemPoint(rho=1.0, alpha=1.0), options)
        self.assertEqual(ctx.exception.iterations, 2)
        self.assertTrue(math.isfinite(ctx.exception.residual))

    def test_iteration_reports_start(self):
        point = SystemPoint(rho=1.0, alpha=1.0)
        fixed = iterate_fixed_point(lambda q: e_update(point, q), 0.2, self.options)
        self.assertEqual(fixed.start, 0.2)
        self.assertFalse(fixed.saturated)


if __name__ == "__main__":
    unittest.main()
