import math

import numpy as np
from django.test import SimpleTestCase

from spectra.branch_core import (
    ProblemKind,
    alpha_from_tau,
    alpha_lambda_curve,
    branch_point,
    lambda_derivative,
    lambda_of_tau,
    linearized_potential,
    log_lambda_of_tau,
    potential_q,
    solve_tau1,
    tau_from_alpha,
    u_tau,
    u_value,
)
from spectra.exceptions import DomainError

PLUS = ProblemKind.PLUS_EXP
MINUS = ProblemKind.MINUS_EXP


class CurveParametrizationTests(SimpleTestCase):
    def test_alpha_examples(self):
        self.assertEqual(alpha_from_tau(0.0, PLUS), 0.0)
        self.assertAlmostEqual(alpha_from_tau(1.0, PLUS), 2.0 * math.log(math.cosh(1.0)), places=14)
        self.assertAlmostEqual(alpha_from_tau(1.0, PLUS), 0.8675617, delta=1e-7)
        self.assertAlmostEqual(alpha_from_tau(math.pi / 4, MINUS), math.log(2.0), places=14)

    def test_tau_from_alpha(self):
        self.assertEqual(tau_from_alpha(0.0, PLUS), 0.0)
        self.assertAlmostEqual(tau_from_alpha(math.log(4.0), PLUS), math.log(2.0 + math.sqrt(3.0)), places=14)

    def test_round_trips(self):
        grids = (
            (PLUS, np.geomspace(1e-6, 300.0, 4000)),
            (MINUS, np.geomspace(1e-6, 1.5707, 4000)),
        )
        for kind, taus in grids:
            back = tau_from_alpha(alpha_from_tau(taus, kind), kind)
            error = np.abs(back - taus)
            limit = 8 * np.spacing(taus)
            worst = int(np.argmax(error / limit))
            self.assertTrue(np.all(error <= limit), (kind, taus[worst], error[worst] / np.spacing(taus[worst])))
        for kind in ProblemKind:
            for tau in (1e-6, 0.05, 0.7, 1.2, 1.5):
                back = tau_from_alpha(alpha_from_tau(tau, kind), kind)
                self.assertLessEqual(abs(back - tau), 8 * np.spacing(tau), (kind, tau))

    def test_small_tau_alpha_is_relatively_accurate(self):
        eps = np.finfo(float).eps
        for tau in (1e-8, 1e-6, 1e-4):
            plus = tau * tau - tau ** 4 / 6.0
            minus = tau * tau + tau ** 4 / 6.0
            self.assertLessEqual(abs(alpha_from_tau(tau, PLUS) / plus - 1.0), 8 * eps, tau)
            self.assertLessEqual(abs(alpha_from_tau(tau, MINUS) / minus - 1.0), 8 * eps, tau)
            # u(0) = alpha
            self.assertLessEqual(abs(u_value(0.0, tau, PLUS) / plus - 1.0), 8 * eps, tau)
            self.assertLessEqual(abs(u_value(0.0, tau, MINUS) / minus - 1.0), 8 * eps, tau)

    def test_lambda_values(self):
        tau1 = solve_tau1().value
        lam = lambda_of_tau(tau1, PLUS)
        self.assertGreaterEqual(lam, 0.87840)
        self.assertLessEqual(lam, 0.87851)
        self.assertAlmostEqual(lambda_of_tau(1.0, MINUS), 2.0 / math.cos(1.0) ** 2, places=12)
        self.assertAlmostEqual(lambda_of_tau(1.0, MINUS), 6.85110, delta=1e-4)
        self.assertAlmostEqual(lambda_of_tau(1e-6, PLUS) / (2e-12), 1.0, places=10)

    def test_large_tau_in_log_space(self):
        self.assertTrue(math.isfinite(lambda_of_tau(1e6, PLUS)))
        log_lam = log_lambda_of_tau(400.0, PLUS)
        self.assertLess(log_lam, math.log(1e-300))
        expected = math.log(2.0) + 2.0 * math.log(1000.0) - 2.0 * (1000.0 - math.log(2.0))
        self.assertAlmostEqual(log_lambda_of_tau(1000.0, PLUS), expected, places=9)

    def test_lambda_shape(self):
        tau1 = solve_tau1().value
        grid = np.linspace(0.01, 8.0, 200)
        lam = lambda_of_tau(grid, PLUS)
        below = grid < tau1
        self.assertTrue(np.all(np.diff(lam[below]) > 0.0))
        self.assertTrue(np.all(np.diff(lam[~below]) < 0.0))
        minus_lam = lambda_of_tau(np.linspace(0.01, 1.55, 200), MINUS)
        self.assertTrue(np.all(np.diff(minus_lam) > 0.0))

    def test_alpha_lambda_curve_matches_tau_route(self):
        for kind in ProblemKind:
            for alpha in (0.1, 1.0, 5.0):
                via_tau = lambda_of_tau(tau_from_alpha(alpha, kind), kind)
                self.assertAlmostEqual(alpha_lambda_curve(alpha, kind), via_tau, delta=1e-12 * via_tau)

    def test_branch_point(self):
        point = branch_point(1.0, MINUS)
        self.assertEqual(point.kind, MINUS)
        self.assertAlmostEqual(point.lambda_, 2.0 / math.cos(1.0) ** 2, places=12)
        self.assertAlmostEqual(point.alpha, -2.0 * math.log(math.cos(1.0)), places=14)

    def test_domain_errors(self):
        with self.assertRaises(DomainError):
            alpha_from_tau(-0.1, PLUS)
        with self.assertRaises(DomainError):
            lambda_of_tau(1.6, MINUS)
        with self.assertRaises(DomainError):
            tau_from_alpha(-1.0, MINUS)
        with self.assertRaises(DomainError):
            u_value(1.5, 1.0, PLUS)
        with self.assertRaises(ValueError):
            potential_q(0.0, math.pi / 2, MINUS)


class SolutionTests(SimpleTestCase):
    def test_u_value(self):
        self.assertAlmostEqual(
            u_value(0.5, 1.0, PLUS),
            2.0 * (math.log(math.cosh(1.0)) - math.log(math.cosh(0.5))),
            places=14,
        )
        self.assertAlmostEqual(u_value(0.5, 1.0, PLUS), 0.627332, delta=1e-6)

    def test_u_invariants(self):
        rng = np.random.default_rng(7)
        for kind, tau_hi in ((PLUS, 20.0), (MINUS, 1.56)):
            for tau in rng.uniform(0.01, tau_hi, 20):
                x = rng.uniform(-1.0, 1.0, 50)
                u = u_value(x, tau, kind)
                np.testing.assert_allclose(u, u_value(-x, tau, kind), rtol=0, atol=1e-13)
                self.assertTrue(np.all(u >= -1e-13))
                self.assertTrue(np.all(u <= alpha_from_tau(tau, kind) + 1e-12))
                self.assertAlmostEqual(float(u_value(1.0, tau, kind)), 0.0, delta=1e-13)
                self.assertAlmostEqual(float(u_value(-1.0, tau, kind)), 0.0, delta=1e-13)

    def test_potential_q(self):
        for kind in ProblemKind:
            self.assertEqual(potential_q(0.0, 1.3, kind), 2.0 * 1.3 ** 2)
        self.assertAlmostEqual(potential_q(1.0, 1.0, PLUS), 2.0 / math.cosh(1.0) ** 2, places=14)
        self.assertAlmostEqual(potential_q(1.0, 1.0, PLUS), 0.839949, delta=1e-6)
        x = np.linspace(-1.0, 1.0, 41)
        for kind, tau in ((PLUS, 2.5), (MINUS, 1.2)):
            q = potential_q(x, tau, kind)
            np.testing.assert_allclose(q, potential_q(-x, tau, kind), rtol=1e-15)

    def test_potential_q_matches_lambda_exp_u(self):
        # e^{+-u} turns the rounding of u into a relative error of order eps*|u|,
        # so the agreement is 8 ulps scaled by 1 + alpha.
        eps = np.finfo(float).eps
        x = np.linspace(-1.0, 1.0, 101)
        grids = (
            (PLUS, np.geomspace(1e-6, 300.0, 80)),
            (MINUS, np.geomspace(1e-6, 1.56, 40)),
        )
        for kind, taus in grids:
            for tau in taus:
                q = potential_q(x, tau, kind)
                expected = lambda_of_tau(tau, kind) * np.exp(kind.sign * u_value(x, tau, kind))
                rtol = 8 * eps * (1.0 + float(alpha_from_tau(tau, kind)))
                np.testing.assert_allclose(q, expected, rtol=rtol, atol=0, err_msg=f"{kind} tau={tau}")

    def test_linearized_potential_sign(self):
        x = np.linspace(-1.0, 1.0, 11)
        np.testing.assert_array_equal(linearized_potential(x, 1.0, PLUS), potential_q(x, 1.0, PLUS))
        np.testing.assert_array_equal(linearized_potential(x, 1.0, MINUS), -potential_q(x, 1.0, MINUS))

    def test_u_tau_is_tau_derivative(self):
        x = np.linspace(-1.0, 1.0, 21)
        step = 1e-5
        for tau in (0.5, 1.2, 3.0):
            fd = (u_value(x, tau + step, PLUS) - u_value(x, tau - step, PLUS)) / (2.0 * step)
            np.testing.assert_allclose(u_tau(x, tau), fd, atol=1e-8)


class TurningPointTests(SimpleTestCase):
    def test_tau1(self):
        tau1 = solve_tau1()
        self.assertAlmostEqual(tau1.value, 1.19967864, delta=1e-8)
        self.assertLessEqual(abs(tau1.residual), 1e-12)
        self.assertLessEqual(abs(tau1.value * math.tanh(tau1.value) - 1.0), 1e-12)

    def test_bracket(self):
        self.assertLess(1.0 * math.tanh(1.0) - 1.0, 0.0)
        self.assertGreater(1.5 * math.tanh(1.5) - 1.0, 0.0)

    def test_lambda_derivative(self):
        tau1 = solve_tau1().value
        self.assertAlmostEqual(lambda_derivative(tau1, PLUS), 0.0, delta=1e-12)
        self.assertGreater(lambda_derivative(0.5, PLUS), 0.0)
        self.assertLess(lambda_derivative(2.0, PLUS), 0.0)
        self.assertGreater(lambda_derivative(1.0, MINUS), 0.0)

    def test_lambda_derivative_matches_central_difference(self):
        step = 1e-5
        for kind, taus in ((PLUS, (0.3, 0.9, 2.0, 6.0)), (MINUS, (0.3, 0.9, 1.4))):
            for tau in taus:
                fd = (lambda_of_tau(tau + step, kind) - lambda_of_tau(tau - step, kind)) / (2.0 * step)
                exact = lambda_derivative(tau, kind)
                self.assertAlmostEqual(fd, exact, delta=1e-7 * max(1.0, abs(exact)))
