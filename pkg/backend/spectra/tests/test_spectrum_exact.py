import math

import numpy as np
from django.test import SimpleTestCase
from scipy.integrate import quad

from spectra.branch_core import ProblemKind, linearized_potential, solve_tau1
from spectra.exceptions import BracketError, DomainError, PreconditionError
from spectra.numerics import second_derivative_5pt
from spectra.spectrum_exact import (
    EigenPair,
    Normalization,
    Parity,
    RootSolveConfig,
    crossing_grid,
    eigenfunction,
    eigenvalue_bracket,
    equation_residual,
    mu_exact,
    phase_coefficient,
    phase_theta,
    solve_negative_root,
    solve_phase_offset,
    solve_phase_root,
    spectrum,
    stability,
    zero_crossings,
)

PLUS = ProblemKind.PLUS_EXP
MINUS = ProblemKind.MINUS_EXP
HALF_PI = 0.5 * math.pi


def ode_residual(pair, x):
    """max |phi'' + lambda f'(u) phi + mu phi| for the sup-normalized eigenfunction."""
    phi = eigenfunction(pair, Normalization.SUP_ONE)
    values = phi(x)
    residual = (
        second_derivative_5pt(phi, x)
        + linearized_potential(x, pair.tau, pair.kind) * values
        + pair.mu * values
    )
    return float(np.max(np.abs(residual)))


class PhaseCoefficientTests(SimpleTestCase):
    def test_values(self):
        tau1 = solve_tau1().value
        self.assertAlmostEqual(phase_coefficient(tau1, PLUS), 1.0, delta=1e-12)
        self.assertAlmostEqual(phase_coefficient(math.pi / 4, MINUS), math.pi / 4, places=12)

    def test_small_tau(self):
        for kind in ProblemKind:
            c = phase_coefficient(1e-4, kind)
            self.assertLess(abs(c - 1e-8) / 1e-8, 1e-7)


class RootSolverTests(SimpleTestCase):
    def test_first_phase_root(self):
        s = solve_phase_root(1, 0.5 * math.tanh(0.5), PLUS)
        self.assertAlmostEqual(s, 1.4081, delta=1e-3)
        self.assertAlmostEqual(s * s, 1.9828, delta=2e-3)

    def test_small_c_limits(self):
        for j in range(1, 6):
            s = solve_phase_root(j, 1e-8, PLUS)
            self.assertLessEqual(abs(s - HALF_PI * j), 1e-8)
        s = solve_phase_root(2, 1e-8, MINUS)
        self.assertLessEqual(abs(s - math.pi), 1e-8)

    def test_tiny_c_measures_offset_from_endpoint(self):
        for j in (1, 2, 5):
            delta = solve_phase_offset(1e-20, HALF_PI * j, 1.0)
            self.assertAlmostEqual(delta / (1e-20 / (HALF_PI * j)), 1.0, places=12)
        delta = solve_phase_offset(1e-12, math.pi, -1.0)
        self.assertAlmostEqual(delta / (1e-12 / math.pi), 1.0, places=10)
        self.assertEqual(solve_phase_root(3, 1e-20, PLUS), HALF_PI * 3)
        self.assertEqual(solve_phase_root(2, 1e-20, MINUS), HALF_PI * 2)
        with self.assertRaises(PreconditionError):
            solve_phase_offset(0.0, HALF_PI, 1.0)

    def test_large_c_root_stays_in_bracket(self):
        s = solve_phase_root(3, 1e9, PLUS)
        self.assertGreater(s, HALF_PI * 2)
        self.assertLess(s, HALF_PI * 3)

    def test_first_root_needs_c_below_one(self):
        with self.assertRaises(BracketError):
            solve_phase_root(1, 1.5, PLUS)

    def test_negative_root(self):
        s = solve_negative_root(2.0 * math.tanh(2.0))
        self.assertAlmostEqual(s, 1.8312, delta=2e-3)
        self.assertAlmostEqual(-s * s, -3.3533, delta=5e-3)

    def test_negative_root_near_fold(self):
        s = solve_negative_root(1.0 + 1e-6)
        self.assertLessEqual(s * s, 1e-5)
        self.assertGreater(s, 0.0)

    def test_negative_root_large_tau(self):
        s = solve_negative_root(30.0 * math.tanh(30.0))
        self.assertAlmostEqual(s / 30.0, math.tanh(s) * math.tanh(30.0), delta=1e-12)

    def test_negative_root_precondition(self):
        with self.assertRaises(PreconditionError):
            solve_negative_root(0.9)

    def test_root_config_validation(self):
        with self.assertRaises(PreconditionError):
            RootSolveConfig(abs_tol=0.0)
        with self.assertRaises(PreconditionError):
            RootSolveConfig(bracket_epsilon=1e-2)
        self.assertEqual(RootSolveConfig().abs_tol, 1e-13)


class MuExactTests(SimpleTestCase):
    def test_examples(self):
        tau1 = solve_tau1().value
        self.assertEqual(mu_exact(1, tau1, PLUS).mu, 0.0)
        self.assertAlmostEqual(mu_exact(1, 2.0, PLUS).mu, -3.3533, delta=5e-3)
        self.assertAlmostEqual(mu_exact(3, 1e-3, PLUS).mu, (1.5 * math.pi) ** 2, delta=1e-3)

    def test_pair_metadata(self):
        pair = mu_exact(2, 1.0, MINUS)
        self.assertEqual(pair.kind, MINUS)
        self.assertEqual(pair.j, 2)
        self.assertEqual(pair.regime, "positive")
        self.assertIs(pair.parity, Parity.ODD)
        self.assertEqual(mu_exact(1, 3.0, PLUS).regime, "negative")
        self.assertIs(mu_exact(1, 3.0, PLUS).parity, Parity.EVEN)

    def test_invalid_arguments(self):
        with self.assertRaises(PreconditionError):
            mu_exact(0, 1.0, PLUS)
        with self.assertRaises(DomainError):
            mu_exact(1, 2.0, MINUS)

    def test_brackets_interlacing_and_residuals(self):
        grids = {
            PLUS: np.geomspace(1e-3, 50.0, 50),
            MINUS: np.geomspace(1e-3, 1.5, 50),
        }
        for kind, taus in grids.items():
            for tau in taus:
                pairs = spectrum(float(tau), kind, 10)
                mus = [pair.mu for pair in pairs]
                self.assertTrue(all(a < b for a, b in zip(mus, mus[1:])), (kind, tau))
                for pair in pairs:
                    lo, hi = eigenvalue_bracket(pair.j, pair.tau, kind)
                    if pair.mu > 0.0:
                        self.assertLess(lo, pair.mu)
                        self.assertLess(pair.mu, hi)
                    else:
                        self.assertLessEqual(lo, pair.mu)
                        self.assertLessEqual(pair.mu, hi)
                    self.assertLessEqual(equation_residual(pair), 1e-12)

    def test_tiny_tau(self):
        for tau in (1e-8, 1e-100):
            for kind in ProblemKind:
                for j in (1, 2, 3):
                    pair = mu_exact(j, tau, kind)
                    limit = HALF_PI * j
                    self.assertLessEqual(abs(pair.sqrt_abs_mu - limit), 4 * np.spacing(limit), (kind, tau, j))
                    lo, hi = eigenvalue_bracket(j, tau, kind)
                    self.assertLessEqual(lo, pair.mu)
                    self.assertLessEqual(pair.mu, hi)
                    self.assertLessEqual(equation_residual(pair), 1e-12)

    def test_fold_continuity(self):
        tau1 = solve_tau1().value
        below = mu_exact(1, tau1 - 1e-4, PLUS).mu
        above = mu_exact(1, tau1 + 1e-4, PLUS).mu
        self.assertGreater(below, 0.0)
        self.assertLess(above, 0.0)
        self.assertLessEqual(abs(below), 1e-2)
        self.assertLessEqual(abs(above), 1e-2)

    def test_stability(self):
        self.assertEqual(stability(0.5, PLUS), "stable")
        self.assertEqual(stability(solve_tau1().value, PLUS), "neutral")
        self.assertEqual(stability(2.0, PLUS), "unstable")
        self.assertEqual(stability(1.5, MINUS), "stable")

    def test_small_tau_asymptotics(self):
        for j in range(1, 6):
            s = math.sqrt(mu_exact(j, 1e-3, PLUS).mu)
            self.assertLessEqual(abs(s - HALF_PI * j), 1e-5)

    def test_minus_near_limit(self):
        for j in range(1, 6):
            s = math.sqrt(mu_exact(j, HALF_PI - 1e-6, MINUS).mu)
            self.assertLessEqual(abs(s - HALF_PI * (j + 1)), 1e-3)

    def test_large_tau_first_eigenvalue(self):
        values = [mu_exact(1, tau, PLUS).mu for tau in (10.0, 20.0, 40.0)]
        self.assertTrue(values[0] > values[1] > values[2])
        self.assertLess(mu_exact(1, 15.0, PLUS).mu, -100.0)


class EigenfunctionTests(SimpleTestCase):
    def test_fold_eigenfunction(self):
        tau1 = solve_tau1().value
        phi = eigenfunction(mu_exact(1, tau1, PLUS))
        self.assertAlmostEqual(float(phi(0.0)), math.tanh(tau1), places=15)
        self.assertAlmostEqual(float(phi(0.0)), 0.83357, delta=1e-4)

    def test_boundary_values(self):
        cases = [(PLUS, tau) for tau in (0.3, 1.0, 2.0, 5.0, 50.0)] + [(MINUS, tau) for tau in (0.3, 1.0, 1.5)]
        cases += [(MINUS, HALF_PI - eps) for eps in (1e-6, 1e-8, 1e-12)]
        for kind, tau in cases:
            for j in range(1, 7):
                phi = eigenfunction(mu_exact(j, tau, kind), Normalization.SUP_ONE)
                self.assertLessEqual(abs(float(phi(1.0))), 1e-10, (kind, tau, j))
                self.assertLessEqual(abs(float(phi(-1.0))), 1e-10, (kind, tau, j))

    def test_odd_eigenfunction_vanishes_at_origin(self):
        for kind, tau in ((PLUS, 0.7), (PLUS, 3.0), (MINUS, 1.0)):
            phi = eigenfunction(mu_exact(2, tau, kind))
            self.assertAlmostEqual(float(phi(0.0)), 0.0, delta=1e-14)

    def test_normalizations(self):
        pair = mu_exact(3, 0.8, PLUS)
        sup_one = eigenfunction(pair, Normalization.SUP_ONE)
        x = np.linspace(-1.0, 1.0, 8193)
        self.assertAlmostEqual(float(np.max(np.abs(sup_one(x)))), 1.0, places=12)
        l2_one = eigenfunction(pair, "l2-one")
        self.assertIs(l2_one.normalization, Normalization.L2_ONE)
        norm2, _ = quad(lambda t: float(l2_one(t)) ** 2, -1.0, 1.0, epsabs=1e-13, limit=200)
        self.assertAlmostEqual(norm2, 1.0, places=9)

    def test_profile_checks_domain(self):
        phi = eigenfunction(mu_exact(1, 1.0, PLUS))
        with self.assertRaises(DomainError):
            phi(1.5)

    def test_no_overflow_for_large_tau(self):
        phi = eigenfunction(mu_exact(1, 1000.0, PLUS), Normalization.SUP_ONE)
        x = np.linspace(-1.0, 1.0, 2001)
        values = phi(x)
        self.assertTrue(np.all(np.isfinite(values)))
        self.assertAlmostEqual(float(phi(0.0)), 1.0, places=12)

    def test_ode_residual(self):
        x = np.linspace(-0.99, 0.99, 201)
        tau1 = solve_tau1().value
        cases = [(PLUS, tau) for tau in (0.3, tau1, 2.0, 5.0)] + [(MINUS, tau) for tau in (0.3, 1.0)]
        for kind, tau in cases:
            for j in range(1, 7):
                pair = mu_exact(j, tau, kind)
                self.assertLessEqual(ode_residual(pair, x), 1e-4 * (1.0 + abs(pair.mu)), (kind, tau, j))

    def test_wrong_eigenvalue_leaves_a_residual(self):
        x = np.linspace(-0.99, 0.99, 201)
        pair = mu_exact(1, 0.8, PLUS)
        profile = eigenfunction(pair, Normalization.SUP_ONE)
        shifted = EigenPair(kind=pair.kind, j=pair.j, tau=pair.tau, mu=pair.mu + 1e-2)
        values = profile(x)
        residual = (
            second_derivative_5pt(profile, x)
            + linearized_potential(x, pair.tau, pair.kind) * values
            + shifted.mu * values
        )
        self.assertGreater(float(np.max(np.abs(residual))), 1e-4 * (1.0 + abs(pair.mu)))

    def test_parity(self):
        x = np.linspace(0.0, 1.0, 513)
        for kind, tau in ((PLUS, 0.5), (PLUS, 2.0), (MINUS, 1.0)):
            for j in range(1, 9):
                phi = eigenfunction(mu_exact(j, tau, kind), Normalization.SUP_ONE)
                sign = 1.0 if j % 2 == 1 else -1.0
                self.assertLessEqual(float(np.max(np.abs(phi(x) - sign * phi(-x)))), 1e-12)
                self.assertIs(phi.parity, Parity.EVEN if j % 2 == 1 else Parity.ODD)

    def test_orthogonality(self):
        for kind, tau in ((PLUS, 0.5), (PLUS, 2.0), (MINUS, 1.0)):
            profiles = [eigenfunction(mu_exact(j, tau, kind), Normalization.L2_ONE) for j in range(1, 6)]
            for i in range(5):
                for k in range(i + 1, 5):
                    inner, _ = quad(
                        lambda t: float(profiles[i](t)) * float(profiles[k](t)),
                        -1.0, 1.0, epsabs=1e-12, limit=200,
                    )
                    self.assertLessEqual(abs(inner), 1e-6, (kind, tau, i + 1, k + 1))


class PhaseAndZeroTests(SimpleTestCase):
    def test_phase_at_origin(self):
        for pair in (mu_exact(2, 1.0, PLUS), mu_exact(1, 2.0, PLUS), mu_exact(3, 1.0, MINUS)):
            self.assertEqual(float(phase_theta(0.0, pair)), 0.0)

    def test_phase_condition_at_boundary(self):
        for tau in (0.3, 1.0, 4.0):
            for j in range(2, 6):
                pair = mu_exact(j, tau, PLUS)
                self.assertAlmostEqual(float(phase_theta(1.0, pair)), HALF_PI * j, places=10)

    def test_minus_phase_increasing(self):
        x = np.linspace(-0.999, 0.999, 2001)
        for j in range(1, 4):
            theta = phase_theta(x, mu_exact(j, 1.4, MINUS))
            self.assertTrue(np.all(np.diff(theta) > 0.0))

    def test_negative_phase_validity(self):
        pair = mu_exact(1, 2.0, PLUS)
        self.assertTrue(math.isfinite(float(phase_theta(0.5, pair))))
        with self.assertRaises(DomainError):
            phase_theta(0.9, pair)
        tau1 = solve_tau1().value
        with self.assertRaises(PreconditionError):
            phase_theta(0.5, mu_exact(1, tau1, PLUS))

    def test_zero_crossings(self):
        self.assertEqual(zero_crossings(eigenfunction(mu_exact(1, 3.0, PLUS))), 0)
        self.assertEqual(zero_crossings(eigenfunction(mu_exact(1, 0.4, PLUS))), 0)
        self.assertEqual(zero_crossings(eigenfunction(mu_exact(5, 3.0, PLUS))), 4)
        self.assertEqual(zero_crossings(eigenfunction(mu_exact(2, 1.0, MINUS))), 1)
        for j in range(1, 9):
            self.assertEqual(zero_crossings(eigenfunction(mu_exact(j, 0.5, PLUS))), j - 1)

    def test_zero_crossings_inside_thin_layers(self):
        for j in range(2, 7):
            self.assertEqual(zero_crossings(eigenfunction(mu_exact(j, 1e6, PLUS))), j - 1, j)
        for j in range(1, 7):
            pair = mu_exact(j, HALF_PI - 1e-8, MINUS)
            self.assertEqual(zero_crossings(eigenfunction(pair)), j - 1, j)

    def test_crossing_grid(self):
        x = crossing_grid(mu_exact(3, 1e6, PLUS), 512)
        self.assertTrue(np.all(np.abs(x) < 1.0))
        self.assertTrue(np.all(np.diff(x) > 0.0))
        self.assertGreater(np.count_nonzero(np.abs(x) < 1e-5), 100)
        x = crossing_grid(mu_exact(3, HALF_PI - 1e-8, MINUS), 512)
        self.assertGreater(np.count_nonzero(1.0 - np.abs(x) < 1e-7), 100)

    def test_zero_crossings_grid_size(self):
        with self.assertRaises(PreconditionError):
            zero_crossings(eigenfunction(mu_exact(4, 1.0, PLUS)), grid_size=100)
