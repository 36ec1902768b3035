import math

import numpy as np
from django.test import SimpleTestCase
from scipy.integrate import quad
from scipy.special import ndtr
from scipy.stats import chi

from apps.shannon_cone.services.geometry import total_solid_angle
from apps.shannon_cone.services.q_function import (
    displacement_angle,
    log_q_complement_quadrature,
    log_q_quadrature,
    q_complement_monte_carlo,
    q_complement_quadrature,
    q_halfspace,
    q_monte_carlo,
    q_quadrature,
)
from apps.shannon_cone.types import ConeQuery
from apps.shared.exceptions.custom_exceptions import CustomException


def _narrow_cone_cot(cap, N):
    """cot(theta) of the cone leaving a complementary cap ``cap``, in closed form for N = 2 and 3."""
    if N == 2:
        return -1.0 / math.tan(math.pi * cap)
    return -(1 - 2 * cap) / math.sqrt(4 * cap * (1 - cap))


def _direct_integral(cap, N, gamma):
    """Q by integrating chi_{N-1}(r) StdNormalCDF(r cot - a) over geometrically growing pieces of r."""
    cot = _narrow_cone_cot(cap, N)
    a = math.sqrt(N * gamma)
    width = 1.0 / abs(cot)
    edges = [0.0] + [width * 2.0 ** j for j in range(-3, 8)]
    return sum(
        quad(lambda r: chi.pdf(r, N - 1) * ndtr(r * cot - a), low, high, epsabs=0.0, epsrel=1e-11)[0]
        for low, high in zip(edges, edges[1:])
    )


class ConeQueryTestCase(SimpleTestCase):
    def test_rejects_invalid_fields(self):
        cases = [
            ({'x': 1.0, 'N': 1, 'gamma': 1.0}, "INVALID_BLOCK_LENGTH"),
            ({'x': 1.0, 'N': 3, 'gamma': -0.5}, "NEGATIVE_SNR"),
            ({'x': 100.0, 'N': 3, 'gamma': 1.0}, "SOLID_ANGLE_OUT_OF_RANGE"),
            ({'x': -1.0, 'N': 3, 'gamma': 1.0}, "SOLID_ANGLE_OUT_OF_RANGE"),
        ]
        for kwargs, key in cases:
            with self.assertRaises(CustomException) as ctx:
                ConeQuery(**kwargs)
            self.assertEqual(ctx.exception.message_key, key)


class HalfspaceTestCase(SimpleTestCase):
    def test_closed_form_values(self):
        self.assertAlmostEqual(q_halfspace(5, 0.0), 0.5, places=15)
        self.assertAlmostEqual(q_halfspace(2, 1.0), 0.0786496, places=6)
        self.assertAlmostEqual(q_halfspace(8, 0.5), 0.0227501, places=6)


class QuadratureTestCase(SimpleTestCase):
    def test_boundaries(self):
        for N in (2, 3, 8):
            omega0 = total_solid_angle(N)
            self.assertEqual(q_quadrature(ConeQuery(0.0, N, 1.0)), 1.0)
            self.assertEqual(q_quadrature(ConeQuery(omega0, N, 1.0)), 0.0)

    def test_zero_snr_is_uniform_over_solid_angle(self):
        for N in range(2, 17):
            omega0 = total_solid_angle(N)
            for fraction in (0.1, 0.25, 0.5, 0.75, 0.9):
                value = q_quadrature(ConeQuery(fraction * omega0, N, 0.0))
                self.assertLessEqual(abs(value - (1.0 - fraction)), 1e-8, msg=f"N={N} fraction={fraction}")

    def test_halfspace_identity(self):
        for N in range(2, 17):
            omega0 = total_solid_angle(N)
            for gamma in (0.0, 0.5, 1.0, 4.0):
                value = q_quadrature(ConeQuery(omega0 / 2, N, gamma))
                self.assertLessEqual(abs(value - q_halfspace(N, gamma)), 1e-8, msg=f"N={N} gamma={gamma}")

    def test_values_are_probabilities_and_decrease_in_snr(self):
        omega0 = total_solid_angle(4)
        previous = 1.0
        for gamma in (0.0, 0.25, 1.0, 2.0, 8.0):
            value = q_quadrature(ConeQuery(0.3 * omega0, 4, gamma))
            self.assertGreaterEqual(value, 0.0)
            self.assertLessEqual(value, previous + 1e-12)
            previous = value

    def test_log_quadrature_agrees_and_handles_tiny_values(self):
        omega0 = total_solid_angle(6)
        query = ConeQuery(0.7 * omega0, 6, 2.0)
        self.assertAlmostEqual(math.exp(log_q_quadrature(query)), q_quadrature(query), places=12)

        far_tail = ConeQuery(omega0 * (1 - 2.0 ** -32), 64, 4.0)
        log_value = log_q_quadrature(far_tail)
        self.assertTrue(math.isfinite(log_value))
        self.assertLess(log_value, -150.0)


class NarrowConeTestCase(SimpleTestCase):
    """Cones within a hair of the full sphere, where the integrand lives on a 1/|cot| window."""

    def test_zero_snr_near_the_full_sphere(self):
        for N in (2, 3):
            omega0 = total_solid_angle(N)
            for fraction in (0.999, 1 - 2.0 ** -16):
                value = q_quadrature(ConeQuery(fraction * omega0, N, 0.0))
                self.assertLessEqual(abs(value - (1 - fraction)), 1e-6 * (1 - fraction), msg=f"N={N} fraction={fraction}")

    def test_matches_direct_integration(self):
        for N, cap, gamma in ((2, 2.0 ** -10, 1.0), (2, 2.0 ** -18, 1.0), (2, 2.0 ** -16, 0.01),
                              (3, 2.0 ** -10, 0.5), (3, 2.0 ** -18, 0.1)):
            expected = _direct_integral(cap, N, gamma)
            value = q_complement_quadrature(cap, N, gamma)
            self.assertLessEqual(abs(value - expected), 1e-6 * expected, msg=f"N={N} cap={cap} gamma={gamma}")

    def test_planar_tail_reference_values(self):
        self.assertAlmostEqual(q_complement_quadrature(2.0 ** -10, 2, 1.0) / 8.70e-5, 1.0, delta=2e-3)
        self.assertAlmostEqual(q_complement_quadrature(2.0 ** -16, 2, 0.01) / 1.2707e-5, 1.0, delta=2e-3)
        self.assertAlmostEqual(q_complement_quadrature(2.0 ** -18, 3, 0.1) / 1.4604e-6, 1.0, delta=2e-3)

    def test_log_form_below_bisection_resolution(self):
        """cap 2^-40 in N = 2 puts the apex angle near 2.9e-12"""
        a = math.sqrt(2.0)
        asymptote = math.sqrt(2 / math.pi) * math.tan(math.pi * 2.0 ** -40) * (
            math.exp(-0.5 * a * a) / math.sqrt(2 * math.pi) - a * ndtr(-a)
        )
        self.assertAlmostEqual(log_q_complement_quadrature(2.0 ** -40, 2, 1.0), math.log(asymptote), delta=1e-6)

    def test_monte_carlo_agrees_near_the_full_sphere(self):
        estimate = q_complement_monte_carlo(2.0 ** -6, 2, 0.25, samples=400_000, seed=31)
        self.assertLessEqual(abs(estimate.value - q_complement_quadrature(2.0 ** -6, 2, 0.25)), 4 * estimate.stderr)


class MonteCarloTestCase(SimpleTestCase):
    def test_halfspace_oracle(self):
        omega0 = total_solid_angle(2)
        estimate = q_monte_carlo(ConeQuery(0.5 * omega0, 2, 1.0), samples=400_000, seed=11)
        self.assertLessEqual(abs(estimate.value - 0.0786496), 4 * estimate.stderr)

    def test_zero_snr_isotropy(self):
        for N in (2, 3, 8):
            omega0 = total_solid_angle(N)
            for fraction in (0.1, 0.5, 0.9):
                estimate = q_monte_carlo(ConeQuery(fraction * omega0, N, 0.0), samples=100_000, seed=5)
                self.assertLessEqual(abs(estimate.value - (1 - fraction)), 4 * estimate.stderr)

    def test_pathwise_monotone_in_snr(self):
        """Common random numbers: exact, no tolerance"""
        omega0 = total_solid_angle(3)
        for fraction in (0.2, 0.5, 0.8):
            estimates = [
                q_monte_carlo(ConeQuery(fraction * omega0, 3, gamma), samples=50_000, seed=99).value
                for gamma in np.arange(0.0, 4.0001, 0.25)
            ]
            for earlier, later in zip(estimates, estimates[1:]):
                self.assertLessEqual(later, earlier)

    def test_agrees_with_quadrature(self):
        for N in (2, 3, 5):
            omega0 = total_solid_angle(N)
            for fraction in (0.3, 0.6):
                for gamma in (0.5, 2.0):
                    query = ConeQuery(fraction * omega0, N, gamma)
                    estimate = q_monte_carlo(query, samples=200_000, seed=3)
                    self.assertLessEqual(abs(estimate.value - q_quadrature(query)), 4 * estimate.stderr + 1e-12)

    def test_independent_of_thread_count(self):
        query = ConeQuery(0.4 * total_solid_angle(4), 4, 1.0)
        single = q_monte_carlo(query, samples=100_003, seed=8, threads=1)
        many = q_monte_carlo(query, samples=100_003, seed=8, threads=4)
        self.assertEqual(single, many)

    def test_standard_error_formula(self):
        estimate = q_monte_carlo(ConeQuery(1.0, 3, 1.0), samples=10_000, seed=1)
        expected = math.sqrt(estimate.value * (1 - estimate.value) / 10_000)
        self.assertAlmostEqual(estimate.stderr, expected, places=15)

    def test_rejects_empty_budget(self):
        with self.assertRaises(CustomException) as ctx:
            q_monte_carlo(ConeQuery(1.0, 3, 1.0), samples=0, seed=1)
        self.assertEqual(ctx.exception.message_key, "EMPTY_SAMPLE_BUDGET")

    def test_displacement_angle_definition(self):
        phi = displacement_angle(np.array([0.0, 1.0, -3.0, 2.0]), np.array([1.0, 0.0, 1.0, 0.0]), 0.0)
        self.assertAlmostEqual(phi[0], math.pi / 2)
        self.assertEqual(phi[1], 0.0)
        self.assertGreater(phi[2], math.pi / 2)
        self.assertEqual(phi[3], 0.0)


class ComplementFormTestCase(SimpleTestCase):
    def test_matches_solid_angle_form(self):
        for N in (2, 4, 9):
            omega0 = total_solid_angle(N)
            for cap in (0.25, 0.5, 0.8):
                self.assertAlmostEqual(
                    q_complement_quadrature(cap, N, 1.5),
                    q_quadrature(ConeQuery((1 - cap) * omega0, N, 1.5)),
                    places=10
                )

    def test_caps_below_machine_epsilon_keep_their_meaning(self):
        """x = (M-1)/M * Omega_0 rounds to Omega_0 for M = 2^64; the cap form does not"""
        log_value = log_q_complement_quadrature(2.0 ** -64, 64, 4.0)
        self.assertTrue(math.isfinite(log_value))
        self.assertLess(log_value, math.log(q_halfspace(64, 4.0)))
        self.assertGreater(log_value, -64 * 4.0)

    def test_monte_carlo_halfspace(self):
        estimate = q_complement_monte_carlo(0.5, 3, 0.5, samples=200_000, seed=21)
        self.assertLessEqual(abs(estimate.value - q_halfspace(3, 0.5)), 4 * estimate.stderr)

    def test_rejects_cap_outside_unit_interval(self):
        with self.assertRaises(CustomException) as ctx:
            q_complement_quadrature(1.5, 3, 1.0)
        self.assertEqual(ctx.exception.message_key, "SOLID_ANGLE_OUT_OF_RANGE")
