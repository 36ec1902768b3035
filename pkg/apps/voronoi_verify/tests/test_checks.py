import math

import numpy as np
from django.test import SimpleTestCase

from apps.codebook_sim.services.codes import circle_code, make_code
from apps.shared.exceptions.custom_exceptions import CustomException
from apps.voronoi_verify.services.checks import (
    SCALING_FACTORS,
    cone_floor_check,
    halfspace_tightness_check,
    pyramid_vs_cone_check,
    scaling_invariance_check,
    wedge_frequency_check,
)

EQUILATERAL = [0.0, 2 * math.pi / 3, 4 * math.pi / 3]


class ScalingInvarianceTestCase(SimpleTestCase):
    def test_codes_without_violations(self):
        codes = [
            make_code('antipodal', 2, 2, 1.0),
            circle_code(EQUILATERAL, 1.0),
            make_code('random_sphere', 5, 2, 1.0, seed=1),
            make_code('random_sphere', 6, 3, 1.0, seed=2),
            make_code('random_sphere', 8, 5, 1.0, seed=3),
        ]
        for code in codes:
            result = scaling_invariance_check(code, 10_000, seed=7)
            self.assertTrue(result.passed, msg=result.to_dict())
            self.assertEqual(result.statistic, 0.0)

    def test_zero_scaling_is_a_tie(self):
        result = scaling_invariance_check(make_code('random_sphere', 4, 3, 1.0, seed=5), 500, seed=1)
        self.assertEqual(result.details['skipped_ties'][str(0.0)], 500)
        self.assertEqual(len(result.details['skipped_ties']), len(SCALING_FACTORS))

    def test_requires_on_sphere_code(self):
        with self.assertRaises(CustomException) as ctx:
            scaling_invariance_check(circle_code([0.0, 2.0], 1.0, radii=[1.0, 0.5]), 10, seed=1)
        self.assertEqual(ctx.exception.message_key, "NOT_ON_SPHERE")

    def test_rejects_empty_budget(self):
        with self.assertRaises(CustomException) as ctx:
            scaling_invariance_check(make_code('antipodal', 2, 2, 1.0), 0, seed=1)
        self.assertEqual(ctx.exception.message_key, "EMPTY_SAMPLE_BUDGET")


class PyramidVsConeTestCase(SimpleTestCase):
    def test_equilateral_is_the_equality_case(self):
        for result in pyramid_vs_cone_check(circle_code(EQUILATERAL, 1.0), 1.0, 100_000, seed=3):
            self.assertTrue(result.passed)
            self.assertLessEqual(abs(result.statistic), 4 * result.details['stderr'] + 1e-12)

    def test_antipodal_halfspace_equals_cone(self):
        for result in pyramid_vs_cone_check(make_code('antipodal', 2, 2, 1.0), 0.8, 50_000, seed=4):
            self.assertLessEqual(abs(result.statistic), 4 * result.details['stderr'] + 1e-12)

    def test_asymmetric_codes_dominate(self):
        rng = np.random.default_rng(42)
        for trial in range(6):
            M = 3 + trial % 2
            code = circle_code(np.sort(rng.uniform(0.0, 2 * math.pi, M)), 1.0)
            for sigma in (0.5, 1.0):
                for result in pyramid_vs_cone_check(code, sigma, 20_000, seed=trial):
                    self.assertTrue(result.passed, msg=result.to_dict())

    def test_asymmetric_code_strictly_dominates(self):
        """Two close codewords and one opposite: the off-centre cells beat their cones by many standard errors"""
        code = circle_code([0.0, 0.3, math.pi], 1.0)
        results = pyramid_vs_cone_check(code, 1.0, 200_000, seed=7)
        for result in results:
            self.assertTrue(result.passed, msg=result.to_dict())
        margins = [result.statistic - 4 * result.details['stderr'] for result in results]
        self.assertGreater(max(margins), 0.0, msg=margins)
        # the cell of the codeword at 0.3 sits 0.64 rad off the axis through its antipode
        self.assertGreater(results[1].statistic, 4 * results[1].details['stderr'])
        self.assertGreater(results[1].details['p_pyramid'], results[1].details['p_cone'])

    def test_one_report_per_codeword(self):
        results = pyramid_vs_cone_check(circle_code([0.0, 1.0, 2.5, 4.0], 1.0), 1.0, 2_000, seed=1)
        self.assertEqual([r.name for r in results], [f'pyramid_vs_cone[{k}]' for k in range(4)])

    def test_three_dimensions(self):
        code = make_code('simplex', 4, 3, 1.0)
        results = pyramid_vs_cone_check(code, 1.0, 20_000, seed=9, dim=3)
        self.assertEqual(len(results), 4)
        for result in results:
            self.assertTrue(result.passed, msg=result.to_dict())
            # regular tetrahedron: every cell holds a quarter of the sphere
            self.assertAlmostEqual(result.details['solid_angle'], math.pi, delta=0.03)

    def test_unsupported_dimension(self):
        with self.assertRaises(CustomException) as ctx:
            pyramid_vs_cone_check(make_code('simplex', 3, 4, 1.0), 1.0, 100, seed=1, dim=4)
        self.assertEqual(ctx.exception.message_key, "UNSUPPORTED_DIMENSION")

    def test_dimension_must_match_code(self):
        with self.assertRaises(CustomException) as ctx:
            pyramid_vs_cone_check(make_code('simplex', 3, 2, 1.0), 1.0, 100, seed=1, dim=3)
        self.assertEqual(ctx.exception.message_key, "UNSUPPORTED_DIMENSION")


class WedgeFrequencyTestCase(SimpleTestCase):
    def test_frequencies_match_widths(self):
        for angles in (EQUILATERAL, [0.0, 0.4, 2.2, 3.9, 5.0]):
            result = wedge_frequency_check(circle_code(angles, 1.0), 200_000, seed=8)
            self.assertTrue(result.passed, msg=result.to_dict())
            self.assertAlmostEqual(result.details['width_sum'], 2 * math.pi, delta=1e-9)


class ConeFloorTestCase(SimpleTestCase):
    def test_floor_holds_in_the_plane(self):
        codes = [
            make_code('antipodal', 2, 2, 1.0),
            circle_code(EQUILATERAL, 1.0),
            circle_code([0.0, math.pi / 2, math.pi, 3 * math.pi / 2], 1.0),
            circle_code([0.3, 1.7, 2.2, 5.1], 1.0),
        ]
        for code in codes:
            result = cone_floor_check(code, 1.0, 50_000, seed=12)
            self.assertTrue(result.passed, msg=result.to_dict())


class HalfspaceTightnessTestCase(SimpleTestCase):
    def test_antipodal_meets_the_floor(self):
        for N in (2, 4, 8):
            result = halfspace_tightness_check(N, 0.5, 100_000, seed=N)
            self.assertTrue(result.passed, msg=result.to_dict())
