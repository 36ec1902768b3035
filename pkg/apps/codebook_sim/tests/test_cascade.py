import dataclasses
import math

from django.test import SimpleTestCase

from apps.codebook_sim.serializers import CascadeConfigSerializer, CascadeReportSerializer, CascadeRowSerializer
from apps.codebook_sim.services.cascade import check_bound, simulate_cascade
from apps.codebook_sim.types import CascadeConfig
from apps.shared.exceptions.custom_exceptions import CustomException


def config(**overrides):
    values = {
        'n': 5, 'N': 2, 'R': 0.5, 'P0': 1.0, 'sigmas': (1.0,) * 5, 'sigma_floor': 1.0,
        'code_kind': 'antipodal', 'decoder': 'max_likelihood', 'shots': 100_000, 'seed': 20130701,
    }
    values.update(overrides)
    return CascadeConfig(**values)


class CascadeConfigTestCase(SimpleTestCase):
    def test_rejections(self):
        cases = [
            ({'sigmas': (1.0, 0.5, 1.0, 1.0, 1.0)}, "INVALID_NOISE_LEVEL"),
            ({'sigma_floor': 0.0}, "INVALID_NOISE_LEVEL"),
            ({'sigmas': (1.0,)}, "DIMENSION_MISMATCH"),
            ({'shots': 0}, "EMPTY_SAMPLE_BUDGET"),
            ({'n': 0, 'sigmas': ()}, "EMPTY_CHAIN"),
            ({'R': 0.7}, "RATE_NOT_INTEGRAL"),
            ({'P0': 0.0}, "INVALID_POWER"),
        ]
        for overrides, key in cases:
            with self.assertRaises(CustomException) as ctx:
                config(**overrides)
            self.assertEqual(ctx.exception.message_key, key, msg=overrides)

    def test_serializer_broadcasts_sigma_and_defaults_floor(self):
        serializer = CascadeConfigSerializer(data={'n': 3, 'N': 2, 'R': 0.5, 'sigma': [1.5], 'shots': 10, 'seed': 1})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        result = serializer.save()
        self.assertEqual(result.sigmas, (1.5, 1.5, 1.5))
        self.assertEqual(result.sigma_floor, 1.5)
        self.assertEqual(result.code_kind, 'antipodal')

    def test_serializer_rejects_wrong_sigma_count(self):
        serializer = CascadeConfigSerializer(data={'n': 3, 'N': 2, 'R': 0.5, 'sigma': [1.0, 2.0], 'shots': 10})
        self.assertFalse(serializer.is_valid())
        self.assertIn('sigma', serializer.errors)


class SimulateCascadeTestCase(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.report = simulate_cascade(config())

    def test_binary_symmetric_cascade(self):
        """Five antipodal hops behave as BSC(0.0786)^5, about 0.1346 bits"""
        report = self.report
        self.assertEqual(len(report.hop_matrices), 5)
        self.assertLess(abs(report.mi_matrix_bits - 0.1346), 0.02)
        self.assertAlmostEqual(report.theorem1_bits, 0.4250, delta=5e-4)
        self.assertGreater(report.slack, 0.0)
        check_bound(report)

    def test_estimated_matrices_obey_contraction(self):
        report = self.report
        product = 1.0
        for beta in report.beta_hats:
            product *= beta
        self.assertLessEqual(report.mi_matrix_bits, product + 1e-9)
        self.assertAlmostEqual(report.contraction_bits, product, places=12)

    def test_direct_simulation_agrees(self):
        report = self.report
        margin = 4 * math.sqrt(2) * report.mc_error_bits + 1e-3
        self.assertLessEqual(abs(report.mi_direct_bits - report.mi_matrix_bits), margin)
        self.assertGreater(report.mc_error_bits, 0.0)

    def test_equal_noise_levels_match_theorem1(self):
        self.assertAlmostEqual(self.report.heterogeneous_bits, self.report.theorem1_bits, places=12)

    def test_serialized_forms(self):
        data = CascadeReportSerializer(self.report).data
        self.assertEqual(data['M'], 2)
        self.assertEqual(len(data['hop_matrices']), 5)
        self.assertEqual(data['hop_matrices'][0]['M'], 2)
        self.assertEqual(data['config']['sigma'], [1.0] * 5)

        row = CascadeRowSerializer(self.report.flat_row()).data
        self.assertEqual(row['slack'], self.report.slack)


class CascadeEdgeCasesTestCase(SimpleTestCase):
    def test_near_noiseless_single_hop(self):
        report = simulate_cascade(config(n=1, sigmas=(1e-3,), sigma_floor=1e-3, shots=2000))
        self.assertAlmostEqual(report.mi_matrix_bits, 1.0, places=12)
        self.assertLess(report.mc_error_bits, 1e-12)
        self.assertGreaterEqual(report.slack, -1e-9)

    def test_identical_seeds_give_identical_reports(self):
        small = config(n=2, sigmas=(1.0, 1.4), shots=5000, code_kind='random_sphere', N=2, R=1.0)
        first = simulate_cascade(small, threads=1)
        second = simulate_cascade(small, threads=4)
        self.assertEqual(first.flat_row(), second.flat_row())
        self.assertEqual(first.hop_matrices, second.hop_matrices)

    def test_mixed_noise_levels(self):
        report = simulate_cascade(config(n=3, sigmas=(1.0, 2.0, 1.5), shots=20_000, decoder='farthest_point'))
        self.assertLessEqual(report.heterogeneous_bits, report.theorem1_bits + 1e-12)
        self.assertLessEqual(report.mi_matrix_bits, report.contraction_bits + 1e-9)
        check_bound(report)

    def test_violation_is_reported(self):
        report = simulate_cascade(config(n=1, sigmas=(1.0,), shots=2000))
        forged = dataclasses.replace(report, mi_matrix_bits=report.theorem1_bits + 0.5, mc_error_bits=0.01)
        with self.assertRaises(CustomException) as ctx:
            check_bound(forged)
        self.assertEqual(ctx.exception.message_key, "BOUND_VIOLATED")
