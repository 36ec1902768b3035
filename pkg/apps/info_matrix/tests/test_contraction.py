import math

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from apps.info_matrix.services.channel import is_steady_state
from apps.info_matrix.services.contraction import (
    beta_product_bound,
    optimal_beta,
    optimal_convex_split,
    verify_beta_floor,
)
from apps.info_matrix.tests.test_channel import bsc, random_stochastic
from apps.info_matrix.types import MessageDist, TransitionMatrix
from apps.shared.exceptions.custom_exceptions import CustomException


class OptimalConvexSplitTestCase(SimpleTestCase):
    def test_two_by_two_example(self):
        split = optimal_convex_split(TransitionMatrix([[0.9, 0.1], [0.2, 0.8]]))
        self.assertAlmostEqual(split.beta, 0.7, places=12)
        np.testing.assert_allclose(split.p_bar.entries, [[2 / 3, 1 / 3], [2 / 3, 1 / 3]], atol=1e-12)

    def test_identity_uses_uniform_steady_part(self):
        split = optimal_convex_split(TransitionMatrix.identity(3))
        self.assertEqual(split.beta, 1.0)
        np.testing.assert_allclose(split.p_bar.entries, np.full((3, 3), 1 / 3))

    def test_identical_rows_need_no_informative_part(self):
        P = TransitionMatrix.steady([0.2, 0.5, 0.3])
        split = optimal_convex_split(P)
        self.assertEqual(split.beta, 0.0)
        np.testing.assert_allclose(split.p_bar.entries, P.entries, atol=1e-12)

    @settings(max_examples=150, deadline=None)
    @given(M=st.integers(min_value=2, max_value=8), seed=st.integers(min_value=0, max_value=2 ** 32 - 1))
    def test_reconstruction(self, M, seed):
        P = random_stochastic(M, seed, sparsity=0.25)
        split = optimal_convex_split(P)
        self.assertLess(np.max(np.abs(split.reconstruct() - P.entries)), 1e-12)
        self.assertTrue(is_steady_state(split.p_bar))
        self.assertGreaterEqual(split.beta, 0.0)
        self.assertLessEqual(split.beta, 1.0)


class BetaFloorTestCase(SimpleTestCase):
    def test_identity_admits_only_beta_one(self):
        report = verify_beta_floor(TransitionMatrix.identity(3), trials=200, seed=4)
        self.assertEqual(report.floor, 1.0)
        self.assertEqual(report.min_beta, 1.0)
        self.assertTrue(report.passed)

    def test_two_by_two_floor_holds(self):
        report = verify_beta_floor(TransitionMatrix([[0.9, 0.1], [0.2, 0.8]]), trials=1000, seed=7)
        self.assertAlmostEqual(report.floor, 0.7, places=12)
        self.assertEqual(report.violations, 0)
        self.assertGreaterEqual(report.min_beta, 0.7 - 1e-12)
        self.assertGreater(report.valid, 900)

    def test_identical_rows_floor_is_zero(self):
        report = verify_beta_floor(TransitionMatrix.steady([0.5, 0.5]), trials=50, seed=1)
        self.assertEqual(report.floor, 0.0)
        self.assertTrue(report.passed)

    def test_rejects_zero_trials(self):
        with self.assertRaises(CustomException) as ctx:
            verify_beta_floor(TransitionMatrix.identity(2), trials=0, seed=1)
        self.assertEqual(ctx.exception.message_key, "EMPTY_SAMPLE_BUDGET")

    def test_reproducible(self):
        P = random_stochastic(4, 12)
        self.assertEqual(verify_beta_floor(P, 300, 5), verify_beta_floor(P, 300, 5))


class BetaProductBoundTestCase(SimpleTestCase):
    def test_single_identity_hop(self):
        bound, mi = beta_product_bound([TransitionMatrix.identity(4)])
        self.assertAlmostEqual(bound, 2.0, places=12)
        self.assertAlmostEqual(mi, 2.0, places=12)

    def test_steady_hop_kills_information(self):
        hops = [bsc(0.1), TransitionMatrix.steady([0.4, 0.6]), bsc(0.2)]
        bound, mi = beta_product_bound(hops)
        self.assertAlmostEqual(mi, 0.0, places=12)
        self.assertAlmostEqual(bound, 0.0, places=12)

    def test_five_binary_symmetric_hops(self):
        p = 0.0786496
        bound, mi = beta_product_bound([bsc(p)] * 5)
        self.assertAlmostEqual(bound, (1 - 2 * p) ** 5, places=12)
        self.assertAlmostEqual(bound, 0.4249, delta=5e-4)
        flip = (1 - (1 - 2 * p) ** 5) / 2
        self.assertAlmostEqual(mi, 1 + flip * math.log2(flip) + (1 - flip) * math.log2(1 - flip), places=10)
        self.assertAlmostEqual(mi, 0.1346, delta=1e-3)

    def test_general_prior_uses_source_entropy(self):
        prior = MessageDist([0.1, 0.9])
        bound, mi = beta_product_bound([TransitionMatrix.identity(2)], prior)
        self.assertAlmostEqual(bound, -0.1 * math.log2(0.1) - 0.9 * math.log2(0.9), places=12)
        self.assertAlmostEqual(mi, bound, places=12)

    def test_optimal_beta_of_bsc(self):
        self.assertAlmostEqual(optimal_beta(bsc(0.2)), 0.6, places=12)

    @settings(max_examples=120, deadline=None)
    @given(
        M=st.integers(min_value=2, max_value=6),
        hops=st.integers(min_value=1, max_value=6),
        seed=st.integers(min_value=0, max_value=2 ** 32 - 1),
    )
    def test_contraction_holds_for_any_cascade(self, M, hops, seed):
        matrices = [random_stochastic(M, seed + i, sparsity=0.5) for i in range(hops)]
        bound, mi = beta_product_bound(matrices)
        self.assertLessEqual(mi, bound + 1e-9)
