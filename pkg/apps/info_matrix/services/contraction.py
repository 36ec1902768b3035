"""
Contraction of mutual information through a cascade of stochastic matrices.

Every stochastic P splits as beta * P_beta + (1 - beta) * P_bar with P_bar
steady-state. Because a steady-state channel carries no information and mutual
information is convex in the channel, each hop multiplies what is left of
I(W; .) by at most beta. The smallest admissible beta is one minus the sum of
the column minima of P.
"""
import logging
from typing import Sequence, Tuple

import numpy as np

from apps.info_matrix.services.channel import chain_compose, entropy_bits, mutual_information
from apps.info_matrix.types import (
    EXACT_TOL,
    BetaFloorReport,
    ConvexSplit,
    MessageDist,
    TransitionMatrix,
)
from apps.shared.exceptions.custom_exceptions import CustomException
from apps.shared.utils.random_streams import STREAM_SPLITS, stream

logger = logging.getLogger(__name__)

CONTRACTION_SLACK = 1e-9


def column_minima_mass(P: TransitionMatrix) -> float:
    """sum_k min_j P[j, k], the mass every row shares; equals 1 - optimal beta."""
    return min(max(float(P.entries.min(axis=0).sum()), 0.0), 1.0)


def optimal_beta(P: TransitionMatrix) -> float:
    return 1.0 - column_minima_mass(P)


def optimal_convex_split(P: TransitionMatrix) -> ConvexSplit:
    """Split P with the smallest possible beta."""
    mins = P.entries.min(axis=0)
    mass = column_minima_mass(P)
    beta = 1.0 - mass

    if mass <= EXACT_TOL:
        # no shared mass: P_bar is unconstrained, uniform by convention
        return ConvexSplit(beta=1.0, p_beta=P, p_bar=TransitionMatrix.steady(np.full(P.M, 1.0 / P.M)))

    p_bar = TransitionMatrix.steady(mins / mins.sum())
    if beta <= EXACT_TOL:
        return ConvexSplit(beta=0.0, p_beta=P, p_bar=p_bar)

    remainder = np.clip(P.entries - mins[None, :], 0.0, None) / beta
    remainder = remainder / remainder.sum(axis=1, keepdims=True)
    return ConvexSplit(beta=beta, p_beta=TransitionMatrix(remainder), p_bar=p_bar)


def verify_beta_floor(P: TransitionMatrix, trials: int, seed: int) -> BetaFloorReport:
    """
    Sample random valid splits of P and check none beats the optimal beta.

    A split is drawn by choosing the steady row s from a flat Dirichlet and
    1 - beta uniformly in [0, min_k m_k / s_k], the largest weight for which
    P - (1 - beta) * s stays non-negative (m = column minima). The optimal split
    itself is added as one boundary sample. Draws whose remainder cannot be
    normalized are counted as generator failures, not as violations.
    """
    if trials is None or trials < 1:
        raise CustomException(message_key="EMPTY_SAMPLE_BUDGET", context={'samples': trials})

    floor = optimal_beta(P)
    mins = P.entries.min(axis=0)
    rng = stream(seed, STREAM_SPLITS)

    candidates = []
    if mins.sum() > 0:
        candidates.append((mins / mins.sum(), float(mins.sum())))
    for _ in range(trials):
        s = rng.dirichlet(np.ones(P.M))
        support = s > 0
        ceiling = min(1.0, float(np.min(mins[support] / s[support])))
        candidates.append((s, float(rng.uniform(0.0, ceiling))))

    valid = failures = violations = 0
    min_beta = 1.0
    for s, weight in candidates:
        beta = 1.0 - weight
        if beta <= EXACT_TOL:
            failures += 1
            continue
        q1 = (P.entries - weight * s[None, :]) / beta
        if np.any(q1 < -1e-9) or np.max(np.abs(q1.sum(axis=1) - 1.0)) > 1e-9:
            failures += 1
            continue
        reconstructed = beta * q1 + weight * s[None, :]
        if np.max(np.abs(reconstructed - P.entries)) > 1e-9:
            failures += 1
            continue
        valid += 1
        min_beta = min(min_beta, beta)
        if beta < floor - EXACT_TOL:
            violations += 1

    report = BetaFloorReport(
        floor=floor,
        min_beta=min_beta,
        trials=len(candidates),
        valid=valid,
        generator_failures=failures,
        violations=violations,
    )
    if failures:
        logger.info("Split sampler produced degenerate draws", extra=report.to_dict())
    return report


def beta_product_bound(
        hops: Sequence[TransitionMatrix],
        prior: MessageDist | None = None,
) -> Tuple[float, float]:
    """
    (H(W) * prod_i beta_i, I(W; W_n)) in bits for the cascade ``hops``.

    Raises when the mutual information exceeds the bound by more than 1e-9,
    which can only mean a numerical defect.
    """
    chain = chain_compose(hops)
    if prior is None:
        prior = MessageDist.uniform(chain.M)
    bound = entropy_bits(prior) * float(np.prod([optimal_beta(hop) for hop in hops]))
    mi = mutual_information(chain, prior)
    if mi > bound + CONTRACTION_SLACK:
        raise CustomException(message_key="CONTRACTION_VIOLATED", context={'mi': mi, 'bound': bound})
    return bound, mi
