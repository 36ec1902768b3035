import logging
import math
from functools import reduce
from typing import Sequence

import numpy as np
from scipy.special import rel_entr
from scipy.stats import entropy

from apps.info_matrix.types import EXACT_TOL, MessageDist, TransitionMatrix
from apps.shared.exceptions.custom_exceptions import CustomException

logger = logging.getLogger(__name__)


def _resolve_prior(P: TransitionMatrix, prior: MessageDist | None) -> MessageDist:
    if prior is None:
        return MessageDist.uniform(P.M)
    if prior.M != P.M:
        raise CustomException(message_key="DIMENSION_MISMATCH", context={'expected': P.M, 'got': prior.M})
    return prior


def mutual_information(P: TransitionMatrix, prior: MessageDist | None = None) -> float:
    """
    I(W; W~) in bits for W ~ prior sent through P; uniform prior by default.

    Zero-probability cells contribute nothing (0 log 0 = 0).
    """
    prior = _resolve_prior(P, prior)
    joint = prior.probs[:, None] * P.entries
    output = prior.probs @ P.entries
    independent = prior.probs[:, None] * output[None, :]
    value = float(np.sum(rel_entr(joint, independent))) / math.log(2.0)
    return min(max(value, 0.0), math.log2(P.M))


def entropy_bits(prior: MessageDist) -> float:
    """H(W) in bits."""
    return float(entropy(prior.probs, base=2))


def is_steady_state(P: TransitionMatrix, tol: float = EXACT_TOL) -> bool:
    """True when every row equals the first one within ``tol``; such channels carry no information."""
    return bool(np.max(np.abs(P.entries - P.entries[0])) <= tol)


def chain_compose(hops: Sequence[TransitionMatrix]) -> TransitionMatrix:
    """End-to-end law P_1 P_2 ... P_n of a decode-and-forward cascade."""
    hops = list(hops)
    if not hops:
        raise CustomException(message_key="EMPTY_CHAIN")
    M = hops[0].M
    for hop in hops[1:]:
        if hop.M != M:
            raise CustomException(message_key="DIMENSION_MISMATCH", context={'expected': M, 'got': hop.M})
    return TransitionMatrix(reduce(np.matmul, (hop.entries for hop in hops)))
