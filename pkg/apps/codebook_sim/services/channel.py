"""
One AWGN hop: noisy reception of a codeword and the decision rule.

Noise for hop h, message j and chunk c always comes from the stream
(seed, STREAM_HOP, h, j, c), so transition matrices do not depend on how the
work is spread over threads.
"""
import logging
import math

import numpy as np

from apps.codebook_sim.types import DECODERS, FARTHEST_POINT, SphereCode
from apps.info_matrix.services.contraction import column_minima_mass
from apps.info_matrix.types import TransitionMatrix
from apps.shared.exceptions.custom_exceptions import CustomException
from apps.shared.utils.parallel import ordered_map
from apps.shared.utils.random_streams import STREAM_HOP, chunks, stream

logger = logging.getLogger(__name__)


def awgn_sample(x: np.ndarray, sigma: float, rng: np.random.Generator) -> np.ndarray:
    """x + sigma Z with Z i.i.d. standard normal; x may be one codeword or a batch."""
    if not sigma > 0:
        raise CustomException(message_key="INVALID_NOISE_LEVEL", context={'sigmas': [sigma], 'floor': 0})
    x = np.asarray(x, dtype=float)
    return x + sigma * rng.standard_normal(x.shape)


def squared_distances(code: SphereCode, y: np.ndarray) -> np.ndarray:
    """||y - c_j||^2 for every observation row and codeword, shape (..., M)."""
    y = np.asarray(y, dtype=float)
    if y.shape[-1] != code.N:
        raise CustomException(message_key="DIMENSION_MISMATCH", context={'expected': code.N, 'got': y.shape[-1]})
    difference = y[..., None, :] - code.codewords
    return np.einsum('...mk,...mk->...m', difference, difference)


def decode(kind: str, code: SphereCode, y: np.ndarray):
    """
    Decide which message was sent.

    max_likelihood picks the nearest codeword, farthest_point the farthest one;
    ties go to the lowest index. A single observation gives an int, a batch an array.
    """
    if kind not in DECODERS:
        raise CustomException(
            message_key="VALIDATION_ERROR",
            context={'errors': {'decoder': f"expected one of {list(DECODERS)}, got {kind!r}"}}
        )
    distances = squared_distances(code, y)
    decisions = np.argmax(distances, axis=-1) if kind == FARTHEST_POINT else np.argmin(distances, axis=-1)
    return int(decisions) if np.ndim(decisions) == 0 else decisions


def hop_counts(
        code: SphereCode,
        decoder: str,
        sigma: float,
        shots: int,
        seed: int,
        hop: int = 0,
        threads: int | None = None,
) -> np.ndarray:
    """counts[j, k]: how many of ``shots`` transmissions of message j were decoded as k."""
    if shots is None or shots < 1:
        raise CustomException(message_key="EMPTY_SAMPLE_BUDGET", context={'samples': shots})
    tasks = [(j, index, length) for j in range(code.M) for index, length in chunks(shots)]

    def run(task):
        j, index, length = task
        rng = stream(seed, STREAM_HOP, hop, j, index)
        received = awgn_sample(np.broadcast_to(code.codewords[j], (length, code.N)), sigma, rng)
        return j, np.bincount(decode(decoder, code, received), minlength=code.M)

    counts = np.zeros((code.M, code.M), dtype=np.int64)
    for j, partial in ordered_map(run, tasks, threads):
        counts[j] += partial
    return counts


def estimate_hop_matrix(
        code: SphereCode,
        decoder: str,
        sigma: float,
        shots: int,
        seed: int,
        hop: int = 0,
        threads: int | None = None,
) -> TransitionMatrix:
    """Empirical transition matrix of one hop, ``shots`` transmissions per message."""
    counts = hop_counts(code, decoder, sigma, shots, seed, hop, threads)
    logger.info(
        "Hop matrix estimated",
        extra={'hop': hop, 'sigma': sigma, 'shots': shots, 'decoder': decoder, 'seed': seed}
    )
    return TransitionMatrix(counts / shots)


def mu_hat(P: TransitionMatrix) -> float:
    """sum_k min_j P[j, k]: the estimate of mu_sigma for the hop, and 1 - beta."""
    return column_minima_mass(P)


def mu_hat_stderr(P: TransitionMatrix, shots: int) -> float:
    """Binomial standard error of mu_hat, treating the column minima as independent proportions."""
    minima = P.entries.min(axis=0)
    return math.sqrt(float(np.sum(minima * (1.0 - minima))) / shots)
