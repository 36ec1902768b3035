"""
Bounds on I(W; W_n) after n decode-and-forward hops.

theorem1_bound: NR [1 - M Q((M-1)/M Omega_0, N, snr)]^n.
legacy_bound: the earlier 2^(NR) (1 - e^(-N E(snr)))^(n (1 - eps)), eps = 0.
asymptotic_bound: theorem1_bound with M Q replaced by exp(-N E_as(R, snr)).
"""
import logging
import math
from typing import Sequence, Tuple

import numpy as np
from django.conf import settings

from apps.bound_engine.services.exponents import asymptotic_exponent, legacy_exponent
from apps.bound_engine.types import METHODS, BoundQuery, validate_rate
from apps.shannon_cone.services.q_function import log_q_complement_quadrature, q_complement_monte_carlo
from apps.shannon_cone.types import validate_block_length
from apps.shared.exceptions.custom_exceptions import CustomException

logger = logging.getLogger(__name__)

# epsilon in the legacy bound's exponent n (1 - epsilon)
LEGACY_EPSILON = 0.0
QUADRATURE_MASS_TOL = 1e-9


def per_hop_factor_estimate(
        N: int,
        R: float,
        snr: float,
        method: str = 'quadrature',
        samples: int | None = None,
        seed: int | None = None,
        threads: int | None = None,
) -> Tuple[float, float | None]:
    """
    (1 - M Q((M-1)/M Omega_0, N, snr), standard error); the error is None for quadrature.

    M Q above one by less than the method's tolerance is clamped with a warning;
    beyond that it is a numerical failure.
    """
    N = validate_block_length(N)
    bits = validate_rate(N, R)
    if method not in METHODS:
        raise CustomException(
            message_key="VALIDATION_ERROR",
            context={'errors': {'method': f"expected one of {list(METHODS)}, got {method!r}"}}
        )
    if not snr >= 0:
        raise CustomException(message_key="NEGATIVE_SNR", context={'gamma': snr})

    cap = 2.0 ** -bits
    if method == 'quadrature':
        log_q = log_q_complement_quadrature(cap, N, snr)
        mass = math.exp(bits * math.log(2.0) + log_q)
        stderr = None
        tol = QUADRATURE_MASS_TOL
    else:
        if seed is None:
            seed = settings.CONE_BOUND['DEFAULT_SEED']
        estimate = q_complement_monte_carlo(cap, N, snr, samples, seed, threads)
        mass = estimate.value * 2.0 ** bits
        stderr = estimate.stderr * 2.0 ** bits
        tol = 4.0 * stderr + 1e-9

    if mass > 1.0 + tol:
        raise CustomException(message_key="FACTOR_OUT_OF_RANGE", context={'mass': mass, 'tol': tol})
    if mass > 1.0:
        logger.warning("Clamping M*Q to 1", extra={'mass': mass, 'tol': tol, 'N': N, 'R': R, 'snr': snr})
        mass = 1.0
    return 1.0 - mass, stderr


def per_hop_factor(
        N: int,
        R: float,
        snr: float,
        method: str = 'quadrature',
        samples: int | None = None,
        seed: int | None = None,
        threads: int | None = None,
) -> float:
    """1 - M Q((M-1)/M Omega_0, N, snr), in [0, 1]."""
    return per_hop_factor_estimate(N, R, snr, method, samples, seed, threads)[0]


def theorem1_bound(q: BoundQuery, method: str = 'quadrature', **estimate_options) -> float:
    """N R per_hop_factor^n bits."""
    factor = per_hop_factor(q.N, q.R, q.snr, method, **estimate_options)
    return q.bits * factor ** q.n


def heterogeneous_bound(
        N: int,
        R: float,
        P0: float,
        sigmas: Sequence[float],
        method: str = 'quadrature',
        **estimate_options,
) -> float:
    """
    N R prod_i (1 - M Q((M-1)/M Omega_0, N, P0 / sigma_i^2)).

    The per-hop form before every sigma_i is relaxed to the floor sigma_0; it is
    never larger than theorem1_bound at sigma_0 = min(sigmas).
    """
    bits = validate_rate(validate_block_length(N), R)
    if not P0 > 0:
        raise CustomException(message_key="INVALID_POWER", context={'power': P0})
    if any(not sigma > 0 for sigma in sigmas):
        raise CustomException(
            message_key="INVALID_NOISE_LEVEL",
            context={'sigmas': list(sigmas), 'floor': min(sigmas, default=None)}
        )
    value = float(bits)
    for sigma in sigmas:
        value *= per_hop_factor(N, R, P0 / sigma ** 2, method, **estimate_options)
    return value


def legacy_bound(q: BoundQuery, epsilon: float = LEGACY_EPSILON) -> float:
    """2^(NR) (1 - e^(-N E(snr)))^(n (1 - epsilon)), evaluated through n log1p(-e^(-N E))."""
    exponent = legacy_exponent(q.snr)
    log2_value = q.bits + q.n * (1.0 - epsilon) * math.log1p(-math.exp(-q.N * exponent)) / math.log(2.0)
    with np.errstate(over='ignore'):
        return float(np.exp2(log2_value))


def asymptotic_bound(q: BoundQuery) -> float:
    """N R (1 - e^(-N E_as(R, snr)))^n, the large-N reading of theorem1_bound."""
    exponent = asymptotic_exponent(q.R, q.snr)
    return q.bits * math.exp(q.n * math.log1p(-math.exp(-q.N * exponent)))
