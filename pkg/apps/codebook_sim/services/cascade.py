"""
End-to-end simulation of the relay line network.

Each node decodes the previous node's codeword and re-encodes the decision with
the same codebook, so the cascade law is the product of the per-hop matrices.
The matrices are estimated hop by hop; a direct simulation of the whole chain
runs alongside as a cross-check.
"""
import logging

import numpy as np

from apps.bound_engine.services.theorem import heterogeneous_bound, theorem1_bound
from apps.bound_engine.types import BoundQuery
from apps.codebook_sim.services.channel import decode, estimate_hop_matrix, mu_hat, mu_hat_stderr
from apps.codebook_sim.services.codes import make_code
from apps.codebook_sim.types import CascadeConfig, CascadeReport, SphereCode
from apps.info_matrix.services.channel import chain_compose, mutual_information
from apps.info_matrix.services.contraction import beta_product_bound
from apps.info_matrix.types import TransitionMatrix
from apps.shared.exceptions.custom_exceptions import CustomException
from apps.shared.utils.parallel import ordered_map
from apps.shared.utils.random_streams import STREAM_BOOTSTRAP, STREAM_CASCADE, chunks, stream

logger = logging.getLogger(__name__)

BOOTSTRAP_REPLICATES = 64
# The multihop bound may be exceeded by at most this many propagated Monte Carlo errors
BOUND_MARGIN_ERRORS = 3.0


def direct_cascade_counts(
        code: SphereCode,
        config: CascadeConfig,
        threads: int | None = None,
) -> np.ndarray:
    """counts[j, k]: transmissions of message j that left the last hop as k."""
    tasks = [(j, index, length) for j in range(code.M) for index, length in chunks(config.shots)]

    def run(task):
        j, index, length = task
        rng = stream(config.seed, STREAM_CASCADE, j, index)
        current = np.full(length, j)
        for sigma in config.sigmas:
            received = code.codewords[current] + sigma * rng.standard_normal((length, code.N))
            current = decode(config.decoder, code, received)
        return j, np.bincount(current, minlength=code.M)

    counts = np.zeros((code.M, code.M), dtype=np.int64)
    for j, partial in ordered_map(run, tasks, threads):
        counts[j] += partial
    return counts


def bootstrap_mi_error(hops, shots: int, seed: int, replicates: int = BOOTSTRAP_REPLICATES) -> float:
    """
    Parametric bootstrap of the end-to-end mutual information.

    Every replicate redraws each row of each estimated hop matrix as a
    multinomial with ``shots`` trials; the spread of the replicate MIs is the error.
    """
    values = []
    for replicate in range(replicates):
        rng = stream(seed, STREAM_BOOTSTRAP, replicate)
        resampled = [
            TransitionMatrix(rng.multinomial(shots, hop.entries) / shots)
            for hop in hops
        ]
        values.append(mutual_information(chain_compose(resampled)))
    return float(np.std(values, ddof=1))


def simulate_cascade(config: CascadeConfig, threads: int | None = None) -> CascadeReport:
    code = make_code(config.code_kind, config.M, config.N, config.P0, config.seed)

    hops = [
        estimate_hop_matrix(code, config.decoder, sigma, config.shots, config.seed, hop=i, threads=threads)
        for i, sigma in enumerate(config.sigmas)
    ]
    mus = [mu_hat(hop) for hop in hops]
    contraction_bits, mi_matrix = beta_product_bound(hops)

    direct = direct_cascade_counts(code, config, threads)
    mi_direct = mutual_information(TransitionMatrix(direct / config.shots))

    theorem1 = theorem1_bound(BoundQuery(n=config.n, N=config.N, R=config.R, snr=config.snr))
    report = CascadeReport(
        config=config,
        hop_matrices=hops,
        beta_hats=[1.0 - mu for mu in mus],
        mu_hats=mus,
        mu_stderrs=[mu_hat_stderr(hop, config.shots) for hop in hops],
        mi_matrix_bits=mi_matrix,
        mi_direct_bits=mi_direct,
        mc_error_bits=bootstrap_mi_error(hops, config.shots, config.seed),
        contraction_bits=contraction_bits,
        theorem1_bits=theorem1,
        heterogeneous_bits=heterogeneous_bound(config.N, config.R, config.P0, config.sigmas),
        slack=theorem1 - mi_matrix,
    )
    logger.info("Cascade simulated", extra=report.flat_row())
    return report


def bound_margin(report: CascadeReport) -> float:
    return BOUND_MARGIN_ERRORS * report.mc_error_bits


def check_bound(report: CascadeReport) -> None:
    """Raise when the estimated mutual information beats the multihop bound by more than the Monte Carlo margin."""
    margin = bound_margin(report)
    if report.mi_matrix_bits > report.theorem1_bits + margin:
        raise CustomException(
            message_key="BOUND_VIOLATED",
            context={'mi': report.mi_matrix_bits, 'bound': report.theorem1_bits, 'margin': margin}
        )
