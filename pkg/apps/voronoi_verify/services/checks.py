"""
Verification checks for the farthest-point decision rule.

Every check returns CheckResult objects; Monte Carlo comparisons pass when the
estimate stays within four standard errors of what the geometry demands.
"""
import logging
import math
from typing import List

import numpy as np

from apps.codebook_sim.services.channel import decode, estimate_hop_matrix, mu_hat, mu_hat_stderr, squared_distances
from apps.codebook_sim.services.codes import make_code
from apps.codebook_sim.types import FARTHEST_POINT, SphereCode
from apps.shannon_cone.services.geometry import inverse_cone_angle, total_solid_angle
from apps.shannon_cone.services.q_function import q_complement_quadrature, q_halfspace
from apps.shared.exceptions.custom_exceptions import CustomException
from apps.shared.utils.checks import CheckResult
from apps.shared.utils.parallel import ordered_map
from apps.shared.utils.random_streams import STREAM_GEOMETRY, chunks, stream
from apps.voronoi_verify.services.cells import cell_solid_angles_2d, require_distinct, require_on_sphere

logger = logging.getLogger(__name__)

SCALING_FACTORS = (0.0, 0.5, 2.0, 10.0)
# Relative gap between the two largest distances below which a decision counts as a tie
TIE_GAP = 1e-9
SPHERE_DIRECTIONS = 1_000_000
STDERR_MULTIPLE = 4.0

# Second key element of the geometry streams
_SCALING = 1
_PYRAMID = 2
_DIRECTIONS = 3
_WEDGES = 4


def _near_tie(distances: np.ndarray) -> np.ndarray:
    top_two = np.sort(distances, axis=-1)[..., -2:]
    return top_two[..., 1] - top_two[..., 0] <= TIE_GAP * np.maximum(top_two[..., 1], 1e-300)


def scaling_invariance_check(code: SphereCode, trials: int, seed: int) -> CheckResult:
    """Farthest-point decisions of alpha * y and y agree exactly away from ties."""
    require_on_sphere(code)
    if trials is None or trials < 1:
        raise CustomException(message_key="EMPTY_SAMPLE_BUDGET", context={'samples': trials})

    y = stream(seed, STREAM_GEOMETRY, _SCALING).standard_normal((trials, code.N)) * code.radius
    reference = decode(FARTHEST_POINT, code, y)
    reference_tie = _near_tie(squared_distances(code, y))

    violations = 0
    skipped = {}
    for alpha in SCALING_FACTORS:
        scaled = alpha * y
        tie = reference_tie | _near_tie(squared_distances(code, scaled))
        decisions = decode(FARTHEST_POINT, code, scaled)
        violations += int(np.count_nonzero((decisions != reference) & ~tie))
        skipped[str(alpha)] = int(np.count_nonzero(tie))

    return CheckResult(
        name='scaling_invariance',
        statistic=float(violations),
        threshold=0.0,
        passed=violations == 0,
        details={'M': code.M, 'N': code.N, 'trials': trials, 'skipped_ties': skipped},
    )


def _unit_directions(rng: np.random.Generator, count: int, N: int) -> np.ndarray:
    directions = rng.standard_normal((count, N))
    return directions / np.linalg.norm(directions, axis=1, keepdims=True)


def sphere_cell_solid_angles(code: SphereCode, directions: int, seed: int, threads: int | None = None) -> np.ndarray:
    """Solid angle of every farthest-point cell from uniformly drawn directions."""
    def run(chunk):
        index, length = chunk
        rng = stream(seed, STREAM_GEOMETRY, _DIRECTIONS, index)
        return np.bincount(decode(FARTHEST_POINT, code, _unit_directions(rng, length, code.N)), minlength=code.M)

    counts = np.sum(ordered_map(run, list(chunks(directions)), threads), axis=0)
    return total_solid_angle(code.N) * counts / directions


def pyramid_vs_cone_check(
        code: SphereCode,
        sigma: float,
        samples: int,
        seed: int,
        dim: int = 2,
        threads: int | None = None,
) -> List[CheckResult]:
    """
    For every codeword, compare Pr[c_k + Z in its farthest-point cell] (E1) with
    Pr[c_k + Z in the cone around -c_k of the same solid angle] (E2).

    Both events are evaluated on the same noise, so the paired difference has a
    small standard error. Cell solid angles are exact in the plane and sampled on
    the sphere in three dimensions.
    """
    if dim not in (2, 3) or code.N != dim:
        raise CustomException(
            message_key="UNSUPPORTED_DIMENSION",
            context={'dim': code.N if dim in (2, 3) else dim, 'choices': [2, 3]}
        )
    require_on_sphere(code)
    require_distinct(code)
    if samples is None or samples < 1:
        raise CustomException(message_key="EMPTY_SAMPLE_BUDGET", context={'samples': samples})

    if dim == 2:
        solid_angles = cell_solid_angles_2d(code).widths
    else:
        solid_angles = sphere_cell_solid_angles(code, SPHERE_DIRECTIONS, seed, threads)

    results = []
    for k in range(code.M):
        half_angle = inverse_cone_angle(min(solid_angles[k], total_solid_angle(code.N)), code.N)
        axis = -code.codewords[k] / code.radius
        rng = stream(seed, STREAM_GEOMETRY, _PYRAMID, k)
        y = code.codewords[k] + sigma * rng.standard_normal((samples, code.N))

        in_pyramid = decode(FARTHEST_POINT, code, y) == k
        cosines = np.clip((y @ axis) / np.linalg.norm(y, axis=1), -1.0, 1.0)
        in_cone = np.arccos(cosines) <= half_angle

        difference = in_pyramid.astype(float) - in_cone.astype(float)
        mean = float(difference.mean())
        stderr = float(difference.std(ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
        results.append(CheckResult(
            name=f'pyramid_vs_cone[{k}]',
            statistic=mean,
            threshold=-STDERR_MULTIPLE * stderr,
            passed=mean >= -STDERR_MULTIPLE * stderr,
            details={
                'p_pyramid': float(in_pyramid.mean()),
                'p_cone': float(in_cone.mean()),
                'stderr': stderr,
                'solid_angle': float(solid_angles[k]),
                'dim': dim,
            },
        ))
    return results


def wedge_frequency_check(code: SphereCode, directions: int, seed: int) -> CheckResult:
    """Exact wedge widths against how often uniform directions land in each cell."""
    cells = cell_solid_angles_2d(code)
    angles = stream(seed, STREAM_GEOMETRY, _WEDGES).uniform(0.0, 2.0 * math.pi, directions)
    unit = np.column_stack([np.cos(angles), np.sin(angles)])
    frequencies = np.bincount(decode(FARTHEST_POINT, code, unit), minlength=code.M) / directions

    expected = cells.widths / (2.0 * math.pi)
    stderr = np.sqrt(expected * (1.0 - expected) / directions)
    scores = np.abs(frequencies - expected) / np.maximum(stderr, 1e-300)
    worst = float(np.max(scores))
    return CheckResult(
        name='wedge_frequency',
        statistic=worst,
        threshold=STDERR_MULTIPLE,
        passed=worst <= STDERR_MULTIPLE,
        details={'widths': cells.widths.tolist(), 'frequencies': frequencies.tolist(), 'width_sum': float(cells.widths.sum())},
    )


def cone_floor_check(
        code: SphereCode,
        sigma: float,
        shots: int,
        seed: int,
        threads: int | None = None,
) -> CheckResult:
    """mu under the farthest-point rule against its floor M Q((M-1)/M Omega_0, N, P0 / sigma^2)."""
    P = estimate_hop_matrix(code, FARTHEST_POINT, sigma, shots, seed, threads=threads)
    mu, stderr = mu_hat(P), mu_hat_stderr(P, shots)
    floor = code.M * q_complement_quadrature(1.0 / code.M, code.N, code.power / sigma ** 2)
    return CheckResult(
        name='cone_floor',
        statistic=mu,
        threshold=floor - STDERR_MULTIPLE * stderr,
        passed=mu >= floor - STDERR_MULTIPLE * stderr,
        details={'M': code.M, 'N': code.N, 'sigma': sigma, 'floor': floor, 'stderr': stderr},
    )


def halfspace_tightness_check(N: int, snr: float, shots: int, seed: int, threads: int | None = None) -> CheckResult:
    """For the antipodal code the floor is met: mu = 2 StdNormalCDF(-sqrt(N snr))."""
    code = make_code('antipodal', 2, N, 1.0)
    P = estimate_hop_matrix(code, FARTHEST_POINT, 1.0 / math.sqrt(snr), shots, seed, threads=threads)
    mu, stderr = mu_hat(P), mu_hat_stderr(P, shots)
    target = 2.0 * q_halfspace(N, snr)
    gap = abs(mu - target)
    return CheckResult(
        name='halfspace_tightness',
        statistic=gap,
        threshold=STDERR_MULTIPLE * stderr,
        passed=gap <= STDERR_MULTIPLE * stderr,
        details={'N': N, 'snr': snr, 'mu_hat': mu, 'target': target, 'stderr': stderr},
    )
