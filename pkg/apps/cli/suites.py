"""
Verification suites run by ``manage.py verify``.

A suite is a function (samples, seed, threads) -> list of CheckResult. ``all``
runs every registered suite in registration order.
"""
import logging
import math
from typing import Callable, Dict, List

import numpy as np
from scipy.special import ndtr

from apps.bound_engine.serializers import ConvergenceRowSerializer
from apps.bound_engine.services.exponents import (
    DUAL_FORM_TOL,
    asymptotic_exponent,
    db_to_linear,
    dual_forms,
    errors_decrease,
    exponent_convergence,
    exponent_ratio_table,
    legacy_exponent,
)
from apps.codebook_sim.services.cascade import bound_margin, simulate_cascade
from apps.codebook_sim.services.codes import circle_code, make_code
from apps.codebook_sim.types import CascadeConfig
from apps.info_matrix.services.channel import mutual_information
from apps.info_matrix.services.contraction import beta_product_bound, optimal_convex_split, verify_beta_floor
from apps.info_matrix.types import TransitionMatrix
from apps.shannon_cone.services.geometry import total_solid_angle
from apps.shannon_cone.services.q_function import q_halfspace, q_monte_carlo, q_quadrature
from apps.shannon_cone.types import ConeQuery
from apps.shared.exceptions.custom_exceptions import CustomException
from apps.shared.utils.checks import CheckResult
from apps.shared.utils.random_streams import STREAM_GEOMETRY, STREAM_SPLITS, stream
from apps.voronoi_verify.services.cells import lift_code_to_sphere_2d
from apps.voronoi_verify.services.checks import (
    STDERR_MULTIPLE,
    cone_floor_check,
    halfspace_tightness_check,
    pyramid_vs_cone_check,
    scaling_invariance_check,
    wedge_frequency_check,
)

logger = logging.getLogger(__name__)

Suite = Callable[[int, int, int | None], List[CheckResult]]

QUADRATURE_TOL = 1e-8
ZERO_SNR_BLOCK_LENGTHS = (2, 3, 8)
ZERO_SNR_FRACTIONS = tuple(k / 10 for k in range(1, 10))
HALFSPACE_BLOCK_LENGTHS = tuple(range(2, 17))
HALFSPACE_SNRS = (0.0, 0.5, 1.0, 4.0)
MONOTONE_SNRS = tuple(k / 4 for k in range(17))

RANDOM_MATRICES = 100
SPLITS_PER_MATRIX = 1000
RANDOM_CHAINS = 1000
RECONSTRUCTION_TOL = 1e-12

DEFAULT_RATES = (0.25, 0.5, 1.0, 2.0, 4.0)
DEFAULT_SNRS_DB = tuple(float(s) for s in range(-10, 31, 5))
RATIO_SPOT = (1.0, 4.0, 0.7675)
CONVERGENCE_POINTS = ((0.5, 4.0), (1.0, 4.0))

RANDOM_CIRCLE_CODES = 20
# Second key element of the geometry streams used here; checks.py owns 1..4
_SUITE_CODES = 10

END_TO_END_HOPS = (1, 2, 5, 10)
END_TO_END_SHOTS = 1_000_000
ORACLE_HOPS = 5
ORACLE_TOL = 0.01
BOUND_SPOT = 0.4249
BOUND_SPOT_TOL = 1e-3


def _check(name: str, statistic: float, threshold: float, passed: bool, **details) -> CheckResult:
    return CheckResult(name=name, statistic=float(statistic), threshold=float(threshold), passed=bool(passed), details=details)


def qfunc_suite(samples: int, seed: int, threads: int | None = None) -> List[CheckResult]:
    results = []
    for N in ZERO_SNR_BLOCK_LENGTHS:
        omega0 = total_solid_angle(N)
        gap = max(abs(q_quadrature(ConeQuery(f * omega0, N, 0.0)) - (1.0 - f)) for f in ZERO_SNR_FRACTIONS)
        results.append(_check(f'zero_snr_law_quadrature[N={N}]', gap, QUADRATURE_TOL, gap <= QUADRATURE_TOL))

        worst = 0.0
        for f in ZERO_SNR_FRACTIONS:
            estimate = q_monte_carlo(ConeQuery(f * omega0, N, 0.0), samples, seed, threads)
            worst = max(worst, abs(estimate.value - (1.0 - f)) / max(estimate.stderr, 1.0 / samples))
        results.append(_check(f'zero_snr_law_monte_carlo[N={N}]', worst, STDERR_MULTIPLE, worst <= STDERR_MULTIPLE, samples=samples))

    gap = max(
        abs(q_quadrature(ConeQuery(total_solid_angle(N) / 2, N, gamma)) - q_halfspace(N, gamma))
        for N in HALFSPACE_BLOCK_LENGTHS
        for gamma in HALFSPACE_SNRS
    )
    results.append(_check('halfspace_identity', gap, QUADRATURE_TOL, gap <= QUADRATURE_TOL))

    for N in (2, 8):
        x = 0.6 * total_solid_angle(N)
        values = [q_monte_carlo(ConeQuery(x, N, gamma), samples, seed, threads).value for gamma in MONOTONE_SNRS]
        increases = int(np.count_nonzero(np.diff(values) > 0))
        results.append(_check(f'pathwise_monotonicity[N={N}]', increases, 0, increases == 0, values=values))
    return results


def _random_matrix(seed: int, M: int, index: int) -> TransitionMatrix:
    return TransitionMatrix(stream(seed, STREAM_SPLITS, M, index).dirichlet(np.ones(M), size=M))


def matrix_suite(samples: int, seed: int, threads: int | None = None) -> List[CheckResult]:
    violations = failures = 0
    worst_reconstruction = 0.0
    for M in (3, 4):
        for index in range(RANDOM_MATRICES):
            P = _random_matrix(seed, M, index)
            report = verify_beta_floor(P, SPLITS_PER_MATRIX, seed + index)
            violations += report.violations
            failures += report.generator_failures
            split = optimal_convex_split(P)
            worst_reconstruction = max(worst_reconstruction, float(np.max(np.abs(split.reconstruct() - P.entries))))

    results = [
        _check('beta_floor', violations, 0, violations == 0, matrices=2 * RANDOM_MATRICES, generator_failures=failures),
        _check('optimal_split_reconstruction', worst_reconstruction, RECONSTRUCTION_TOL, worst_reconstruction < RECONSTRUCTION_TOL),
    ]

    rng = stream(seed, STREAM_SPLITS, 0)
    contraction_failures = 0
    for index in range(RANDOM_CHAINS):
        M = int(rng.integers(2, 5))
        length = int(rng.integers(1, 7))
        hops = [TransitionMatrix(rng.dirichlet(np.ones(M), size=M)) for _ in range(length)]
        try:
            beta_product_bound(hops)
        except CustomException as exc:
            if exc.message_key != "CONTRACTION_VIOLATED":
                raise
            contraction_failures += 1
    results.append(_check('beta_product_contraction', contraction_failures, 0, contraction_failures == 0, chains=RANDOM_CHAINS))
    return results


def _random_circle_angles(rng: np.random.Generator, M: int) -> np.ndarray:
    while True:
        angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, M))
        if np.min(np.diff(np.append(angles, angles[0] + 2.0 * math.pi))) > 0.1:
            return angles


def geometry_suite(samples: int, seed: int, threads: int | None = None) -> List[CheckResult]:
    equilateral = circle_code([0.0, 2 * math.pi / 3, 4 * math.pi / 3], 1.0)
    results = []

    for code in (
            make_code('antipodal', 2, 2, 1.0),
            equilateral,
            make_code('random_sphere', 5, 2, 1.0, seed),
            make_code('random_sphere', 6, 3, 1.0, seed),
            make_code('random_sphere', 8, 5, 1.0, seed),
    ):
        results.append(scaling_invariance_check(code, 10_000, seed))

    results.append(wedge_frequency_check(equilateral, samples, seed))
    results.extend(pyramid_vs_cone_check(equilateral, 1.0, samples, seed, threads=threads))

    rng = stream(seed, STREAM_GEOMETRY, _SUITE_CODES)
    pyramid_samples = max(1, samples // 10)
    for index in range(RANDOM_CIRCLE_CODES):
        code = circle_code(_random_circle_angles(rng, 3 + index % 2), 1.0)
        for sigma in (0.5, 1.0):
            results.extend(pyramid_vs_cone_check(code, sigma, pyramid_samples, seed + index, threads=threads))

    for M in (2, 3, 4):
        code = circle_code(_random_circle_angles(rng, M), 1.0)
        results.append(cone_floor_check(code, 1.0, samples, seed, threads))
    for N in (2, 4, 8):
        results.append(halfspace_tightness_check(N, 1.0, samples, seed, threads))

    lift_shots = max(1, samples // 10)
    for index in range(RANDOM_CIRCLE_CODES):
        radii = np.ones(3)
        radii[index % 3] = rng.uniform(0.2, 0.9)
        code = circle_code(_random_circle_angles(rng, 3), 1.0, radii=radii)
        lift = lift_code_to_sphere_2d(code, 1.0, lift_shots, seed + index, threads)
        slack = STDERR_MULTIPLE * math.hypot(lift.stderr_before, lift.stderr_after)
        increase = lift.mu_after - lift.mu_before
        results.append(_check(f'lift_to_circle[{index}]', increase, slack, increase <= slack, **lift.to_dict()))
    return results


def exponents_suite(samples: int, seed: int, threads: int | None = None) -> List[CheckResult]:
    gap = 0.0
    for R in DEFAULT_RATES:
        for S_dB in DEFAULT_SNRS_DB:
            closed, cone = dual_forms(R, db_to_linear(S_dB))
            gap = max(gap, abs(closed - cone))
    results = [_check('dual_form_identity', gap, DUAL_FORM_TOL, gap < DUAL_FORM_TOL)]

    rows = exponent_ratio_table(DEFAULT_RATES, DEFAULT_SNRS_DB, threads)
    worst = max(row.ratio for row in rows)
    results.append(_check('ratio_below_one', worst, 1.0, worst < 1.0, cells=len(rows)))

    R, S, expected = RATIO_SPOT
    ratio = asymptotic_exponent(R, S) / legacy_exponent(S)
    results.append(_check('ratio_spot_value', abs(ratio - expected), 1e-3, abs(ratio - expected) <= 1e-3, ratio=ratio))

    for R, S in CONVERGENCE_POINTS:
        convergence = exponent_convergence(R, S)
        table = ConvergenceRowSerializer(convergence, many=True).data
        results.append(_check(
            f'large_n_consistency[R={R},S={S}]', convergence[-1].error, convergence[0].error,
            errors_decrease(convergence), rows=table,
        ))
    return results


def binary_cascade_oracle(n: int, snr: float = 1.0) -> float:
    """I(W; W_n) in bits for n antipodal N = 2 hops: a BSC whose crossover composes as (1 - (1 - 2p)^n) / 2."""
    p = float(ndtr(-math.sqrt(2 * snr)))
    crossover = 0.5 * (1.0 - (1.0 - 2.0 * p) ** n)
    return mutual_information(TransitionMatrix([[1 - crossover, crossover], [crossover, 1 - crossover]]))


def cascade_suite(samples: int, seed: int, threads: int | None = None) -> List[CheckResult]:
    """Antipodal N = 2, R = 0.5, unit noise: the simulated cascade against the multihop bound and the BSC oracle."""
    results = []
    for n in END_TO_END_HOPS:
        config = CascadeConfig(
            n=n, N=2, R=0.5, P0=1.0, sigmas=(1.0,) * n, sigma_floor=1.0,
            code_kind='antipodal', decoder='max_likelihood', shots=END_TO_END_SHOTS, seed=seed,
        )
        report = simulate_cascade(config, threads)
        margin = bound_margin(report)
        excess = report.mi_matrix_bits - report.theorem1_bits
        results.append(_check(
            f'bound_holds[n={n}]', excess, margin, excess <= margin,
            mi_bits=report.mi_matrix_bits, bound_bits=report.theorem1_bits, mc_error_bits=report.mc_error_bits,
        ))
        if n == ORACLE_HOPS:
            oracle = binary_cascade_oracle(n)
            gap = abs(report.mi_matrix_bits - oracle)
            results.append(_check(f'bsc_oracle[n={n}]', gap, ORACLE_TOL, gap <= ORACLE_TOL, oracle_bits=oracle))
            spot = abs(report.theorem1_bits - BOUND_SPOT)
            results.append(_check(f'bound_value[n={n}]', spot, BOUND_SPOT_TOL, spot <= BOUND_SPOT_TOL))
    return results


SUITES: Dict[str, Suite] = {
    'qfunc': qfunc_suite,
    'matrix': matrix_suite,
    'geometry': geometry_suite,
    'exponents': exponents_suite,
    'cascade': cascade_suite,
}
ALL = 'all'


def run_suite(name: str, samples: int, seed: int, threads: int | None = None) -> List[CheckResult]:
    if name == ALL:
        selected = list(SUITES)
    elif name in SUITES:
        selected = [name]
    else:
        raise CustomException(message_key="UNKNOWN_SUITE", context={'suite': name, 'choices': [*SUITES, ALL]})

    results = []
    for suite in selected:
        suite_results = SUITES[suite](samples, seed, threads)
        logger.info(
            "Suite finished",
            extra={'suite': suite, 'checks': len(suite_results), 'failed': sum(not r.passed for r in suite_results)}
        )
        results.extend(suite_results)
    return results
