"""
Error exponents, all in nats.

legacy_exponent is the exponent of the earlier multihop bound, E(S).
shannon_exponent is Shannon's cone-angle exponent E_L(theta): Q decays like
exp(-N E_L(theta)) for a cone of half-angle theta. The asymptotic exponent of
the per-hop term M Q((M-1)/M Omega_0, N, S) follows by evaluating E_L at
theta = pi - arcsin 2^-R and paying R log 2 for the factor M; the same value has
a closed form in R and S, and both are computed as a transcription check.
"""
import logging
import math
from typing import Iterable, List, Sequence, Tuple

from apps.bound_engine.types import ConvergenceRow, ExponentRow, validate_rate
from apps.shannon_cone.services.geometry import inverse_cone_angle
from apps.shannon_cone.services.q_function import log_q_complement_quadrature
from apps.shared.exceptions.custom_exceptions import CustomException
from apps.shared.utils.parallel import ordered_map

logger = logging.getLogger(__name__)

DUAL_FORM_TOL = 1e-9
CONVERGENCE_BLOCK_LENGTHS = (16, 32, 64)


def _invalid(reason: str) -> CustomException:
    return CustomException(message_key="INVALID_EXPONENT_ARGUMENT", context={'reason': reason})


def db_to_linear(S_dB: float) -> float:
    if not math.isfinite(S_dB):
        raise _invalid(f"S_dB must be finite, got {S_dB}")
    return 10.0 ** (S_dB / 10.0)


def linear_to_db(S: float) -> float:
    return 10.0 * math.log10(S)


def legacy_exponent(S: float) -> float:
    """E(S) = ((S+2) + sqrt((S+2)^2 - 4)) / 4 + 1/2 log((S+2) + sqrt((S+2)^2 - 4))."""
    if not (S >= 0 and math.isfinite(S)):
        raise _invalid(f"S must be >= 0, got {S}")
    # (S+2)^2 - 4 = S (S + 4), without cancellation at small S
    root = math.sqrt(S * (S + 4.0))
    return ((S + 2.0) + root) / 4.0 + 0.5 * math.log((S + 2.0) + root)


def _cone_exponent_trig(sin_theta: float, cos_theta: float, S: float) -> float:
    sqrt_s = math.sqrt(S)
    G = 0.5 * (sqrt_s * cos_theta + math.sqrt(4.0 + S * cos_theta ** 2))
    return S / 2.0 - 0.5 * sqrt_s * G * cos_theta - math.log(G * sin_theta)


def shannon_exponent(theta: float, S: float) -> float:
    """E_L(theta) = S/2 - 1/2 sqrt(S) G cos(theta) - log(G sin(theta)), G = (sqrt(S) cos + sqrt(4 + S cos^2)) / 2."""
    if not 0.0 < theta < math.pi:
        raise _invalid(f"theta must lie strictly inside (0, pi), got {theta}")
    if not (S > 0 and math.isfinite(S)):
        raise _invalid(f"S must be > 0, got {S}")
    return _cone_exponent_trig(math.sin(theta), math.cos(theta), S)


def cone_exponent(x: float, N: int, S: float) -> float:
    """E_L at the half-angle of the N-dimensional cone of solid angle x."""
    return shannon_exponent(inverse_cone_angle(x, N), S)


def _closed_form(R: float, S: float) -> float:
    u = 4.0 ** R
    v = math.expm1(2.0 * R * math.log(2.0))
    root = math.sqrt(1.0 + 4.0 * u / (v * S))
    first = S / (4.0 * u) * ((u + 1.0) + v * root)
    log_term = 0.5 * math.log(u + 0.5 * S * v * (root + 1.0))
    return first + log_term - R * math.log(2.0)


def dual_forms(R: float, S: float) -> Tuple[float, float]:
    """(closed form, E_L(pi - arcsin 2^-R) - R log 2) for E_as(R, S)."""
    if not (R > 0 and math.isfinite(R)):
        raise _invalid(f"R must be > 0, got {R}")
    if not (S > 0 and math.isfinite(S)):
        raise _invalid(f"S must be > 0, got {S}")

    sin_theta = 2.0 ** -R
    cos_theta = -math.sqrt(-math.expm1(-2.0 * R * math.log(2.0)))
    return _closed_form(R, S), _cone_exponent_trig(sin_theta, cos_theta, S) - R * math.log(2.0)


def asymptotic_exponent(R: float, S: float) -> float:
    """
    E_as(R, S), the large-N exponent of M Q((M-1)/M Omega_0, N, S).

    Both forms are evaluated and must agree to 1e-9.
    """
    closed, cone = dual_forms(R, S)

    if not abs(closed - cone) < DUAL_FORM_TOL:
        raise CustomException(
            message_key="DUAL_FORM_MISMATCH",
            context={'R': R, 'S': S, 'closed': closed, 'cone': cone}
        )
    return closed


def finite_length_exponent(N: int, R: float, S: float) -> float:
    """-(1/N) log(M Q((M-1)/M Omega_0, N, S)) at finite N, by quadrature."""
    bits = validate_rate(N, R)
    log_q = log_q_complement_quadrature(2.0 ** -bits, N, S)
    return -(bits * math.log(2.0) + log_q) / N


def exponent_convergence(R: float, S: float, Ns: Iterable[int] = CONVERGENCE_BLOCK_LENGTHS) -> List[ConvergenceRow]:
    e_as = asymptotic_exponent(R, S)
    rows = []
    for N in Ns:
        finite = finite_length_exponent(N, R, S)
        rows.append(ConvergenceRow(N=N, finite_exponent=finite, e_as=e_as, error=abs(finite - e_as)))
    return rows


def errors_decrease(rows: Sequence[ConvergenceRow]) -> bool:
    return all(later.error < earlier.error for earlier, later in zip(rows, rows[1:]))


def exponent_ratio_table(
        R_list: Sequence[float],
        S_list_dB: Sequence[float],
        threads: int | None = None,
) -> List[ExponentRow]:
    """
    Rows (R, S_dB, E_as, E, E_as / E) for every rate and SNR, rates outermost.

    Cells are computed on worker threads; row order always follows the inputs.
    """
    if not R_list or not S_list_dB:
        raise CustomException(message_key="EMPTY_GRID")

    cells = [(float(R), float(S_dB)) for R in R_list for S_dB in S_list_dB]

    def evaluate(cell):
        R, S_dB = cell
        S = db_to_linear(S_dB)
        e_as = asymptotic_exponent(R, S)
        e_legacy = legacy_exponent(S)
        return ExponentRow(R=R, S_dB=S_dB, E_as_nats=e_as, E_nats=e_legacy, ratio=e_as / e_legacy)

    rows = ordered_map(evaluate, cells, threads)
    logger.info("Exponent table", extra={'rates': len(R_list), 'snrs': len(S_list_dB), 'rows': len(rows)})
    return rows


def cells_not_below_one(rows: Sequence[ExponentRow]) -> List[ExponentRow]:
    return [row for row in rows if not row.ratio < 1.0]
