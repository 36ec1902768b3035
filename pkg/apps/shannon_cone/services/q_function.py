"""
Shannon's cone probability Q(x, N, gamma).

With Z_1..Z_N i.i.d. standard normal, a = sqrt(N gamma) and r = ||(Z_2..Z_N)||,
the displacement angle is Phi = acot((a + Z_1) / r) with range [0, pi], and

    Q(x, N, gamma) = Pr[g(Phi) >= x] = Pr[Phi >= theta_x],  theta_x = g^-1(x).

Phi >= theta  <=>  Z_1 <= r cot(theta) - a, so conditioning on r (chi with N-1
degrees of freedom) reduces Q to a one-dimensional integral of the normal CDF.
"""
import logging
import math
import warnings

import numpy as np
from django.conf import settings
from scipy.integrate import IntegrationWarning, quad
from scipy.optimize import minimize_scalar
from scipy.special import gammaln, log_ndtr, ndtr, xlogy

from apps.shannon_cone.services.geometry import cap_apex_angle, inverse_cone_angle
from apps.shannon_cone.types import ConeQuery, McEstimate, validate_block_length
from apps.shared.exceptions.custom_exceptions import CustomException
from apps.shared.utils.parallel import ordered_map
from apps.shared.utils.random_streams import STREAM_CONE, chunks, stream

logger = logging.getLogger(__name__)

# In the stretched variable the log-integrand has curvature <= -1, so +-15 around its peak holds all but e^-112 of the mass
PEAK_HALF_WIDTH = 15.0
QUAD_EPSREL = 1e-12
QUAD_LIMIT = 200


def q_halfspace(N: int, gamma: float) -> float:
    """Q(Omega_0 / 2, N, gamma) = Pr[Phi >= pi/2] = StdNormalCDF(-sqrt(N gamma))."""
    N = validate_block_length(N)
    if not gamma >= 0:
        raise CustomException(message_key="NEGATIVE_SNR", context={'gamma': gamma})
    return float(ndtr(-math.sqrt(N * gamma)))


def displacement_angle(z1: np.ndarray, r: np.ndarray, offset: float) -> np.ndarray:
    """Phi for given Z_1 and r = sqrt(sum_{l>=2} Z_l^2); Phi := 0 where r == 0."""
    z1 = np.asarray(z1, dtype=float)
    r = np.asarray(r, dtype=float)
    return np.where(r > 0, np.arctan2(r, offset + z1), 0.0)


def angle_cot(theta: float) -> float:
    """cot(theta) on [0, pi], with +inf at 0 and -inf at pi."""
    if theta <= 0.0:
        return math.inf
    if theta >= math.pi:
        return -math.inf
    return math.cos(theta) / math.sin(theta)


def cap_cot(cap: float, N: int) -> float:
    """cot(theta) for the cone whose complementary cap is ``cap``, taken from the cap's own apex angle."""
    psi = cap_apex_angle(cap, N)
    return -angle_cot(psi)


class _ConeIntegrand:
    """
    log of chi_{N-1}(r) * StdNormalCDF(r cot(theta) - a) in the stretched variable u = r * scale.

    For cot < 0 the normal factor alone has curvature below -(2/pi) cot^2 in r,
    so the mass sits in a window about 1/|cot| wide; stretching by
    scale = sqrt(1 + (2/pi) cot^2) brings it back to unit width.
    """

    def __init__(self, N: int, cot: float, gamma: float):
        self.k = N - 1
        self.cot = cot
        self.offset = math.sqrt(N * gamma)
        self.scale = math.hypot(1.0, math.sqrt(2.0 / math.pi) * cot) if cot < 0 else 1.0
        self.log_norm = (
            (1.0 - 0.5 * self.k) * math.log(2.0) - float(gammaln(0.5 * self.k)) - math.log(self.scale)
        )

    def log_value(self, u: float) -> float:
        r = u / self.scale
        log_chi = self.log_norm + float(xlogy(self.k - 1, r)) - 0.5 * r * r
        return log_chi + float(log_ndtr(r * self.cot - self.offset))

    def peak(self) -> float:
        if self.cot < 0:
            # the normal factor only pulls the chi mode sqrt(k - 1) towards zero
            upper = math.sqrt(self.k) + 2 * PEAK_HALF_WIDTH
        else:
            upper = math.sqrt(self.k) + self.offset + 2 * PEAK_HALF_WIDTH
        result = minimize_scalar(
            lambda u: -self.log_value(u),
            bounds=(0.0, upper),
            method='bounded',
            options={'xatol': 1e-10},
        )
        return float(result.x)


def _integrate(N: int, gamma: float, cot: float):
    """Return (log Q, relative error estimate) for a finite cot(theta)."""
    integrand = _ConeIntegrand(N, cot, gamma)
    centre = integrand.peak()
    log_peak = integrand.log_value(centre)
    lower = max(0.0, centre - PEAK_HALF_WIDTH)
    upper = centre + PEAK_HALF_WIDTH
    points = [centre] if lower < centre < upper else None

    with warnings.catch_warnings():
        warnings.simplefilter('ignore', IntegrationWarning)
        mass, error = quad(
            lambda u: math.exp(integrand.log_value(u) - log_peak),
            lower, upper,
            points=points,
            epsabs=0.0,
            epsrel=QUAD_EPSREL,
            limit=QUAD_LIMIT,
        )

    if not mass > 0:
        raise CustomException(
            message_key="NON_CONVERGENT_QUADRATURE",
            context={'tol': QUAD_EPSREL, 'achieved': error}
        )
    logger.debug(
        "Cone quadrature",
        extra={'N': N, 'cot': cot, 'gamma': gamma, 'scale': integrand.scale, 'log_peak': log_peak, 'mass': mass}
    )
    return log_peak + math.log(mass), error / mass


def _q_at_cot(N: int, gamma: float, cot: float, tol: float | None) -> float:
    if tol is None:
        tol = settings.CONE_BOUND['QUAD_TOL']
    if cot == math.inf:
        return 1.0
    if cot == -math.inf:
        return 0.0

    log_q, relative_error = _integrate(N, gamma, cot)
    value = math.exp(log_q)
    achieved = value * relative_error
    if achieved > tol:
        raise CustomException(
            message_key="NON_CONVERGENT_QUADRATURE",
            context={'tol': tol, 'achieved': achieved}
        )
    return min(max(value, 0.0), 1.0)


def _log_q_at_cot(N: int, gamma: float, cot: float, rtol: float) -> float:
    if cot == math.inf:
        return 0.0
    if cot == -math.inf:
        return -math.inf

    log_q, relative_error = _integrate(N, gamma, cot)
    if relative_error > rtol:
        raise CustomException(
            message_key="NON_CONVERGENT_QUADRATURE",
            context={'tol': rtol, 'achieved': relative_error}
        )
    return min(log_q, 0.0)


def _check_cap(cap: float, N: int, gamma: float) -> int:
    N = validate_block_length(N)
    if not gamma >= 0:
        raise CustomException(message_key="NEGATIVE_SNR", context={'gamma': gamma})
    if not 0.0 <= cap <= 1.0:
        raise CustomException(
            message_key="SOLID_ANGLE_OUT_OF_RANGE",
            context={'x': f"(1 - {cap}) * Omega_0", 'omega0': 'Omega_0', 'N': N}
        )
    return N


def q_quadrature(query: ConeQuery, tol: float | None = None) -> float:
    """Q(x, N, gamma) by one-dimensional quadrature, absolute error <= tol."""
    return _q_at_cot(query.N, query.gamma, angle_cot(inverse_cone_angle(query.x, query.N)), tol)


def log_q_quadrature(query: ConeQuery, rtol: float = 1e-8) -> float:
    """ln Q(x, N, gamma), accurate in relative terms even when Q is astronomically small."""
    return _log_q_at_cot(query.N, query.gamma, angle_cot(inverse_cone_angle(query.x, query.N)), rtol)


def q_complement_quadrature(cap: float, N: int, gamma: float, tol: float | None = None) -> float:
    """
    Q((1 - cap) * Omega_0, N, gamma).

    Takes the complementary fraction directly so that caps far below machine
    epsilon (x = (M - 1)/M * Omega_0 with M = 2^64, say) keep their meaning.
    """
    N = _check_cap(cap, N, gamma)
    return _q_at_cot(N, float(gamma), cap_cot(cap, N), tol)


def log_q_complement_quadrature(cap: float, N: int, gamma: float, rtol: float = 1e-8) -> float:
    """ln Q((1 - cap) * Omega_0, N, gamma)."""
    N = _check_cap(cap, N, gamma)
    return _log_q_at_cot(N, float(gamma), cap_cot(cap, N), rtol)


def _estimate_at_cot(
        N: int,
        gamma: float,
        cot: float,
        samples: int,
        seed: int,
        threads: int | None,
) -> McEstimate:
    if samples is None or samples < 1:
        raise CustomException(message_key="EMPTY_SAMPLE_BUDGET", context={'samples': samples})

    degrees = N - 1
    offset = math.sqrt(N * gamma)

    def count_chunk(chunk):
        index, length = chunk
        rng = stream(seed, STREAM_CONE, index)
        z1 = rng.standard_normal(length)
        r = np.sqrt(rng.chisquare(degrees, length))
        if cot == math.inf:
            return length
        if cot == -math.inf:
            return 0
        # Phi >= theta  <=>  a + Z_1 <= r cot(theta), with Phi := 0 when r == 0
        return int(np.count_nonzero((r > 0) & (offset + z1 <= r * cot)))

    hits = sum(ordered_map(count_chunk, list(chunks(samples)), threads))
    value = hits / samples
    stderr = math.sqrt(value * (1.0 - value) / samples)
    logger.info(
        "Cone Monte Carlo",
        extra={'N': N, 'cot': cot, 'gamma': gamma, 'samples': samples, 'seed': seed, 'value': value}
    )
    return McEstimate(value=value, stderr=stderr, samples=samples, seed=seed)


def q_monte_carlo(query: ConeQuery, samples: int, seed: int, threads: int | None = None) -> McEstimate:
    """
    Monte Carlo estimate of Q(x, N, gamma).

    The draws depend only on (seed, chunk index), never on x, gamma or the
    thread count, so estimates for different gamma share their random numbers
    and the estimate is pathwise non-increasing in gamma.
    """
    cot = angle_cot(inverse_cone_angle(query.x, query.N))
    return _estimate_at_cot(query.N, query.gamma, cot, samples, seed, threads)


def q_complement_monte_carlo(
        cap: float,
        N: int,
        gamma: float,
        samples: int,
        seed: int,
        threads: int | None = None,
) -> McEstimate:
    """Monte Carlo estimate of Q((1 - cap) * Omega_0, N, gamma)."""
    N = _check_cap(cap, N, gamma)
    return _estimate_at_cot(N, float(gamma), cap_cot(cap, N), samples, seed, threads)
