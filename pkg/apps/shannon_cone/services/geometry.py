"""
Solid-angle geometry of right circular cones in N dimensions.

g(theta) is the solid angle cut out on the unit sphere by a cone of half-angle
theta. Dividing by the total solid angle Omega_0 gives a regularized incomplete
beta function of sin^2(theta) (of cos^2(theta) close to pi/2), which is what is
evaluated here; every quantity stays in [0, 1] so nothing overflows for block
lengths in the hundreds.
"""
import logging
import math

import numpy as np
from scipy.optimize import bisect
from scipy.special import betainc, betaincinv, gammaln

from apps.shannon_cone.types import SOLID_ANGLE_SLACK, validate_block_length
from apps.shared.exceptions.custom_exceptions import CustomException

logger = logging.getLogger(__name__)

ROOT_XTOL = 1e-12
ROOT_MAXITER = 200


def total_solid_angle(N: int) -> float:
    """Omega_0(N) = 2 pi^(N/2) / Gamma(N/2), computed through log-Gamma."""
    N = validate_block_length(N)
    return float(np.exp(math.log(2.0) + 0.5 * N * math.log(math.pi) - gammaln(0.5 * N)))


def _check_angle(theta: float) -> float:
    if not (0.0 <= theta <= math.pi):
        raise CustomException(
            message_key="ANGLE_OUT_OF_RANGE",
            context={'theta': theta, 'interval': '[0, pi]'}
        )
    return float(theta)


def _half_cap(theta: float, N: int) -> float:
    # solid-angle fraction of the smaller of the two caps bounded at theta
    sin2 = math.sin(theta) ** 2
    if sin2 <= 0.5:
        return 0.5 * float(betainc(0.5 * (N - 1), 0.5, sin2))
    # sin^2 rounds to 1 within ~1e-8 of pi/2; the cos^2 side keeps g strictly increasing there
    return 0.5 - 0.5 * float(betainc(0.5, 0.5 * (N - 1), math.cos(theta) ** 2))


def solid_angle_fraction(theta: float, N: int) -> float:
    """g(theta) / Omega_0(N), in [0, 1]."""
    theta = _check_angle(theta)
    N = validate_block_length(N)
    if theta == 0.0:
        return 0.0
    if theta == math.pi:
        return 1.0
    half = _half_cap(theta, N)
    return half if theta <= 0.5 * math.pi else 1.0 - half


def cap_fraction(theta: float, N: int) -> float:
    """1 - g(theta) / Omega_0(N), without cancellation when theta is close to pi."""
    theta = _check_angle(theta)
    N = validate_block_length(N)
    if theta == 0.0:
        return 1.0
    if theta == math.pi:
        return 0.0
    half = _half_cap(theta, N)
    return half if theta >= 0.5 * math.pi else 1.0 - half


def cone_solid_angle(theta0: float, N: int) -> float:
    """g(theta0): solid angle of the N-dimensional cone of half-angle theta0."""
    return total_solid_angle(N) * solid_angle_fraction(theta0, N)


def inverse_cone_angle(x: float, N: int) -> float:
    """
    Half-angle of the cone whose solid angle is x.

    Bisection on [0, pi]; g is strictly increasing so the bracket is always valid.
    Above the hemisphere the complementary cap goes through cap_apex_angle, which
    keeps precision when x is within a hair of Omega_0.
    """
    N = validate_block_length(N)
    omega0 = total_solid_angle(N)
    if not (0 <= x <= omega0 * (1 + SOLID_ANGLE_SLACK)):
        raise CustomException(
            message_key="SOLID_ANGLE_OUT_OF_RANGE",
            context={'x': x, 'omega0': omega0, 'N': N}
        )

    fraction = min(float(x) / omega0, 1.0)
    if fraction <= 0.0:
        return 0.0
    if fraction >= 1.0:
        return math.pi
    if fraction <= 0.5:
        return _solve(lambda theta: solid_angle_fraction(theta, N) - fraction)
    return math.pi - cap_apex_angle(1.0 - fraction, N)


def cap_apex_angle(cap: float, N: int) -> float:
    """
    Half-angle psi = pi - theta of the complementary cap whose fraction of the sphere is ``cap``.

    Inverts the regularized incomplete beta function directly so psi keeps its
    relative precision when it is far below the 1e-12 bisection tolerance
    (cap = 2^-64 in N = 2 puts psi near 1.7e-19).
    """
    N = validate_block_length(N)
    if cap >= 1.0:
        return math.pi
    if cap <= 0.0:
        return 0.0
    if cap > 0.5:
        return math.pi - cap_apex_angle(1.0 - cap, N)
    sin2 = float(betaincinv(0.5 * (N - 1), 0.5, 2.0 * cap))
    if sin2 <= 0.5:
        return math.asin(math.sqrt(sin2))
    cos2 = float(betaincinv(0.5, 0.5 * (N - 1), 1.0 - 2.0 * cap))
    return math.acos(math.sqrt(cos2))


def _solve(func) -> float:
    return float(bisect(func, 0.0, math.pi, xtol=ROOT_XTOL, maxiter=ROOT_MAXITER))
