import logging
import math
from typing import Sequence

import numpy as np

from apps.codebook_sim.types import CODE_KINDS, SphereCode
from apps.shannon_cone.types import validate_block_length
from apps.shared.exceptions.custom_exceptions import CustomException
from apps.shared.utils.random_streams import STREAM_CODE, stream

logger = logging.getLogger(__name__)


def _incompatible(kind: str, M: int, N: int, reason: str) -> CustomException:
    return CustomException(
        message_key="INCOMPATIBLE_CODE",
        context={'kind': kind, 'M': M, 'N': N, 'reason': reason}
    )


def _to_sphere(rows: np.ndarray, radius: float) -> np.ndarray:
    return rows * (radius / np.linalg.norm(rows, axis=1, keepdims=True))


def _simplex(M: int, N: int) -> np.ndarray:
    """Vertices of a centred regular simplex, in the first M-1 coordinates of R^N."""
    centred = np.eye(M) - np.full((M, M), 1.0 / M)
    _, _, basis = np.linalg.svd(centred)
    coordinates = centred @ basis[:M - 1].T
    return np.hstack([coordinates, np.zeros((M, N - (M - 1)))])


def make_code(kind: str, M: int, N: int, P0: float, seed: int | None = None) -> SphereCode:
    """
    Build a codebook of M codewords of length N under power P0.

    antipodal: +-sqrt(N P0) e_1, M = 2 only.
    simplex: a regular simplex on the power sphere, M <= N + 1.
    random_sphere: i.i.d. Gaussian rows projected onto the power sphere.
    random_ball: random_sphere rows pulled inside by a U^(1/N) radius factor.
    """
    N = validate_block_length(N)
    if kind not in CODE_KINDS:
        raise _incompatible(kind, M, N, f"unknown kind, expected one of {list(CODE_KINDS)}")
    if M < 2:
        raise _incompatible(kind, M, N, "at least two codewords are needed")
    radius = math.sqrt(N * P0) if P0 > 0 else 0.0

    if kind == 'antipodal':
        if M != 2:
            raise _incompatible(kind, M, N, "antipodal codes have exactly two codewords")
        rows = np.zeros((2, N))
        rows[0, 0], rows[1, 0] = radius, -radius
        return SphereCode(rows, P0)

    if kind == 'simplex':
        if M > N + 1:
            raise _incompatible(kind, M, N, "a regular simplex needs M <= N + 1")
        return SphereCode(_to_sphere(_simplex(M, N), radius), P0)

    if seed is None:
        raise _incompatible(kind, M, N, "random codes need a seed")
    rng = stream(seed, STREAM_CODE)
    rows = _to_sphere(rng.standard_normal((M, N)), radius)
    if kind == 'random_ball':
        # open interval keeps every codeword strictly inside
        shrink = (1.0 - rng.random(M)) ** (1.0 / N)
        rows = rows * np.minimum(shrink, np.nextafter(1.0, 0.0))[:, None]
    logger.debug("Random code drawn", extra={'kind': kind, 'M': M, 'N': N, 'seed': seed})
    return SphereCode(rows, P0)


def circle_code(angles: Sequence[float], P0: float, radii: Sequence[float] | None = None) -> SphereCode:
    """
    Planar code with codeword k at angle angles[k].

    ``radii`` are fractions of the power-circle radius sqrt(2 P0), default 1.
    """
    angles = np.asarray(angles, dtype=float)
    radii = np.ones_like(angles) if radii is None else np.asarray(radii, dtype=float)
    if radii.shape != angles.shape:
        raise CustomException(
            message_key="DIMENSION_MISMATCH",
            context={'expected': len(angles), 'got': len(radii)}
        )
    scale = math.sqrt(2.0 * P0) * radii
    return SphereCode(np.column_stack([scale * np.cos(angles), scale * np.sin(angles)]), P0)
