"""
Farthest-point Voronoi cells in the plane.

For a code on a circle the cell of c_k, the set of observations farther from
c_k than from every other codeword, is a wedge with apex at the origin centred
on -c_k. Its width is the mean of the two angular gaps around c_k. For codes
with interior codewords the cell is a general convex polygon, handled as an
intersection of half-planes.
"""
import itertools
import logging
import math
from typing import List

import numpy as np

from apps.codebook_sim.services.channel import estimate_hop_matrix, mu_hat, mu_hat_stderr
from apps.codebook_sim.types import FARTHEST_POINT, POWER_TOL, SphereCode
from apps.shared.exceptions.custom_exceptions import CustomException
from apps.voronoi_verify.types import TWO_PI, LiftResult, WedgeCells2D

logger = logging.getLogger(__name__)

DUPLICATE_TOL = 1e-12
FEASIBILITY_TOL = 1e-9


def require_planar(code: SphereCode) -> None:
    if code.N != 2:
        raise CustomException(message_key="PLANAR_CODE_REQUIRED", context={'N': code.N})


def require_distinct(code: SphereCode) -> None:
    for first, second in itertools.combinations(range(code.M), 2):
        if np.linalg.norm(code.codewords[first] - code.codewords[second]) <= DUPLICATE_TOL * max(code.radius, 1.0):
            raise CustomException(message_key="DUPLICATE_CODEWORDS", context={'first': first, 'second': second})


def require_on_sphere(code: SphereCode) -> None:
    if not code.on_sphere:
        raise CustomException(message_key="NOT_ON_SPHERE", context={'target': code.N * code.power})


def cell_solid_angles_2d(code: SphereCode) -> WedgeCells2D:
    require_planar(code)
    require_on_sphere(code)
    require_distinct(code)

    angles = np.mod(np.arctan2(code.codewords[:, 1], code.codewords[:, 0]), TWO_PI)
    order = np.argsort(angles, kind='stable')
    sorted_angles = angles[order]
    gaps_next = np.mod(np.roll(sorted_angles, -1) - sorted_angles, TWO_PI)
    gaps_prev = np.roll(gaps_next, 1)

    widths = np.empty(code.M)
    starts = np.empty(code.M)
    widths[order] = (gaps_prev + gaps_next) / 2.0
    # nearest-angle cell of c_k, turned half a circle
    starts[order] = np.mod(sorted_angles - gaps_prev / 2.0 + math.pi, TWO_PI)
    return WedgeCells2D(starts=starts, widths=widths)


def farthest_cell_halfplanes(code: SphereCode, k: int):
    """(A, b) with the cell of c_k equal to {y : A y >= b}."""
    others = np.delete(np.arange(code.M), k)
    c = code.codewords
    A = 2.0 * (c[others] - c[k])
    b = np.einsum('ij,ij->i', c[others], c[others]) - float(c[k] @ c[k])
    return A, b


def nearest_cell_point(code: SphereCode, k: int) -> np.ndarray | None:
    """
    Point of the farthest-point cell of c_k nearest to c_k, or None for an empty cell.

    The nearest point of a convex polygon lies on its boundary: either the
    projection onto one edge line or a vertex. Every feasible candidate is tried.
    """
    A, b = farthest_cell_halfplanes(code, k)
    point = code.codewords[k]
    scale = max(1.0, float(np.max(np.abs(b))), code.radius ** 2)

    def feasible(y):
        return bool(np.all(A @ y >= b - FEASIBILITY_TOL * scale))

    candidates = []
    for a_j, b_j in zip(A, b):
        norm2 = float(a_j @ a_j)
        candidates.append(point + (b_j - float(a_j @ point)) / norm2 * a_j)
    for i, j in itertools.combinations(range(len(b)), 2):
        system = A[[i, j]]
        if abs(np.linalg.det(system)) > 1e-12 * scale:
            candidates.append(np.linalg.solve(system, b[[i, j]]))

    feasible_points = [y for y in candidates if feasible(y)]
    if not feasible_points:
        return None
    return min(feasible_points, key=lambda y: float(np.sum((y - point) ** 2)))


def _push_to_circle(point: np.ndarray, direction: np.ndarray, radius: float) -> np.ndarray:
    direction = direction / np.linalg.norm(direction)
    along = float(point @ direction)
    t = -along + math.sqrt(along ** 2 - float(point @ point) + radius ** 2)
    return point + t * direction


def lift_once(code: SphereCode, k: int) -> SphereCode:
    """Move interior codeword k away from its cell until it reaches the power circle."""
    point = code.codewords[k]
    z = nearest_cell_point(code, k)
    if z is None or np.allclose(z, point):
        # empty cell: any direction works, go radially
        direction = point if np.linalg.norm(point) > 0 else np.array([1.0, 0.0])
    else:
        direction = point - z
    lifted = _push_to_circle(point, direction, code.radius)
    lifted = lifted * (code.radius / np.linalg.norm(lifted))
    logger.debug("Codeword lifted", extra={'index': k, 'empty_cell': z is None})
    return code.with_codeword(k, lifted)


def interior_indices(code: SphereCode) -> List[int]:
    norms = np.einsum('ij,ij->i', code.codewords, code.codewords)
    limit = code.N * code.power
    return [int(k) for k in np.flatnonzero(norms < limit * (1 - POWER_TOL))]


def lift_code_to_sphere_2d(
        code: SphereCode,
        sigma: float,
        shots: int,
        seed: int,
        threads: int | None = None,
) -> LiftResult:
    """
    Lift every interior codeword of a planar code onto the power circle, one at a
    time, recomputing cells after each move. mu under the farthest-point rule is
    estimated before and after with the same noise.
    """
    require_planar(code)
    require_distinct(code)

    moved = interior_indices(code)
    lifted = code
    for k in moved:
        lifted = lift_once(lifted, k)

    before = estimate_hop_matrix(code, FARTHEST_POINT, sigma, shots, seed, threads=threads)
    after = before if not moved else estimate_hop_matrix(lifted, FARTHEST_POINT, sigma, shots, seed, threads=threads)
    return LiftResult(
        original=code,
        lifted=lifted,
        moved=tuple(moved),
        mu_before=mu_hat(before),
        mu_after=mu_hat(after),
        stderr_before=mu_hat_stderr(before, shots),
        stderr_after=mu_hat_stderr(after, shots),
    )
