import math
from dataclasses import dataclass

import numpy as np

from apps.codebook_sim.types import SphereCode

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, eq=False)
class WedgeCells2D:
    """
    Farthest-point cells of a planar on-circle code, as angular intervals.

    Cell k covers [starts[k], starts[k] + widths[k]) modulo 2 pi and contains the direction
    of -c_k.
    """
    starts: np.ndarray
    widths: np.ndarray

    @property
    def M(self) -> int:
        return len(self.widths)

    def membership(self, angles) -> np.ndarray:
        """Index of the cell holding each angle."""
        angles = np.mod(np.asarray(angles, dtype=float), TWO_PI)
        offsets = np.mod(angles[..., None] - self.starts, TWO_PI)
        return np.argmax(offsets < self.widths, axis=-1)

    def to_dict(self):
        return {'starts': self.starts.tolist(), 'widths': self.widths.tolist()}


@dataclass(frozen=True)
class LiftResult:
    """A code before and after moving every interior codeword onto the power circle."""
    original: SphereCode
    lifted: SphereCode
    moved: tuple
    mu_before: float
    mu_after: float
    stderr_before: float
    stderr_after: float

    def to_dict(self):
        return {
            'original': self.original.codewords.tolist(),
            'lifted': self.lifted.codewords.tolist(),
            'moved': list(self.moved),
            'mu_before': self.mu_before,
            'mu_after': self.mu_after,
            'stderr_before': self.stderr_before,
            'stderr_after': self.stderr_after,
        }
