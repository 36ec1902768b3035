import logging
from dataclasses import dataclass

import numpy as np

from apps.shared.exceptions.custom_exceptions import CustomException

logger = logging.getLogger(__name__)

# Row-sum drift repaired silently on construction; anything larger is rejected
ROW_SUM_REPAIR_TOL = 1e-9
# Exact-arithmetic tolerance for sums and reconstructions
EXACT_TOL = 1e-12


def _as_square(entries) -> np.ndarray:
    try:
        array = np.array(entries, dtype=float)
    except (TypeError, ValueError) as exc:
        raise CustomException(message_key="NOT_STOCHASTIC", context={'reason': f"non-numeric entries ({exc})"})
    if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] < 1:
        raise CustomException(
            message_key="DIMENSION_MISMATCH",
            context={'expected': 'square M x M grid', 'got': list(array.shape)}
        )
    return array


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    """
    Row-stochastic M x M matrix: entry [j, k] is Pr[next message = k | current message = j].

    Rows within 1e-9 of summing to one are renormalized; the stored array is read-only.
    """
    entries: np.ndarray

    def __post_init__(self):
        array = _as_square(self.entries)
        if not np.all(np.isfinite(array)):
            raise CustomException(message_key="NOT_STOCHASTIC", context={'reason': "non-finite entries"})
        if np.any(array < -EXACT_TOL):
            raise CustomException(
                message_key="NOT_STOCHASTIC",
                context={'reason': f"negative entry {float(array.min())}"}
            )
        array = np.clip(array, 0.0, None)

        sums = array.sum(axis=1)
        drift = float(np.max(np.abs(sums - 1.0)))
        if drift > ROW_SUM_REPAIR_TOL:
            raise CustomException(
                message_key="NOT_STOCHASTIC",
                context={'reason': f"row sums deviate from 1 by {drift}"}
            )
        if drift > 0.0:
            array = array / sums[:, None]

        array.setflags(write=False)
        object.__setattr__(self, 'entries', array)

    @property
    def M(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def identity(cls, M: int) -> 'TransitionMatrix':
        return cls(np.eye(M))

    @classmethod
    def steady(cls, row) -> 'TransitionMatrix':
        """Matrix whose rows all equal ``row``."""
        row = np.asarray(row, dtype=float)
        return cls(np.tile(row, (row.shape[0], 1)))

    def to_list(self):
        return self.entries.tolist()

    def __eq__(self, other):
        if not isinstance(other, TransitionMatrix):
            return NotImplemented
        return self.entries.shape == other.entries.shape and bool(np.array_equal(self.entries, other.entries))

    def __hash__(self):
        return hash(self.entries.tobytes())


@dataclass(frozen=True, eq=False)
class MessageDist:
    """Distribution p_W of the source message over M symbols."""
    probs: np.ndarray

    def __post_init__(self):
        try:
            probs = np.array(self.probs, dtype=float)
        except (TypeError, ValueError) as exc:
            raise CustomException(message_key="NOT_A_DISTRIBUTION", context={'reason': str(exc)})
        if probs.ndim != 1 or probs.shape[0] < 1:
            raise CustomException(message_key="NOT_A_DISTRIBUTION", context={'reason': "expected a non-empty vector"})
        if not np.all(np.isfinite(probs)) or np.any(probs < 0):
            raise CustomException(message_key="NOT_A_DISTRIBUTION", context={'reason': "entries must be finite and >= 0"})
        total = float(probs.sum())
        if abs(total - 1.0) > ROW_SUM_REPAIR_TOL:
            raise CustomException(message_key="NOT_A_DISTRIBUTION", context={'reason': f"entries sum to {total}"})
        probs = probs / total
        probs.setflags(write=False)
        object.__setattr__(self, 'probs', probs)

    @property
    def M(self) -> int:
        return self.probs.shape[0]

    @classmethod
    def uniform(cls, M: int) -> 'MessageDist':
        return cls(np.full(M, 1.0 / M))


@dataclass(frozen=True)
class ConvexSplit:
    """P = beta * p_beta + (1 - beta) * p_bar with p_bar steady-state (all rows equal)."""
    beta: float
    p_beta: TransitionMatrix
    p_bar: TransitionMatrix

    def reconstruct(self) -> np.ndarray:
        return self.beta * self.p_beta.entries + (1.0 - self.beta) * self.p_bar.entries


@dataclass(frozen=True)
class BetaFloorReport:
    """Outcome of sampling random valid splits of one matrix against the optimal beta."""
    floor: float
    min_beta: float
    trials: int
    valid: int
    generator_failures: int
    violations: int

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self):
        return {
            'floor': self.floor,
            'min_beta': self.min_beta,
            'trials': self.trials,
            'valid': self.valid,
            'generator_failures': self.generator_failures,
            'violations': self.violations,
            'passed': self.passed,
        }
