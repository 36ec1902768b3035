import math
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from apps.bound_engine.types import validate_rate
from apps.info_matrix.types import TransitionMatrix
from apps.shannon_cone.types import validate_block_length
from apps.shared.exceptions.custom_exceptions import CustomException

MAX_LIKELIHOOD = 'max_likelihood'
FARTHEST_POINT = 'farthest_point'
DECODERS = (MAX_LIKELIHOOD, FARTHEST_POINT)

CODE_KINDS = ('antipodal', 'simplex', 'random_sphere', 'random_ball')

# Relative tolerance on ||c||^2 against N P0
POWER_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class SphereCode:
    """
    M codewords of length N with ||c_w||^2 <= N P0.

    ``on_sphere`` is worked out from the norms when not given; when given as
    True every codeword must sit on the power sphere.
    """
    codewords: np.ndarray
    power: float
    on_sphere: bool | None = None

    def __post_init__(self):
        words = np.array(self.codewords, dtype=float)
        if words.ndim != 2 or words.shape[0] < 2:
            raise CustomException(
                message_key="DIMENSION_MISMATCH",
                context={'expected': 'M x N codeword grid with M >= 2', 'got': list(words.shape)}
            )
        validate_block_length(words.shape[1])
        if not self.power > 0:
            raise CustomException(message_key="INVALID_POWER", context={'power': self.power})

        limit = words.shape[1] * self.power
        norms = np.einsum('ij,ij->i', words, words)
        over = np.flatnonzero(norms > limit * (1 + POWER_TOL))
        if over.size:
            index = int(over[0])
            raise CustomException(
                message_key="POWER_CONSTRAINT_VIOLATED",
                context={'index': index, 'power': float(norms[index]), 'limit': limit}
            )

        on_sphere = bool(np.all(np.abs(norms - limit) <= POWER_TOL * limit))
        if self.on_sphere and not on_sphere:
            raise CustomException(
                message_key="NOT_ON_SPHERE",
                context={'target': f"||c||^2 = {limit}"}
            )
        words.setflags(write=False)
        object.__setattr__(self, 'codewords', words)
        object.__setattr__(self, 'power', float(self.power))
        object.__setattr__(self, 'on_sphere', on_sphere)

    @property
    def M(self) -> int:
        return self.codewords.shape[0]

    @property
    def N(self) -> int:
        return self.codewords.shape[1]

    @property
    def radius(self) -> float:
        return math.sqrt(self.N * self.power)

    def with_codeword(self, index: int, codeword) -> 'SphereCode':
        words = self.codewords.copy()
        words[index] = codeword
        return SphereCode(words, self.power)


@dataclass(frozen=True)
class CascadeConfig:
    """A line network of n decode-and-forward hops sharing one codebook."""
    n: int
    N: int
    R: float
    P0: float
    sigmas: Tuple[float, ...]
    sigma_floor: float
    code_kind: str
    decoder: str
    shots: int
    seed: int

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise CustomException(message_key="EMPTY_CHAIN")
        object.__setattr__(self, 'N', validate_block_length(self.N))
        validate_rate(self.N, self.R)
        if not self.P0 > 0:
            raise CustomException(message_key="INVALID_POWER", context={'power': self.P0})
        sigmas = tuple(float(sigma) for sigma in self.sigmas)
        if len(sigmas) != self.n:
            raise CustomException(message_key="DIMENSION_MISMATCH", context={'expected': self.n, 'got': len(sigmas)})
        if not self.sigma_floor > 0 or any(not sigma >= self.sigma_floor for sigma in sigmas):
            raise CustomException(
                message_key="INVALID_NOISE_LEVEL",
                context={'sigmas': list(sigmas), 'floor': self.sigma_floor}
            )
        if self.code_kind not in CODE_KINDS:
            raise CustomException(
                message_key="VALIDATION_ERROR",
                context={'errors': {'code_kind': f"expected one of {list(CODE_KINDS)}"}}
            )
        if self.decoder not in DECODERS:
            raise CustomException(
                message_key="VALIDATION_ERROR",
                context={'errors': {'decoder': f"expected one of {list(DECODERS)}"}}
            )
        if self.shots is None or self.shots < 1:
            raise CustomException(message_key="EMPTY_SAMPLE_BUDGET", context={'samples': self.shots})
        object.__setattr__(self, 'sigmas', sigmas)
        object.__setattr__(self, 'sigma_floor', float(self.sigma_floor))

    @property
    def bits(self) -> int:
        return validate_rate(self.N, self.R)

    @property
    def M(self) -> int:
        return 2 ** self.bits

    @property
    def snr(self) -> float:
        """P0 / sigma_0^2, the SNR the multihop bound is evaluated at."""
        return self.P0 / self.sigma_floor ** 2


@dataclass
class CascadeReport:
    config: CascadeConfig
    hop_matrices: List[TransitionMatrix] = field(default_factory=list)
    beta_hats: List[float] = field(default_factory=list)
    mu_hats: List[float] = field(default_factory=list)
    mu_stderrs: List[float] = field(default_factory=list)
    mi_matrix_bits: float = 0.0
    mi_direct_bits: float = 0.0
    mc_error_bits: float = 0.0
    contraction_bits: float = 0.0
    theorem1_bits: float = 0.0
    heterogeneous_bits: float = 0.0
    slack: float = 0.0

    def flat_row(self):
        """One CSV row per run, for sweep aggregation."""
        config = self.config
        return {
            'n': config.n,
            'N': config.N,
            'R': config.R,
            'P0': config.P0,
            'sigma_floor': config.sigma_floor,
            'code_kind': config.code_kind,
            'decoder': config.decoder,
            'shots': config.shots,
            'seed': config.seed,
            'mu_hat_mean': float(np.mean(self.mu_hats)) if self.mu_hats else 0.0,
            'mi_matrix_bits': self.mi_matrix_bits,
            'mi_direct_bits': self.mi_direct_bits,
            'mc_error_bits': self.mc_error_bits,
            'contraction_bits': self.contraction_bits,
            'theorem1_bits': self.theorem1_bits,
            'heterogeneous_bits': self.heterogeneous_bits,
            'slack': self.slack,
        }
