from dataclasses import dataclass

from apps.shared.exceptions.custom_exceptions import CustomException

# Relative slack allowed on x above Omega_0 before a query is rejected
SOLID_ANGLE_SLACK = 1e-12


def validate_block_length(N) -> int:
    """Block length as a plain int, rejecting anything below 2 or non-integral."""
    if isinstance(N, bool):
        raise CustomException(message_key="INVALID_BLOCK_LENGTH", context={'N': N})
    try:
        value = int(N)
    except (TypeError, ValueError):
        raise CustomException(message_key="INVALID_BLOCK_LENGTH", context={'N': N})
    if value != N or value < 2:
        raise CustomException(message_key="INVALID_BLOCK_LENGTH", context={'N': N})
    return value


@dataclass(frozen=True)
class ConeQuery:
    """
    Arguments of Q(x, N, gamma): the probability that noise pushes an on-sphere
    signal out of the cone of solid angle x centred on its direction.
    """
    x: float
    N: int
    gamma: float

    def __post_init__(self):
        # local import: geometry imports this module for validate_block_length
        from apps.shannon_cone.services.geometry import total_solid_angle

        object.__setattr__(self, 'N', validate_block_length(self.N))
        if not self.gamma >= 0:
            raise CustomException(message_key="NEGATIVE_SNR", context={'gamma': self.gamma})

        omega0 = total_solid_angle(self.N)
        if not (0 <= self.x <= omega0 * (1 + SOLID_ANGLE_SLACK)):
            raise CustomException(
                message_key="SOLID_ANGLE_OUT_OF_RANGE",
                context={'x': self.x, 'omega0': omega0, 'N': self.N}
            )
        object.__setattr__(self, 'x', float(min(self.x, omega0)))
        object.__setattr__(self, 'gamma', float(self.gamma))


@dataclass(frozen=True)
class McEstimate:
    """Indicator-average Monte Carlo estimate with its binomial standard error."""
    value: float
    stderr: float
    samples: int
    seed: int

    def to_dict(self):
        return {'value': self.value, 'stderr': self.stderr, 'samples': self.samples, 'seed': self.seed}
