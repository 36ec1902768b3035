import math
from dataclasses import asdict, dataclass

from apps.shannon_cone.types import validate_block_length
from apps.shared.exceptions.custom_exceptions import CustomException

# Slack allowed on N*R before it stops counting as an integer
RATE_INTEGRALITY_TOL = 1e-9
# Largest N*R whose cap 2^-(N R) keeps a representable apex angle in every dimension
MAX_RATE_BITS = 500

METHODS = ('quadrature', 'monte_carlo')


def validate_rate(N: int, R: float) -> int:
    """Return N*R as an int, rejecting rates for which M = 2^(N R) is not an integer >= 2."""
    if not R > 0:
        raise CustomException(message_key="RATE_NOT_INTEGRAL", context={'NR': N * R})
    NR = N * R
    bits = round(NR)
    if abs(NR - bits) > RATE_INTEGRALITY_TOL or bits < 1:
        raise CustomException(message_key="RATE_NOT_INTEGRAL", context={'NR': NR})
    if bits > MAX_RATE_BITS:
        raise CustomException(message_key="RATE_TOO_LARGE", context={'NR': NR, 'limit': MAX_RATE_BITS})
    return int(bits)


@dataclass(frozen=True)
class BoundQuery:
    """n hops of rate-R, length-N codes at signal-to-noise ratio snr = P0 / sigma_0^2."""
    n: int
    N: int
    R: float
    snr: float

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 0:
            raise CustomException(message_key="VALIDATION_ERROR", context={'errors': {'n': f"expected a hop count >= 0, got {self.n}"}})
        object.__setattr__(self, 'n', int(self.n))
        object.__setattr__(self, 'N', validate_block_length(self.N))
        validate_rate(self.N, self.R)
        if not (self.snr > 0 and math.isfinite(self.snr)):
            raise CustomException(message_key="NEGATIVE_SNR", context={'gamma': self.snr})
        object.__setattr__(self, 'R', float(self.R))
        object.__setattr__(self, 'snr', float(self.snr))

    @property
    def bits(self) -> int:
        """N*R, the information carried by one codeword."""
        return validate_rate(self.N, self.R)

    @property
    def M(self) -> int:
        return 2 ** self.bits

    @property
    def snr_db(self) -> float:
        return 10.0 * math.log10(self.snr)


@dataclass(frozen=True)
class BoundReport:
    """Everything the bound command prints for one query."""
    n: int
    N: int
    R: float
    snr: float
    snr_db: float
    M: int
    method: str
    per_hop_factor: float
    per_hop_stderr: float | None
    theorem1_bits: float
    legacy_bits: float
    epsilon: float
    e_legacy: float
    e_as: float
    ratio: float
    asymptotic_bits: float

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class ExponentRow:
    """One cell of the exponent comparison table, exponents in nats."""
    R: float
    S_dB: float
    E_as_nats: float
    E_nats: float
    ratio: float


@dataclass(frozen=True)
class ConvergenceRow:
    """Finite-length exponent at block length N against its large-N limit."""
    N: int
    finite_exponent: float
    e_as: float
    error: float
