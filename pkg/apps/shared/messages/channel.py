from typing import Dict

from .types import MessageTemplate

CHANNEL_MESSAGES: Dict[str, MessageTemplate] = {
    "INVALID_POWER": {
        "id": "INVALID_POWER",
        "message": "Codeword power P0 must be greater than 0, got {power}",
        "exit_code": 2
    },
    "NOT_STOCHASTIC": {
        "id": "NOT_STOCHASTIC",
        "message": "Matrix is not row-stochastic: {reason}",
        "exit_code": 3
    },
    "NOT_A_DISTRIBUTION": {
        "id": "NOT_A_DISTRIBUTION",
        "message": "Message distribution is invalid: {reason}",
        "exit_code": 2
    },
    "DIMENSION_MISMATCH": {
        "id": "DIMENSION_MISMATCH",
        "message": "Dimension mismatch: expected {expected}, got {got}",
        "exit_code": 2
    },
    "EMPTY_CHAIN": {
        "id": "EMPTY_CHAIN",
        "message": "A cascade needs at least one hop matrix",
        "exit_code": 2
    },
    "CONTRACTION_VIOLATED": {
        "id": "CONTRACTION_VIOLATED",
        "message": "Mutual information {mi} exceeds the contraction bound {bound}",
        "exit_code": 4
    },
    "INCOMPATIBLE_CODE": {
        "id": "INCOMPATIBLE_CODE",
        "message": "Code kind '{kind}' cannot be built with M={M}, N={N}: {reason}",
        "exit_code": 2
    },
    "POWER_CONSTRAINT_VIOLATED": {
        "id": "POWER_CONSTRAINT_VIOLATED",
        "message": "Codeword {index} has power {power} above N*P0 = {limit}",
        "exit_code": 2
    },
    "INVALID_NOISE_LEVEL": {
        "id": "INVALID_NOISE_LEVEL",
        "message": "Noise levels must satisfy sigma_i >= sigma_0 > 0, got {sigmas} with floor {floor}",
        "exit_code": 2
    },
    "BOUND_VIOLATED": {
        "id": "BOUND_VIOLATED",
        "message": "Estimated mutual information {mi} bits exceeds the bound {bound} bits beyond the Monte Carlo margin {margin}",
        "exit_code": 4
    },
}
