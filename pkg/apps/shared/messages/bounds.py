from typing import Dict

from .types import MessageTemplate

BOUND_MESSAGES: Dict[str, MessageTemplate] = {
    "RATE_NOT_INTEGRAL": {
        "id": "RATE_NOT_INTEGRAL",
        "message": "N*R = {NR} must be a positive integer so that M = 2^(N*R) is an integer >= 2",
        "exit_code": 2
    },
    "RATE_TOO_LARGE": {
        "id": "RATE_TOO_LARGE",
        "message": "N*R = {NR} bits is above the supported {limit} bits per codeword",
        "exit_code": 2
    },
    "FACTOR_OUT_OF_RANGE": {
        "id": "FACTOR_OUT_OF_RANGE",
        "message": "M*Q = {mass} exceeds 1 beyond tolerance {tol}",
        "exit_code": 3
    },
    "DUAL_FORM_MISMATCH": {
        "id": "DUAL_FORM_MISMATCH",
        "message": "Asymptotic exponent forms disagree at R={R}, S={S}: closed form {closed}, cone form {cone}",
        "exit_code": 3
    },
    "INVALID_EXPONENT_ARGUMENT": {
        "id": "INVALID_EXPONENT_ARGUMENT",
        "message": "Exponent argument out of range: {reason}",
        "exit_code": 2
    },
    "EMPTY_GRID": {
        "id": "EMPTY_GRID",
        "message": "Rate and SNR lists must both be non-empty",
        "exit_code": 2
    },
    "RATIO_NOT_BELOW_ONE": {
        "id": "RATIO_NOT_BELOW_ONE",
        "message": "Exponent ratio is not below 1 at {cells}",
        "exit_code": 4
    },
}
