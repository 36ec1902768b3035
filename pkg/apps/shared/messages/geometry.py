from typing import Dict

from .types import MessageTemplate

GEOMETRY_MESSAGES: Dict[str, MessageTemplate] = {
    "INVALID_BLOCK_LENGTH": {
        "id": "INVALID_BLOCK_LENGTH",
        "message": "Block length must be an integer >= 2, got {N}",
        "exit_code": 2
    },
    "ANGLE_OUT_OF_RANGE": {
        "id": "ANGLE_OUT_OF_RANGE",
        "message": "Cone angle {theta} is outside {interval}",
        "exit_code": 2
    },
    "SOLID_ANGLE_OUT_OF_RANGE": {
        "id": "SOLID_ANGLE_OUT_OF_RANGE",
        "message": "Solid angle {x} is outside [0, {omega0}] for N={N}",
        "exit_code": 2
    },
    "NEGATIVE_SNR": {
        "id": "NEGATIVE_SNR",
        "message": "Signal-to-noise ratio out of range: {gamma}",
        "exit_code": 2
    },
    "NON_CONVERGENT_QUADRATURE": {
        "id": "NON_CONVERGENT_QUADRATURE",
        "message": "Quadrature did not reach tolerance {tol}; achieved error estimate {achieved}",
        "exit_code": 3
    },
    "NOT_ON_SPHERE": {
        "id": "NOT_ON_SPHERE",
        "message": "Code must have all codewords on the power sphere (norm^2 = {target})",
        "exit_code": 2
    },
    "PLANAR_CODE_REQUIRED": {
        "id": "PLANAR_CODE_REQUIRED",
        "message": "Operation requires a code in dimension 2, got N={N}",
        "exit_code": 2
    },
    "DUPLICATE_CODEWORDS": {
        "id": "DUPLICATE_CODEWORDS",
        "message": "Codewords {first} and {second} coincide",
        "exit_code": 2
    },
    "UNSUPPORTED_DIMENSION": {
        "id": "UNSUPPORTED_DIMENSION",
        "message": "Dimension {dim} is not supported here, expected one of {choices} matching the code",
        "exit_code": 2
    },
}
