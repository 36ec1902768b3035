from typing import Dict

from .types import MessageTemplate

# Exit codes: 1 unknown, 2 invalid input, 3 numerical failure, 4 self-test failure
SHARED_MESSAGES: Dict[str, MessageTemplate] = {
    "VALIDATION_ERROR": {
        "id": "VALIDATION_ERROR",
        "message": "Invalid input data: {errors}",
        "exit_code": 2
    },
    "CONFIG_PARSE_ERROR": {
        "id": "CONFIG_PARSE_ERROR",
        "message": "Could not read configuration file {path}: {reason}",
        "exit_code": 2
    },
    "OUTPUT_WRITE_ERROR": {
        "id": "OUTPUT_WRITE_ERROR",
        "message": "Could not write output file {path}: {reason}",
        "exit_code": 2
    },
    "EMPTY_SAMPLE_BUDGET": {
        "id": "EMPTY_SAMPLE_BUDGET",
        "message": "Monte Carlo budget must be at least 1, got {samples}",
        "exit_code": 2
    },
    "UNKNOWN_SUITE": {
        "id": "UNKNOWN_SUITE",
        "message": "Unknown verification suite '{suite}', expected one of {choices}",
        "exit_code": 2
    },
    "CHECKS_FAILED": {
        "id": "CHECKS_FAILED",
        "message": "{failed} of {total} checks failed: {names}",
        "exit_code": 4
    },
    "UNKNOWN_ERROR": {
        "id": "UNKNOWN_ERROR",
        "message": "An unexpected error occurred",
        "exit_code": 1
    },
}
