from dataclasses import dataclass, field
from typing import Any, Dict


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one verification check: the statistic, what it was held against, and the verdict."""
    name: str
    statistic: float
    threshold: float
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'statistic': self.statistic,
            'threshold': self.threshold,
            'passed': self.passed,
            'details': self.details,
        }
