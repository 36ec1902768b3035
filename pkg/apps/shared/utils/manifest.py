import logging
import time
from dataclasses import dataclass, field
from typing import Any, Dict

from django.conf import settings

logger = logging.getLogger(__name__)


@dataclass
class RunManifest:
    """What was run, with which parameters and seed, by which version, for how long."""
    command: str
    parameters: Dict[str, Any]
    seed: int | None
    tool_version: str = field(default_factory=lambda: settings.CONE_BOUND['TOOL_VERSION'])
    duration_seconds: float = 0.0
    _started: float = field(default_factory=time.perf_counter, init=False, repr=False)

    def finish(self) -> 'RunManifest':
        self.duration_seconds = round(time.perf_counter() - self._started, 6)
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            'command': self.command,
            'parameters': self.parameters,
            'seed': self.seed,
            'tool_version': self.tool_version,
            'duration_seconds': self.duration_seconds,
        }
