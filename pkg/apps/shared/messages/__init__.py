"""
Message catalogue: every CustomException key maps to an id, an English
str.format template and the process exit code of the command that raised it.
"""
from typing import Dict, List, Tuple

from .bounds import BOUND_MESSAGES
from .channel import CHANNEL_MESSAGES
from .geometry import GEOMETRY_MESSAGES
from .shared import SHARED_MESSAGES
from .types import MessageTemplate

CATALOGUES: List[Tuple[str, Dict[str, MessageTemplate]]] = [
    ("shared", SHARED_MESSAGES),
    ("geometry", GEOMETRY_MESSAGES),
    ("channel", CHANNEL_MESSAGES),
    ("bounds", BOUND_MESSAGES),
]


def _merge(catalogues) -> Dict[str, MessageTemplate]:
    """One dictionary of every catalogue; a key defined twice is a programming error."""
    merged: Dict[str, MessageTemplate] = {}
    owners: Dict[str, str] = {}
    for area, messages in catalogues:
        for key, message in messages.items():
            if key in merged:
                raise ValueError(f"Message key {key} defined in both {owners[key]} and {area}")
            merged[key] = message
            owners[key] = area
    return merged


MESSAGES: Dict[str, MessageTemplate] = _merge(CATALOGUES)

__all__ = [
    'MESSAGES',
    'MessageTemplate',
]
