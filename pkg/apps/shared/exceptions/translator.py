import logging
from typing import Any, Dict, TypedDict

from apps.shared.messages import MESSAGES

logger = logging.getLogger(__name__)

FALLBACK_KEY = 'UNKNOWN_ERROR'


class MessageDetail(TypedDict):
    """A catalogue entry with its template filled in"""
    id: str
    message: str
    exit_code: int


def get_message_detail(message_key: str, context: Dict[str, Any] | None = None) -> MessageDetail:
    """
    Look ``message_key`` up and format its template with ``context``.

    Unknown keys resolve to UNKNOWN_ERROR; a context that does not fit the
    template leaves the template unformatted rather than failing a second time.
    """
    message = MESSAGES.get(message_key)
    if message is None:
        logger.warning(f"Message key not found: {message_key}")
        message = MESSAGES[FALLBACK_KEY]

    template = message["message"]
    try:
        text = template.format(**(context or {}))
    except (KeyError, ValueError, IndexError) as e:
        logger.warning(f"Message formatting failed for {message_key}: {e}")
        text = template

    return {"id": message["id"], "message": text, "exit_code": message["exit_code"]}
