from typing import TypedDict


class MessageTemplate(TypedDict):
    """Structure for message templates"""
    id: str
    message: str  # str.format template, filled from the exception context
    exit_code: int
