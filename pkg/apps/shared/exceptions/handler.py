"""
Class-based exception handler for management commands.

Turns project exceptions into Django ``CommandError`` instances carrying the
catalogue exit code, and logs unexpected failures with their traceback.
"""

import logging
import traceback
from typing import Dict, Any

from django.core.management.base import CommandError

from apps.shared.exceptions.custom_exceptions import CustomException
from apps.shared.exceptions.translator import get_message_detail

logger = logging.getLogger(__name__)


class CommandExceptionHandler:
    """
    Maps exceptions raised while a command runs onto exit codes.

    CustomException carries its own message key; CommandError raised by Django's
    argument parsing passes through untouched; anything else is reported as
    UNKNOWN_ERROR after being logged.
    """

    # Exception types that are expected and need no traceback in the logs
    EXPECTED_EXCEPTIONS = (
        CustomException,
        CommandError,
    )

    def handle_exception(self, exc: Exception, context: Dict[str, Any]) -> CommandError:
        """
        Main exception handling entry point.

        Args:
            exc: The exception instance
            context: Command context (command name, resolved options)

        Returns:
            CommandError to be raised by the command
        """
        if isinstance(exc, CommandError):
            return exc

        if isinstance(exc, CustomException):
            return self._handle_custom_exception(exc, context)

        return self._handle_unknown_exception(exc, context)

    @staticmethod
    def _handle_custom_exception(exc: CustomException, context: Dict[str, Any]) -> CommandError:
        detail = get_message_detail(exc.message_key, exc.context)
        logger.warning(
            f"Command failed: {detail['id']} (exit code: {detail['exit_code']})",
            extra={'command': context.get('command'), 'error_context': _jsonable(exc.context)}
        )
        return CommandError(f"{detail['id']}: {detail['message']}", returncode=detail['exit_code'])

    def _handle_unknown_exception(self, exc: Exception, context: Dict[str, Any]) -> CommandError:
        error_details = self._extract_error_details(exc, context)
        logger.error(
            f"Unexpected failure in command {error_details['command']}: {error_details['message']}",
            extra={'traceback': error_details['traceback']}
        )
        detail = get_message_detail("UNKNOWN_ERROR")
        return CommandError(
            f"{detail['id']}: {detail['message']} ({error_details['message']})",
            returncode=detail['exit_code']
        )

    @staticmethod
    def _extract_error_details(exception: Exception, context: Dict[str, Any]) -> Dict[str, Any]:
        current_traceback = traceback.format_exc()
        safe_traceback = (
            current_traceback[-4000:] if current_traceback
                                         and current_traceback.strip() != "NoneType: None"
            else "No traceback available"
        )
        return {
            'traceback': safe_traceback,
            'message': f"{exception.__class__.__name__}: {exception}",
            'command': context.get('command', 'unknown'),
        }


def _jsonable(context: Dict[str, Any]) -> Dict[str, Any]:
    """Stringify anything the JSON log formatter could choke on."""
    return {
        key: value if isinstance(value, (int, float, str, bool, type(None))) else str(value)
        for key, value in context.items()
    }


# Create handler instance
exception_handler_instance = CommandExceptionHandler()


def command_exception_handler(exc: Exception, context: Dict[str, Any]) -> CommandError:
    """Function wrapper for the class-based exception handler."""
    return exception_handler_instance.handle_exception(exc, context)
