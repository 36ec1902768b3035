"""
Shared plumbing for the project's management commands.

Subclasses implement ``run(**options)`` and return nothing; every exception is
routed through the command exception handler so the process exits with the
catalogue exit code.
"""
import logging
from typing import Any, Dict, Optional, Sequence

from django.conf import settings
from django.core.management.base import BaseCommand

from apps.shared.exceptions.custom_exceptions import CustomException
from apps.shared.exceptions.handler import command_exception_handler
from apps.shared.utils.custom_output import FORMATS, CustomOutput, default_format
from apps.shared.utils.manifest import RunManifest

logger = logging.getLogger(__name__)


class ConeBoundCommand(BaseCommand):
    command_name: str = ''

    def add_seed_arguments(self, parser) -> None:
        parser.add_argument('--seed', type=int, default=None, help="Run seed (default: CONE_BOUND_SEED)")
        parser.add_argument('--threads', type=int, default=None, help="Worker cap; never changes results")

    def add_output_arguments(self, parser, formats: Sequence[str] = FORMATS) -> None:
        parser.add_argument('--format', choices=list(formats), default=None, dest='fmt')
        parser.add_argument('--out', default=None, help="Write the result here and the manifest next to it")

    def handle(self, *args, **options):
        try:
            self.run(**options)
        except Exception as exc:
            raise command_exception_handler(exc, {'command': self.command_name, 'options': options})

    def run(self, **options) -> None:
        raise NotImplementedError

    @staticmethod
    def resolve_seed(seed: Optional[int]) -> int:
        return settings.CONE_BOUND['DEFAULT_SEED'] if seed is None else seed

    @staticmethod
    def validated(serializer_class, data: Dict[str, Any]):
        """Instance built by ``serializer_class`` from ``data``, or VALIDATION_ERROR."""
        serializer = serializer_class(data=data)
        if serializer.is_valid():
            return serializer.save()
        raise CustomException(message_key="VALIDATION_ERROR", context={'errors': serializer.errors})

    def output_format(self, fmt: Optional[str], out: Optional[str]) -> str:
        if fmt:
            return fmt
        # files are machine-read
        return 'json' if out else default_format(self.stdout)

    def emit(
            self,
            data,
            manifest: RunManifest,
            fmt: Optional[str],
            out: Optional[str],
            columns: Optional[Sequence[str]] = None,
    ) -> None:
        self.emit_text(CustomOutput.render(data, self.output_format(fmt, out), columns), manifest, out)

    def emit_text(self, text: str, manifest: RunManifest, out: Optional[str]) -> None:
        CustomOutput.emit(text, manifest, stdout=self.stdout, out=out)
