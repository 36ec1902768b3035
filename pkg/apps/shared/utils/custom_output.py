import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO, Union

from rest_framework.renderers import JSONRenderer

from apps.shared.exceptions.custom_exceptions import CustomException
from apps.shared.utils.manifest import RunManifest

logger = logging.getLogger(__name__)

FORMATS = ('table', 'json', 'csv')

Payload = Union[Dict[str, Any], List[Dict[str, Any]]]


def default_format(stream: TextIO) -> str:
    """Human-readable table on a terminal, JSON when piped."""
    isatty = getattr(stream, 'isatty', None)
    return 'table' if isatty is not None and isatty() else 'json'


class CustomOutput:
    """Render command results as JSON, CSV or a plain table, and write them out"""

    @staticmethod
    def render(data: Payload, fmt: str, columns: Optional[Sequence[str]] = None) -> str:
        """
        Render a result or a list of result rows.

        Args:
            data: Serialized result (dict) or rows (list of dicts)
            fmt: One of FORMATS
            columns: Column order for csv/table; defaults to the keys of the first row

        Returns:
            Text ending with a newline
        """
        if fmt == 'json':
            body = JSONRenderer().render(data, renderer_context={'indent': 2})
            return body.decode('utf-8') + '\n'

        rows = data if isinstance(data, list) else [data]
        if columns is None:
            columns = list(rows[0].keys()) if rows else []

        if fmt == 'csv':
            return CustomOutput._render_csv(rows, columns)
        return CustomOutput._render_table(data, rows, columns)

    @staticmethod
    def _cell(value: Any) -> str:
        if isinstance(value, (list, dict)):
            return json.dumps(value, separators=(',', ':'))
        if value is None:
            return ''
        return str(value)

    @staticmethod
    def _render_csv(rows: List[Dict[str, Any]], columns: Sequence[str]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(columns)
        for row in rows:
            writer.writerow([CustomOutput._cell(row.get(column)) for column in columns])
        return buffer.getvalue()

    @staticmethod
    def _render_table(data: Payload, rows: List[Dict[str, Any]], columns: Sequence[str]) -> str:
        if isinstance(data, dict):
            # key / value listing for a single report
            width = max((len(key) for key in columns), default=0)
            lines = [f"{key.ljust(width)}  {CustomOutput._cell(data.get(key))}" for key in columns]
            return '\n'.join(lines) + '\n'

        cells = [[CustomOutput._cell(row.get(column)) for column in columns] for row in rows]
        widths = [
            max([len(column)] + [len(line[i]) for line in cells])
            for i, column in enumerate(columns)
        ]
        lines = ['  '.join(column.rjust(widths[i]) for i, column in enumerate(columns))]
        lines.extend('  '.join(value.rjust(widths[i]) for i, value in enumerate(line)) for line in cells)
        return '\n'.join(lines) + '\n'

    @staticmethod
    def emit(
            text: str,
            manifest: RunManifest,
            stdout: TextIO = None,
            out: Optional[str] = None,
    ) -> None:
        """
        Write the primary artifact and its manifest.

        With ``out`` the artifact goes to that file and the manifest next to it as
        ``<out>.manifest.json``; otherwise the artifact goes to stdout and the
        manifest to the log. The manifest is never mixed into the artifact.
        """
        manifest.finish()
        if out:
            path = Path(out)
            try:
                path.write_text(text, encoding='utf-8')
                manifest_body = JSONRenderer().render(manifest.to_dict(), renderer_context={'indent': 2})
                Path(f"{out}.manifest.json").write_bytes(manifest_body + b'\n')
            except OSError as exc:
                raise CustomException(
                    message_key="OUTPUT_WRITE_ERROR",
                    context={'path': str(path), 'reason': exc.strerror or str(exc)}
                )
        else:
            (stdout or sys.stdout).write(text)

        logger.info("Run manifest", extra={'manifest': manifest.to_dict()})
