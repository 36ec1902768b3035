"""
Matrix persistence.

CSV layout: a header row ``M,<M>`` followed by M comma-separated rows, row-major.
JSON layout: see TransitionMatrixSerializer.
"""
import csv
import io
import json
import logging

from apps.info_matrix.serializers import TransitionMatrixSerializer
from apps.info_matrix.types import TransitionMatrix
from apps.shared.exceptions.custom_exceptions import CustomException

logger = logging.getLogger(__name__)

# Digits that round-trip a float64 exactly
CSV_FLOAT_FORMAT = '{:.17g}'


def matrix_to_csv(P: TransitionMatrix) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(['M', P.M])
    for row in P.entries:
        writer.writerow([CSV_FLOAT_FORMAT.format(value) for value in row])
    return buffer.getvalue()


def matrix_from_csv(text: str) -> TransitionMatrix:
    rows = [row for row in csv.reader(io.StringIO(text)) if row]
    if not rows or len(rows[0]) != 2 or rows[0][0].strip() != 'M':
        raise CustomException(message_key="VALIDATION_ERROR", context={'errors': "missing 'M,<size>' header row"})
    try:
        M = int(rows[0][1])
        entries = [[float(cell) for cell in row] for row in rows[1:]]
    except ValueError as exc:
        raise CustomException(message_key="VALIDATION_ERROR", context={'errors': str(exc)})
    if len(entries) != M or any(len(row) != M for row in entries):
        raise CustomException(
            message_key="DIMENSION_MISMATCH",
            context={'expected': f"{M} x {M}", 'got': f"{len(entries)} rows of {[len(row) for row in entries]}"}
        )
    return TransitionMatrix(entries)


def matrix_to_json(P: TransitionMatrix) -> str:
    return json.dumps(TransitionMatrixSerializer(P).data)


def matrix_from_json(payload) -> TransitionMatrix:
    """Accepts a JSON string or an already parsed dict."""
    if isinstance(payload, (str, bytes)):
        try:
            payload = json.loads(payload)
        except json.JSONDecodeError as exc:
            raise CustomException(message_key="VALIDATION_ERROR", context={'errors': str(exc)})
    serializer = TransitionMatrixSerializer(data=payload)
    if not serializer.is_valid():
        raise CustomException(message_key="VALIDATION_ERROR", context={'errors': serializer.errors})
    return serializer.save()
