"""Table emission: CSV through pandas, JSON with explicit units"""

import json
import math
from typing import Any, Dict, List, Mapping, Sequence, TextIO, Type

import pandas as pd
from pydantic import BaseModel

from onebit.schemas.results import COLUMN_UNITS

# 17 significant digits round-trip every double
FLOAT_FORMAT = "%.17g"


def rows_to_frame(rows: Sequence[BaseModel], row_type: Type[BaseModel]) -> pd.DataFrame:
    """Rows as a frame whose columns are ``row_type``'s fields, in declaration order."""
    columns = list(row_type.model_fields)
    return pd.DataFrame([row.model_dump() for row in rows], columns=columns)


def _header_value(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ",".join(_header_value(v) for v in value)
    return str(value)


def write_csv(
    stream: TextIO,
    rows: Sequence[BaseModel],
    row_type: Type[BaseModel],
    header: Mapping[str, Any],
) -> None:
    """``# key=value`` comment lines, then the table."""
    for key in sorted(header):
        stream.write(f"# {key}={_header_value(header[key])}\n")
    frame = rows_to_frame(rows, row_type)
    frame.to_csv(stream, float_format=FLOAT_FORMAT, index=False, lineterminator="\n")


def _finite_or_none(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _finite_or_none(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite_or_none(v) for v in value]
    return value


def json_document(
    command: str,
    rows: Sequence[BaseModel],
    row_type: Type[BaseModel],
    header: Mapping[str, Any],
) -> Dict[str, Any]:
    columns: List[str] = list(row_type.model_fields)
    return {
        "command": command,
        "columns": columns,
        "units": {c: COLUMN_UNITS[c] for c in columns if c in COLUMN_UNITS},
        "header": _finite_or_none({k: header[k] for k in sorted(header)}),
        "rows": [_finite_or_none(row.model_dump(mode="json")) for row in rows],
    }


def write_json(
    stream: TextIO,
    command: str,
    rows: Sequence[BaseModel],
    row_type: Type[BaseModel],
    header: Mapping[str, Any],
) -> None:
    document = json_document(command, rows, row_type, header)
    stream.write(json.dumps(document, allow_nan=False, indent=2))
    stream.write("\n")


def error_line(kind: str, message: str, **context: Any) -> str:
    """Single-line, machine-parsable error record."""
    record = {"error": kind, "message": " ".join(str(message).split())}
    record.update(_finite_or_none(context))
    return json.dumps(record, allow_nan=False, default=str)
