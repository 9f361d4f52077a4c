"""JSON, CSV and table rendering with byte-stable number formatting"""

import csv
import io
import json
import math
import sys
from enum import Enum
from typing import Any, Iterable, List, Optional, Sequence

from rich.console import Console
from rich.table import Table

from saeradial.utils import format_number


def _json_value(value: Any, indent: int) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Enum):
        return json.dumps(value.value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        # +-inf and nan are not JSON numbers
        if math.isfinite(value):
            return format_number(value)
        return json.dumps(format_number(value))
    if isinstance(value, complex):
        return _json_value({"re": value.real, "im": value.imag}, indent)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(str(key))}: {_json_value(item, indent + 1)}" for key, item in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [f"{inner}{_json_value(item, indent + 1)}" for item in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if hasattr(value, "item"):
        # numpy scalars
        return _json_value(value.item(), indent)
    raise TypeError(f"cannot serialise {type(value).__name__} to JSON")


def render_json(document: Any) -> str:
    """One UTF-8 JSON document; floats with 17 significant digits, +-inf as strings"""
    return _json_value(document, 0) + "\n"


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_number(value)
    if isinstance(value, Enum):
        return str(value.value)
    if value is None:
        return ""
    return str(value)


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Header row plus one line per row, ',' delimiter, LF line endings"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(value) for value in row])
    return buffer.getvalue()


def build_table(title: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Table:
    table = Table(title=title)
    for name in header:
        table.add_column(name)
    for row in rows:
        table.add_row(*[_cell(value) for value in row])
    return table


def render_table(title: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Plain-text rendering of a rich table (no colour codes)"""
    buffer = io.StringIO()
    console = Console(file=buffer, width=160, color_system=None, force_terminal=False)
    console.print(build_table(title, header, rows))
    return buffer.getvalue()


def rows_from_dicts(header: List[str], records: Iterable[dict]) -> List[List[Any]]:
    return [[record.get(name) for name in header] for record in records]


def write_output(text: str, path: Optional[str] = None):
    """Write to the output file, or to stdout when no path is given"""
    if path:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
