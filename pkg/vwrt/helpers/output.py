"""Define output rendering for command results."""
from __future__ import annotations

import json
import sys
from collections.abc import Iterable, Iterator, Sequence
from contextlib import contextmanager
from enum import StrEnum
from pathlib import Path
from typing import Any, TextIO

from vwrt.util import suggest

COLUMN_SEPARATOR = "  "


class OutputFormat(StrEnum):
    """Define the output formats of result records."""

    JSON = "json"
    TABLE = "table"

    @classmethod
    def parse(cls, value: str) -> OutputFormat:
        """Parse a format name, suggesting a close match on failure.

        Args:
            value: The format name.

        Returns:
            An OutputFormat.

        Raises:
            ValueError: Raised on an unknown format.
        """
        try:
            return cls(value)
        except ValueError as err:
            raise ValueError(
                suggest(f"Unknown format {value!r}", value, [str(f) for f in cls])
            ) from err


def dump_document(data: Any) -> str:
    """Render a JSON document deterministically.

    Args:
        data: A JSON-friendly object.

    Returns:
        Indented JSON with sorted keys and a final newline.
    """
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def dump_record(data: Any) -> str:
    """Render one NDJSON line.

    Args:
        data: A JSON-friendly object.

    Returns:
        Compact JSON with sorted keys, without a newline.
    """
    return json.dumps(data, sort_keys=True, ensure_ascii=False)


def _cell(value: Any) -> str:
    """Render one table cell."""
    if isinstance(value, list) and len(value) == 2 and all(
        isinstance(part, float) for part in value
    ):
        return f"{value[0]:+.10f}{value[1]:+.10f}i"
    if isinstance(value, float):
        return f"{value:.10g}"
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def render_table(rows: Sequence[dict[str, Any]], columns: Sequence[str]) -> str:
    """Render records as an aligned text table.

    Args:
        rows: The records.
        columns: The keys to show, in order.

    Returns:
        The table text with a header line and a final newline.
    """
    cells = [[_cell(row.get(column, "")) for column in columns] for row in rows]
    widths = [
        max([len(column)] + [len(line[index]) for line in cells])
        for index, column in enumerate(columns)
    ]
    lines = [
        COLUMN_SEPARATOR.join(
            column.ljust(width) for column, width in zip(columns, widths)
        ).rstrip()
    ]
    lines.extend(
        COLUMN_SEPARATOR.join(
            cell.ljust(width) for cell, width in zip(line, widths)
        ).rstrip()
        for line in cells
    )
    return "\n".join(lines) + "\n"


def render_records(
    records: Iterable[dict[str, Any]],
    output_format: OutputFormat,
    columns: Sequence[str] = (),
) -> str:
    """Render result records in the requested format.

    Args:
        records: The records, in output order.
        output_format: The format.
        columns: The table columns (ignored for JSON).

    Returns:
        NDJSON lines or a table, ending with a newline (empty without records).
    """
    records = list(records)
    if not records:
        return ""
    if output_format is OutputFormat.TABLE:
        return render_table(records, columns or list(records[0]))
    return "".join(dump_record(record) + "\n" for record in records)


@contextmanager
def open_output(path: str | None) -> Iterator[TextIO]:
    """Open a destination for text output.

    Args:
        path: The destination file, or None for stdout.

    Yields:
        A writable text stream.
    """
    if path is None:
        yield sys.stdout
        sys.stdout.flush()
        return
    with Path(path).open("w", encoding="utf-8", newline="\n") as output:
        yield output


def write_text(text: str, path: str | None) -> None:
    """Write text to a file, or to stdout when no path is given.

    Args:
        text: The text.
        path: The destination file.
    """
    with open_output(path) as output:
        output.write(text)
