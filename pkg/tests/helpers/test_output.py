"""Define tests for output rendering."""
from __future__ import annotations

from pathlib import Path

import pytest

from vwrt.helpers.output import (
    OutputFormat,
    dump_document,
    dump_record,
    render_records,
    render_table,
    write_text,
)

TEST_RECORDS = [
    {"input": "hopf.json", "r": 3, "z": [0.7071067811865476, 0.0]},
    {"input": "unknot.json", "r": 10, "z": [1.0, -0.0]},
]


def test_dump_document() -> None:
    """Test that documents are indented with sorted keys."""
    assert dump_document({"b": 1, "a": [1, 2]}) == (
        '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
    )


def test_dump_record() -> None:
    """Test that records are compact single lines with sorted keys."""
    assert dump_record({"z": [1.0, 0.0], "input": "μ"}) == (
        '{"input": "μ", "z": [1.0, 0.0]}'
    )


def test_render_table() -> None:
    """Test rendering an aligned table."""
    assert render_table(TEST_RECORDS, ["input", "r", "z"]).splitlines() == [
        "input        r   z",
        "hopf.json    3   +0.7071067812+0.0000000000i",
        "unknot.json  10  +1.0000000000-0.0000000000i",
    ]


def test_render_records() -> None:
    """Test rendering records in each format."""
    assert render_records([], OutputFormat.TABLE) == ""
    assert render_records(TEST_RECORDS, OutputFormat.JSON).splitlines() == [
        dump_record(record) for record in TEST_RECORDS
    ]
    table = render_records(TEST_RECORDS, OutputFormat.TABLE)
    assert table.splitlines()[0].split() == ["input", "r", "z"]


def test_output_format() -> None:
    """Test parsing output formats."""
    assert OutputFormat.parse("json") is OutputFormat.JSON
    with pytest.raises(ValueError) as err:
        _ = OutputFormat.parse("yaml")
    assert "expected one of: json, table" in str(err.value)


def test_write_text(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    """Test writing to a file and to stdout.

    Args:
        capsys: A capture of stdout and stderr.
        tmp_path: A temporary directory.
    """
    output = tmp_path / "out.txt"
    write_text("line\n", str(output))
    assert output.read_text(encoding="utf-8") == "line\n"

    write_text("line\n", None)
    assert capsys.readouterr().out == "line\n"
