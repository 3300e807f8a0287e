"""Define tests for the schemas of written records."""
from __future__ import annotations

from typing import Any

import pytest
import voluptuous as vol

from tests.common import TEST_LEVEL
from vwrt.diagram.model import VirtualDiagram
from vwrt.diagram.moves import MoveKind, MoveSpec
from vwrt.helpers.schemas import (
    COMPUTE_RECORD_SCHEMA,
    CONDITION_S_SCHEMA,
    EMITTED_REPLAY_SCHEMA,
    VERIFY_RECORD_SCHEMA,
)
from vwrt.surface import SurfaceDiagram, check_condition_s
from vwrt.wrt import verify_invariance, z_invariant


def test_compute_record(hopf: VirtualDiagram) -> None:
    """Test that a compute record with coloring terms fits its schema.

    Args:
        hopf: The Hopf link.
    """
    report = z_invariant(hopf, TEST_LEVEL, dump_colorings=True)
    record = {"input": "hopf.json", "n": report.signature.n_of_k, **report.to_dict()}
    assert COMPUTE_RECORD_SCHEMA(record) == record


def test_verify_record(hopf: VirtualDiagram) -> None:
    """Test that a verify record and its replay script fit their schemas.

    Args:
        hopf: The Hopf link.
    """
    report = verify_invariance(hopf, TEST_LEVEL, [MoveSpec(MoveKind.O1_POSITIVE)])
    record = {"input": "hopf.json", "sequence": 0, **report.to_dict()}
    assert VERIFY_RECORD_SCHEMA(record) == record
    _ = EMITTED_REPLAY_SCHEMA(report.replay_script())


def test_condition_s_report(virtual_hopf: VirtualDiagram) -> None:
    """Test that a condition S report fits its schema.

    Args:
        virtual_hopf: The virtual Hopf link.
    """
    data = check_condition_s(SurfaceDiagram(virtual_hopf)).to_dict()
    assert CONDITION_S_SCHEMA(data) == data


@pytest.mark.parametrize(
    "schema,record",
    [
        (COMPUTE_RECORD_SCHEMA, {"input": "hopf.json", "r": 3}),
        (
            VERIFY_RECORD_SCHEMA,
            {
                "input": "hopf.json",
                "sequence": 0,
                "r": 3,
                "ok": True,
                "max_deviation": -1.0,
                "steps": [],
            },
        ),
        (CONDITION_S_SCHEMA, {"condition_s": "maybe", "classes": [], "notes": ""}),
    ],
)
def test_invalid_records(schema: vol.Schema, record: dict[str, Any]) -> None:
    """Test that malformed records are rejected.

    Args:
        schema: The schema to apply.
        record: A malformed record.
    """
    with pytest.raises(vol.Invalid):
        _ = schema(record)
