"""Test the core application object."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any
from unittest.mock import AsyncMock, Mock, patch

import pytest

from tests.common import TEST_HOPF_Z, TEST_TOLERANCE, fixture_path
from vwrt.bracket import ComplexityGuardrail
from vwrt.const import (
    CONF_COLORS,
    CONF_COMMAND,
    CONF_COUNT,
    CONF_FIXED,
    CONF_FORMAT,
    CONF_INPUTS,
    CONF_LENGTH,
    CONF_LEVELS,
    CONF_MODE,
    CONF_MOVES,
    CONF_OUTPUT,
    CONF_REPLAY,
    CONF_STRICT_S,
    CONF_TERM_BUDGET,
    CONF_VERBOSE,
    EXIT_COMPLEXITY,
    EXIT_CONDITION_S,
    EXIT_FAILURE,
    EXIT_INVALID_INPUT,
    EXIT_INVARIANCE_VIOLATION,
    EXIT_OK,
)
from vwrt.core import (
    Vwrt,
    check_alpha,
    check_delta_mu,
    check_projector,
    check_unknot,
    exit_code_for,
    read_presentation,
)
from vwrt.diagram.codec import ParseError, parse_pd
from vwrt.diagram.isomorphism import is_isomorphic
from vwrt.diagram.model import VirtualDiagram, linking_number
from vwrt.helpers.schemas import (
    CABLE_DOCUMENT_SCHEMA,
    COMPUTE_RECORD_SCHEMA,
    SELFTEST_RECORD_SCHEMA,
    VERIFY_RECORD_SCHEMA,
)
from vwrt.surface import SurfaceDiagram, check_condition_s, parse_surface


def _read_lines(path: Path) -> list[dict[str, Any]]:
    """Read NDJSON records."""
    return [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines()]


async def _async_run_to_exit(vwrt: Vwrt) -> int:
    """Run a Vwrt object and return its exit code."""
    with pytest.raises(SystemExit) as err:
        await vwrt.async_start()
    return int(err.value.code or 0)


@pytest.mark.parametrize("verbose", ["yes"])
def test_vwrt_create(config: dict[str, Any], verbose: str) -> None:
    """Test the creation of a Vwrt object.

    Args:
        config: A configuration dictionary.
        verbose: The raw verbose option.
    """
    vwrt = Vwrt(config | {CONF_VERBOSE: verbose})
    assert vwrt.config.verbose is True
    assert vwrt.runtime.jobs == 1


@pytest.mark.parametrize("config", [{}])
def test_invalid_config(caplog: Mock, config: dict[str, Any]) -> None:
    """Test that an invalid config is caught.

    Args:
        caplog: A mock logging utility.
        config: A configuration dictionary.
    """
    with pytest.raises(SystemExit) as err:
        _ = Vwrt(config)
    assert err.value.code == EXIT_INVALID_INPUT
    assert any(m for m in caplog.messages if "required key not provided" in m)


@pytest.mark.asyncio
async def test_compute(config: dict[str, Any], tmp_path: Path) -> None:
    """Test computing Z at a range of levels.

    Args:
        config: A configuration dictionary.
        tmp_path: A temporary directory.
    """
    output = tmp_path / "z.ndjson"
    vwrt = Vwrt(config | {CONF_LEVELS: "3..4", CONF_OUTPUT: str(output)})
    assert await _async_run_to_exit(vwrt) == EXIT_OK

    records = _read_lines(output)
    assert [record["r"] for record in records] == [3, 4]
    for record in records:
        assert record["input"] == config[CONF_INPUTS][0]
        assert record["n"] == 0
        assert record["z"] == pytest.approx([1.0, 0.0], abs=TEST_TOLERANCE)
        assert COMPUTE_RECORD_SCHEMA(record) == record


@pytest.mark.asyncio
async def test_compute_table(config: dict[str, Any], tmp_path: Path) -> None:
    """Test computing Z with table output.

    Args:
        config: A configuration dictionary.
        tmp_path: A temporary directory.
    """
    output = tmp_path / "z.txt"
    vwrt = Vwrt(
        config
        | {
            CONF_INPUTS: [fixture_path("hopf.json")],
            CONF_FORMAT: "table",
            CONF_OUTPUT: str(output),
        }
    )
    assert await _async_run_to_exit(vwrt) == EXIT_OK

    header, row = output.read_text(encoding="utf-8").splitlines()
    assert header.split() == ["input", "r", "components", "n", "z"]
    assert f"{TEST_HOPF_Z:+.10f}" in row


@pytest.mark.asyncio
async def test_compute_guardrail(
    caplog: Mock, config: dict[str, Any], tmp_path: Path
) -> None:
    """Test that an oversized state sum stops the run.

    Args:
        caplog: A mock logging utility.
        config: A configuration dictionary.
        tmp_path: A temporary directory.
    """
    vwrt = Vwrt(
        config
        | {
            CONF_INPUTS: [fixture_path("trefoil.gauss")],
            CONF_TERM_BUDGET: 1,
            CONF_OUTPUT: str(tmp_path / "z.ndjson"),
        }
    )
    assert await _async_run_to_exit(vwrt) == EXIT_COMPLEXITY
    assert any(m for m in caplog.messages if "over the budget of 1" in m)


@pytest.mark.asyncio
async def test_compute_strict_condition_s(
    config: dict[str, Any], tmp_path: Path
) -> None:
    """Test that a surface presentation failing condition S can be fatal.

    Args:
        config: A configuration dictionary.
        tmp_path: A temporary directory.
    """
    vwrt = Vwrt(
        config
        | {
            CONF_INPUTS: [fixture_path("torus_surface.json")],
            CONF_STRICT_S: True,
            CONF_OUTPUT: str(tmp_path / "z.ndjson"),
        }
    )
    assert await _async_run_to_exit(vwrt) == EXIT_CONDITION_S


@pytest.mark.asyncio
async def test_compute_invalid_input(
    caplog: Mock, config: dict[str, Any], tmp_path: Path
) -> None:
    """Test an unparsable input file.

    Args:
        caplog: A mock logging utility.
        config: A configuration dictionary.
        tmp_path: A temporary directory.
    """
    bad_input = tmp_path / "bad.json"
    bad_input.write_text("{", encoding="utf-8")
    vwrt = Vwrt(config | {CONF_INPUTS: [str(bad_input)]})
    assert await _async_run_to_exit(vwrt) == EXIT_INVALID_INPUT
    assert any(m for m in caplog.messages if str(bad_input) in m)


@pytest.mark.asyncio
async def test_compute_missing_input(config: dict[str, Any], tmp_path: Path) -> None:
    """Test an input file that does not exist.

    Args:
        config: A configuration dictionary.
        tmp_path: A temporary directory.
    """
    vwrt = Vwrt(config | {CONF_INPUTS: [str(tmp_path / "missing.json")]})
    assert await _async_run_to_exit(vwrt) == EXIT_FAILURE


@pytest.mark.asyncio
async def test_verify(config: dict[str, Any], tmp_path: Path) -> None:
    """Test fuzzing framed moves.

    Args:
        config: A configuration dictionary.
        tmp_path: A temporary directory.
    """
    output = tmp_path / "verify.ndjson"
    vwrt = Vwrt(
        config
        | {
            CONF_COMMAND: "verify",
            CONF_INPUTS: [fixture_path("hopf.json")],
            CONF_MOVES: "R2,V1,O1-",
            CONF_COUNT: 2,
            CONF_LENGTH: 2,
            CONF_OUTPUT: str(output),
        }
    )
    assert await _async_run_to_exit(vwrt) == EXIT_OK

    records = _read_lines(output)
    assert [record["sequence"] for record in records] == [0, 1]
    for record in records:
        assert record["ok"] is True
        assert "replay" not in record
        assert len(record["steps"]) == 2
        assert VERIFY_RECORD_SCHEMA(record) == record


@pytest.mark.asyncio
async def test_verify_violation_and_replay(
    caplog: Mock, config: dict[str, Any], tmp_path: Path
) -> None:
    """Test that a violation is reported with a replayable move script.

    Args:
        caplog: A mock logging utility.
        config: A configuration dictionary.
        tmp_path: A temporary directory.
    """
    output = tmp_path / "verify.ndjson"
    with patch("vwrt.wrt._alpha_power", return_value=1 + 0j):
        vwrt = Vwrt(
            config
            | {
                CONF_COMMAND: "verify",
                CONF_MOVES: "O1+",
                CONF_COUNT: 1,
                CONF_OUTPUT: str(output),
            }
        )
        assert await _async_run_to_exit(vwrt) == EXIT_INVARIANCE_VIOLATION
        assert any(m for m in caplog.messages if "Invariance violation" in m)

        (record,) = _read_lines(output)
        assert record["ok"] is False
        assert record["max_deviation"] == pytest.approx(0.7653668647)
        _ = VERIFY_RECORD_SCHEMA(record)

        script = tmp_path / "replay.json"
        script.write_text(json.dumps(record["replay"]), encoding="utf-8")
        vwrt = Vwrt(
            {
                CONF_COMMAND: "verify",
                CONF_REPLAY: str(script),
                CONF_OUTPUT: str(output),
            }
        )
        assert await _async_run_to_exit(vwrt) == EXIT_INVARIANCE_VIOLATION

    (replayed,) = _read_lines(output)
    assert replayed["input"] == str(script)
    assert replayed["steps"] == record["steps"]
    _ = VERIFY_RECORD_SCHEMA(replayed)


@pytest.mark.asyncio
async def test_cable(config: dict[str, Any], tmp_path: Path) -> None:
    """Test writing a cabled diagram.

    Args:
        config: A configuration dictionary.
        tmp_path: A temporary directory.
    """
    output = tmp_path / "cabled.json"
    vwrt = Vwrt(
        config
        | {
            CONF_COMMAND: "cable",
            CONF_INPUTS: [fixture_path("hopf.json")],
            CONF_COLORS: "2,1",
            CONF_OUTPUT: str(output),
        }
    )
    assert await _async_run_to_exit(vwrt) == EXIT_OK

    document = json.loads(output.read_text(encoding="utf-8"))
    assert document["colors"] == [2, 1]
    _ = CABLE_DOCUMENT_SCHEMA(document)
    assert document["components"] == 3
    assert len(document["crossings"]) == 4
    assert [(box["component"], box["width"]) for box in document["jw_boxes"]] == [
        (0, 2),
        (1, 1),
    ]


@pytest.mark.asyncio
async def test_cable_color_mismatch(config: dict[str, Any], tmp_path: Path) -> None:
    """Test cabling with the wrong number of colors.

    Args:
        config: A configuration dictionary.
        tmp_path: A temporary directory.
    """
    vwrt = Vwrt(
        config
        | {
            CONF_COMMAND: "cable",
            CONF_COLORS: "1,1",
            CONF_OUTPUT: str(tmp_path / "cabled.json"),
        }
    )
    assert await _async_run_to_exit(vwrt) == EXIT_INVALID_INPUT


@pytest.mark.asyncio
async def test_augment(config: dict[str, Any], tmp_path: Path) -> None:
    """Test writing the augmented surface presentation of a virtual link.

    Args:
        config: A configuration dictionary.
        tmp_path: A temporary directory.
    """
    output = tmp_path / "augmented.json"
    vwrt = Vwrt(
        config
        | {
            CONF_COMMAND: "augment",
            CONF_INPUTS: [fixture_path("virtual_hopf.json")],
            CONF_OUTPUT: str(output),
        }
    )
    assert await _async_run_to_exit(vwrt) == EXIT_OK

    augmented = parse_surface(output.read_text(encoding="utf-8"))
    assert augmented.genus == 1
    assert augmented.base.n_components == 4
    assert check_condition_s(augmented).passed


@pytest.mark.asyncio
@pytest.mark.parametrize(
    "mode,extra,components,linking",
    [
        ("pierced-unknot", {}, 2, 1),
        ("split-fixed", {CONF_FIXED: fixture_path("trefoil.gauss")}, 2, 0),
    ],
)
async def test_construct(  # pylint: disable=too-many-arguments
    components: int,
    config: dict[str, Any],
    extra: dict[str, Any],
    linking: int,
    mode: str,
    tmp_path: Path,
) -> None:
    """Test writing a 2-component link built from a knot.

    Args:
        components: The expected component count.
        config: A configuration dictionary.
        extra: Additional options.
        linking: The expected linking number.
        mode: The construction mode.
        tmp_path: A temporary directory.
    """
    output = tmp_path / "link.json"
    vwrt = Vwrt(
        config
        | {CONF_COMMAND: "construct", CONF_MODE: mode, CONF_OUTPUT: str(output)}
        | extra
    )
    assert await _async_run_to_exit(vwrt) == EXIT_OK

    link = parse_pd(output.read_text(encoding="utf-8"))
    assert link.n_components == components
    assert linking_number(link, 0, 1) == linking


@pytest.mark.asyncio
async def test_construct_pierced_is_hopf(
    config: dict[str, Any], hopf: VirtualDiagram, tmp_path: Path
) -> None:
    """Test that piercing the unknot gives the Hopf link.

    Args:
        config: A configuration dictionary.
        hopf: The positive Hopf link.
        tmp_path: A temporary directory.
    """
    output = tmp_path / "link.json"
    vwrt = Vwrt(
        config
        | {
            CONF_COMMAND: "construct",
            CONF_MODE: "pierced-unknot",
            CONF_OUTPUT: str(output),
        }
    )
    assert await _async_run_to_exit(vwrt) == EXIT_OK
    assert is_isomorphic(parse_pd(output.read_text(encoding="utf-8")), hopf)


@pytest.mark.asyncio
async def test_selftest(tmp_path: Path) -> None:
    """Test the built-in identity checks over a reduced range.

    Args:
        tmp_path: A temporary directory.
    """
    output = tmp_path / "selftest.ndjson"
    with patch("vwrt.core.SELFTEST_JW_MAX", 2), patch(
        "vwrt.core.SELFTEST_DELTA_MU_LEVELS", range(3, 5)
    ), patch("vwrt.core.SELFTEST_Z_LEVELS", range(3, 5)):
        vwrt = Vwrt({CONF_COMMAND: "selftest", CONF_OUTPUT: str(output)})
        assert await _async_run_to_exit(vwrt) == EXIT_OK

    records = _read_lines(output)
    assert [record["check"] for record in records] == [
        "jones-wenzl",
        "jones-wenzl",
        "jones-wenzl",
        "delta-mu",
        "delta-mu",
        "alpha",
        "alpha",
        "unknot",
        "unknot",
    ]
    assert all(record["passed"] for record in records)
    for record in records:
        assert SELFTEST_RECORD_SCHEMA(record) == record


@pytest.mark.asyncio
async def test_selftest_failure(caplog: Mock, tmp_path: Path) -> None:
    """Test that a failing check sets the exit code.

    Args:
        caplog: A mock logging utility.
        tmp_path: A temporary directory.
    """
    failure = {"check": "unknot", "parameter": 3, "passed": False, "deviation": 1.0}
    with patch("vwrt.core.SELFTEST_JW_MAX", 0), patch(
        "vwrt.core.SELFTEST_DELTA_MU_LEVELS", range(0)
    ), patch("vwrt.core.SELFTEST_Z_LEVELS", range(3, 4)), patch(
        "vwrt.core.check_unknot", return_value=failure
    ):
        vwrt = Vwrt(
            {CONF_COMMAND: "selftest", CONF_OUTPUT: str(tmp_path / "selftest")}
        )
        assert await _async_run_to_exit(vwrt) == EXIT_FAILURE
    assert any(m for m in caplog.messages if "Self-test unknot failed at 3" in m)


@pytest.mark.asyncio
async def test_unhandled_runtime_error(caplog: Mock, config: dict[str, Any]) -> None:
    """Test an unhandled runtime error.

    Args:
        caplog: A mock logging utility.
        config: A configuration dictionary.
    """
    vwrt = Vwrt(config)
    with patch.object(
        vwrt,
        "async_run",
        AsyncMock(side_effect=Exception("Something horrible and unexpected happened")),
    ):
        assert await _async_run_to_exit(vwrt) == EXIT_FAILURE
        assert any(
            m
            for m in caplog.messages
            if "Something horrible and unexpected happened" in m
        )


@pytest.mark.parametrize(
    "err,code",
    [
        (ComplexityGuardrail("too big"), EXIT_COMPLEXITY),
        (ParseError("bad"), EXIT_INVALID_INPUT),
        (ValueError("other"), EXIT_FAILURE),
    ],
)
def test_exit_code_for(err: Exception, code: int) -> None:
    """Test mapping errors to exit codes.

    Args:
        err: An error.
        code: The expected exit code.
    """
    assert exit_code_for(err) == code


def test_read_presentation(tmp_path: Path, trefoil: VirtualDiagram) -> None:
    """Test reading each input format.

    Args:
        tmp_path: A temporary directory.
        trefoil: The right-handed trefoil.
    """
    assert read_presentation(fixture_path("trefoil.gauss")) == trefoil
    assert isinstance(read_presentation(fixture_path("hopf.json")), VirtualDiagram)
    assert isinstance(
        read_presentation(fixture_path("torus_surface.json")), SurfaceDiagram
    )

    bad_input = tmp_path / "bad.gauss"
    bad_input.write_text("O1+U2+", encoding="utf-8")
    with pytest.raises(ParseError) as err:
        _ = read_presentation(str(bad_input))
    assert str(err.value).startswith(f"{bad_input}: ")


def test_identity_checks() -> None:
    """Test the individual self-test checks."""
    assert check_projector(3, 7)["passed"] is True
    assert check_delta_mu(5, TEST_TOLERANCE)["passed"] is True
    assert check_alpha(4, TEST_TOLERANCE)["passed"] is True
    unknot_check = check_unknot(3, TEST_TOLERANCE)
    assert unknot_check["passed"] is True
    assert unknot_check["deviation"] == pytest.approx(0.0, abs=TEST_TOLERANCE)
