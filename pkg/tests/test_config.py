"""Define tests for configuration management."""
from __future__ import annotations

from pathlib import Path
from typing import Any
from unittest.mock import Mock

import pytest

from tests.common import TEST_CONFIG_JSON, TEST_LEVEL
from vwrt.bracket import Backend
from vwrt.config import DEFAULT_MOVES, Command, ConfigError, RunConfig
from vwrt.const import (
    CONF_BACKEND,
    CONF_COLORS,
    CONF_COMMAND,
    CONF_CONFIG,
    CONF_FIXED,
    CONF_FORMAT,
    CONF_INPUTS,
    CONF_JOBS,
    CONF_LEVELS,
    CONF_MODE,
    CONF_MOVES,
    CONF_REPLAY,
    CONF_TOLERANCE,
    CONF_VERBOSE,
    DEFAULT_SEED,
    DEFAULT_TERM_BUDGET,
)
from vwrt.diagram.moves import MoveKind
from vwrt.helpers.output import OutputFormat
from vwrt.surface import ConstructionMode


def test_defaults(config: dict[str, Any]) -> None:
    """Test a minimal compute config.

    Args:
        config: A configuration dictionary.
    """
    run_config = RunConfig(config)
    assert run_config.command is Command.COMPUTE
    assert run_config.levels == [TEST_LEVEL]
    assert run_config.backend is Backend.EXACT
    assert run_config.output_format is OutputFormat.JSON
    assert run_config.seed == DEFAULT_SEED
    assert run_config.term_budget == DEFAULT_TERM_BUDGET
    assert run_config.jobs == 1
    assert run_config.verbose is False
    assert run_config.strict_s is False
    assert run_config.dump_colorings is False
    assert run_config.moves == [MoveKind(kind) for kind in DEFAULT_MOVES]
    assert MoveKind.R1_POSITIVE not in run_config.moves
    assert run_config.output is None
    assert run_config.colors is None
    assert run_config.mode is None
    assert run_config.replay is None


@pytest.mark.parametrize(
    "levels,expected",
    [
        ("3", [3]),
        ("3..5", [3, 4, 5]),
        (" 4 .. 4 ", [4]),
        (7, [7]),
        ([5, 3, 5], [3, 5]),
    ],
)
def test_levels(levels: Any, expected: list[int], config: dict[str, Any]) -> None:
    """Test parsing levels and level ranges.

    Args:
        levels: The raw level option.
        expected: The expanded levels.
        config: A configuration dictionary.
    """
    run_config = RunConfig(config | {CONF_LEVELS: levels})
    assert run_config.levels == expected


def test_string_options(config: dict[str, Any]) -> None:
    """Test options given as strings, as the CLI and environment provide them.

    Args:
        config: A configuration dictionary.
    """
    run_config = RunConfig(
        config
        | {
            CONF_BACKEND: "numeric",
            CONF_FORMAT: "table",
            CONF_MOVES: "R2, O1+",
            CONF_VERBOSE: "yes",
            CONF_JOBS: "3",
            CONF_TOLERANCE: "1e-6",
        }
    )
    assert run_config.backend is Backend.NUMERIC
    assert run_config.output_format is OutputFormat.TABLE
    assert run_config.moves == [MoveKind.R2, MoveKind.O1_POSITIVE]
    assert run_config.verbose is True
    assert run_config.jobs == 3
    assert run_config.tolerance == 1e-6


@pytest.mark.parametrize(
    "overrides,message",
    [
        ({CONF_INPUTS: []}, "compute requires at least one input"),
        ({CONF_LEVELS: "1"}, "level must be at least 2"),
        ({CONF_LEVELS: "5..3"}, "empty level range"),
        ({CONF_LEVELS: "three"}, "invalid level range"),
        ({CONF_BACKEND: "exakt"}, "did you mean 'exact'?"),
        ({CONF_MOVES: "R2,R7"}, "Unknown move 'R7'"),
        ({CONF_COMMAND: "compuet"}, "expected Command"),
        ({CONF_COMMAND: "cable"}, "cable requires colors"),
        (
            {CONF_COMMAND: "cable", CONF_COLORS: "1", CONF_INPUTS: ["a", "b"]},
            "cable takes exactly one input",
        ),
        ({CONF_COMMAND: "cable", CONF_COLORS: "1,-1"}, "colors must be nonnegative"),
        ({CONF_COMMAND: "construct"}, "construct requires a mode"),
        (
            {CONF_COMMAND: "construct", CONF_MODE: "split-fixed"},
            "the split-fixed mode requires a fixed knot",
        ),
        ({CONF_COMMAND: "construct", CONF_MODE: "spilt-self"}, "did you mean"),
    ],
)
def test_invalid_config(
    overrides: dict[str, Any], message: str, config: dict[str, Any]
) -> None:
    """Test invalid configurations.

    Args:
        overrides: Options replacing the valid ones.
        message: A fragment of the expected error message.
        config: A configuration dictionary.
    """
    with pytest.raises(ConfigError) as err:
        _ = RunConfig(config | overrides)
    assert message in str(err.value)


def test_commands_without_inputs() -> None:
    """Test the commands that run without diagram inputs."""
    assert RunConfig({CONF_COMMAND: "selftest"}).command is Command.SELFTEST
    run_config = RunConfig({CONF_COMMAND: "verify", CONF_REPLAY: "moves.json"})
    assert run_config.replay == "moves.json"


def test_construct_options(config: dict[str, Any]) -> None:
    """Test the options of the construct command.

    Args:
        config: A configuration dictionary.
    """
    run_config = RunConfig(
        config
        | {CONF_COMMAND: "construct", CONF_MODE: "split-fixed", CONF_FIXED: "k.json"}
    )
    assert run_config.mode is ConstructionMode.SPLIT_FIXED
    assert run_config.fixed == "k.json"


def test_config_file(config_filepath: str) -> None:
    """Test loading options from a config file.

    Args:
        config_filepath: A path to a config file.
    """
    run_config = RunConfig({CONF_COMMAND: "selftest", CONF_CONFIG: config_filepath})
    assert run_config.command is Command.COMPUTE
    assert run_config.inputs == TEST_CONFIG_JSON[CONF_INPUTS]


def test_config_file_yaml(tmp_path: Path) -> None:
    """Test loading a YAML config file.

    Args:
        tmp_path: A temporary directory.
    """
    config_file = tmp_path / "vwrt.yaml"
    config_file.write_text(
        "command: cable\ninputs:\n  - hopf.json\ncolors: [2, 1]\n", encoding="utf-8"
    )
    run_config = RunConfig({CONF_CONFIG: str(config_file)})
    assert run_config.command is Command.CABLE
    assert run_config.colors == [2, 1]


@pytest.mark.parametrize(
    "contents,message",
    [
        ("command: [", "Unable to parse config file"),
        ("- compute\n- verify\n", "Unable to parse config file"),
    ],
)
def test_config_file_unparsable(contents: str, message: str, tmp_path: Path) -> None:
    """Test config files that do not hold a mapping.

    Args:
        contents: The config file contents.
        message: A fragment of the expected error message.
        tmp_path: A temporary directory.
    """
    config_file = tmp_path / "vwrt.yaml"
    config_file.write_text(contents, encoding="utf-8")
    with pytest.raises(ConfigError) as err:
        _ = RunConfig({CONF_CONFIG: str(config_file)})
    assert message in str(err.value)


def test_config_file_missing(tmp_path: Path) -> None:
    """Test a config file that does not exist.

    Args:
        tmp_path: A temporary directory.
    """
    with pytest.raises(ConfigError) as err:
        _ = RunConfig({CONF_CONFIG: str(tmp_path / "missing.yaml")})
    assert "Unable to read config file" in str(err.value)


def test_unknown_option(caplog: Mock, config: dict[str, Any]) -> None:
    """Test that unknown options are reported with a suggestion.

    Args:
        caplog: A mock logging utility.
        config: A configuration dictionary.
    """
    _ = RunConfig(config | {"tolerence": 1e-6, "frobnicate": True})
    assert any(
        m
        for m in caplog.messages
        if "Ignoring unknown config option tolerence (did you mean tolerance?)" in m
    )
    assert any(
        m for m in caplog.messages if m == "Ignoring unknown config option frobnicate"
    )
