"""Test the main entrypoint."""
from __future__ import annotations

import os
from unittest.mock import patch

import pytest

from vwrt.__main__ import get_cli_arguments, get_env_vars, main
from vwrt.const import (
    CONF_BACKEND,
    CONF_COLORS,
    CONF_COMMAND,
    CONF_INPUTS,
    CONF_JOBS,
    CONF_LEVELS,
    CONF_MOVES,
    CONF_SEED,
    CONF_STRICT_S,
    CONF_TERM_BUDGET,
    CONF_VERBOSE,
    ENV_JOBS,
    ENV_TERM_BUDGET,
    ENV_VERBOSE,
)


@pytest.mark.parametrize(
    "args,expected",
    [
        (
            ["compute", "hopf.json", "--r", "3..5", "--backend", "numeric"],
            {
                CONF_COMMAND: "compute",
                CONF_INPUTS: ["hopf.json"],
                CONF_LEVELS: "3..5",
                CONF_BACKEND: "numeric",
            },
        ),
        (
            ["compute", "a.json", "b.gauss", "--strict-s", "-v"],
            {
                CONF_COMMAND: "compute",
                CONF_INPUTS: ["a.json", "b.gauss"],
                CONF_STRICT_S: True,
                CONF_VERBOSE: True,
            },
        ),
        (
            ["verify", "hopf.json", "--moves", "R2,O1+", "--seed", "7"],
            {
                CONF_COMMAND: "verify",
                CONF_INPUTS: ["hopf.json"],
                CONF_MOVES: "R2,O1+",
                CONF_SEED: "7",
            },
        ),
        (
            ["cable", "hopf.json", "--colors", "2,1", "--jobs", "4"],
            {
                CONF_COMMAND: "cable",
                CONF_INPUTS: ["hopf.json"],
                CONF_COLORS: "2,1",
                CONF_JOBS: "4",
            },
        ),
        (["selftest"], {CONF_COMMAND: "selftest"}),
    ],
)
def test_get_cli_arguments(args: list[str], expected: dict[str, object]) -> None:
    """Test getting all set CLI arguments.

    Args:
        args: The CLI arguments.
        expected: The parsed config options.
    """
    assert get_cli_arguments(args) == expected


@pytest.mark.parametrize(
    "args",
    [
        [],
        ["compute", "--colors", "2,1"],
        ["selftest", "hopf.json"],
    ],
)
def test_invalid_cli_arguments(args: list[str]) -> None:
    """Test CLI arguments that do not parse.

    Args:
        args: The CLI arguments.
    """
    with pytest.raises(SystemExit):
        _ = get_cli_arguments(args)


def test_get_env_vars() -> None:
    """Test getting all set environment variables."""
    os.environ[ENV_VERBOSE] = "TRUE"
    os.environ[ENV_JOBS] = "2"
    os.environ[ENV_TERM_BUDGET] = "1000"
    env_vars = get_env_vars()
    assert env_vars == {
        CONF_JOBS: "2",
        CONF_TERM_BUDGET: "1000",
        CONF_VERBOSE: "TRUE",
    }
    os.environ.pop(ENV_VERBOSE)
    os.environ.pop(ENV_JOBS)
    os.environ.pop(ENV_TERM_BUDGET)


def test_main() -> None:
    """Test the main entrypoint.

    This is effectively a quick sanity check to ensure that the CLI doesn't blow up.
    """
    with patch("sys.argv", ["vwrt", "selftest", "--format", "table"]), patch(
        "vwrt.core.Vwrt.async_start"
    ):
        main()
