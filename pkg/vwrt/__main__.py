"""Define the main interface to the CLI."""
from __future__ import annotations

import argparse
import os
import sys
from typing import Any

import uvloop

from vwrt.bracket import Backend
from vwrt.config import Command
from vwrt.const import (
    CONF_BACKEND,
    CONF_COLORS,
    CONF_COMMAND,
    CONF_CONFIG,
    CONF_COUNT,
    CONF_DUMP_COLORINGS,
    CONF_FIXED,
    CONF_FORMAT,
    CONF_INPUTS,
    CONF_JOBS,
    CONF_LENGTH,
    CONF_LEVELS,
    CONF_MODE,
    CONF_MOVES,
    CONF_OUTPUT,
    CONF_REPLAY,
    CONF_SEED,
    CONF_STRICT_S,
    CONF_TERM_BUDGET,
    CONF_TOLERANCE,
    CONF_VERBOSE,
    DEFAULT_COUNT,
    DEFAULT_JOBS,
    DEFAULT_LENGTH,
    DEFAULT_LEVEL,
    DEFAULT_SEED,
    DEFAULT_TOLERANCE,
    ENV_CONFIG,
    ENV_JOBS,
    ENV_TERM_BUDGET,
    ENV_VERBOSE,
    __version__,
)
from vwrt.core import Vwrt
from vwrt.helpers.output import OutputFormat
from vwrt.surface import ConstructionMode

ENV_VAR_TO_CONF_MAP = {
    ENV_CONFIG: CONF_CONFIG,
    ENV_JOBS: CONF_JOBS,
    ENV_TERM_BUDGET: CONF_TERM_BUDGET,
    ENV_VERBOSE: CONF_VERBOSE,
}

COMMAND_HELP = {
    Command.COMPUTE: "Compute Z_K(r) of each input",
    Command.VERIFY: "Check invariance of Z_K(r) under random move sequences",
    Command.CABLE: "Write the cabling of a diagram by a coloring",
    Command.AUGMENT: "Write the augmented surface presentation of a diagram",
    Command.CONSTRUCT: "Write a 2-component link built from a knot",
    Command.SELFTEST: "Run the projector and normalization identity checks",
}


def get_env_vars() -> dict[str, str]:
    """Get environment variables.

    Returns:
        A dictionary of environment variables to config options.
    """
    env_vars = {}

    for env_var, config_option in ENV_VAR_TO_CONF_MAP.items():
        if (env_var_value := os.getenv(env_var)) is None:
            continue
        env_vars[config_option] = env_var_value

    return env_vars


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    """Add the options every command accepts."""
    parser.add_argument(
        "-c",
        "--config",
        dest=CONF_CONFIG,
        help="A path to a YAML or JSON config file",
        metavar=CONF_CONFIG,
    )
    parser.add_argument(
        "--jobs",
        dest=CONF_JOBS,
        help=f"The number of worker processes (default: {DEFAULT_JOBS})",
        metavar=CONF_JOBS,
    )
    parser.add_argument(
        "-o",
        "--output",
        dest=CONF_OUTPUT,
        help="A path to write output to (default: stdout)",
        metavar=CONF_OUTPUT,
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        dest=CONF_VERBOSE,
        help="Increase verbosity of logged output",
    )


def _add_report_arguments(parser: argparse.ArgumentParser) -> None:
    """Add the options of commands that report numbers."""
    parser.add_argument(
        "--tol",
        dest=CONF_TOLERANCE,
        help=f"The numeric tolerance (default: {DEFAULT_TOLERANCE})",
        metavar=CONF_TOLERANCE,
    )
    parser.add_argument(
        "--format",
        dest=CONF_FORMAT,
        help=(
            "The output format: "
            f"{', '.join(str(f) for f in OutputFormat)} (default: {OutputFormat.JSON})"
        ),
        metavar=CONF_FORMAT,
    )


def _add_evaluation_arguments(parser: argparse.ArgumentParser) -> None:
    """Add the options of commands that evaluate the invariant."""
    _add_report_arguments(parser)
    parser.add_argument(
        "--r",
        dest=CONF_LEVELS,
        help=f"A level or an inclusive range A..B (default: {DEFAULT_LEVEL})",
        metavar="INT|A..B",
    )
    parser.add_argument(
        "--backend",
        dest=CONF_BACKEND,
        help=(
            "The evaluation backend: "
            f"{', '.join(str(b) for b in Backend)} (default: {Backend.EXACT})"
        ),
        metavar=CONF_BACKEND,
    )
    parser.add_argument(
        "--term-budget",
        dest=CONF_TERM_BUDGET,
        help="The largest state-sum table tolerated (default: 2^30)",
        metavar=CONF_TERM_BUDGET,
    )


def get_cli_arguments(args: list[str]) -> dict[str, Any]:
    """Get CLI arguments.

    Args:
        args: A list of CLI arguments.

    Returns:
        A dictionary of parsed config options.
    """
    parser = argparse.ArgumentParser(
        argument_default=argparse.SUPPRESS,
        description=(
            "Compute and verify generalized Witten-Reshetikhin-Turaev invariants "
            "of framed virtual links"
        ),
        prog="vwrt",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subparsers = parser.add_subparsers(dest=CONF_COMMAND, required=True)

    commands = {
        command: subparsers.add_parser(
            str(command),
            argument_default=argparse.SUPPRESS,
            help=COMMAND_HELP[command],
        )
        for command in Command
    }

    for command, subparser in commands.items():
        _add_common_arguments(subparser)
        if command is not Command.SELFTEST:
            subparser.add_argument(
                CONF_INPUTS,
                default=[],
                help="Diagram files (extended-PD JSON, surface JSON or Gauss code)",
                metavar="INPUT",
                nargs="*",
            )

    for command in (Command.COMPUTE, Command.VERIFY):
        _add_evaluation_arguments(commands[command])
    _add_report_arguments(commands[Command.SELFTEST])

    compute = commands[Command.COMPUTE]
    compute.add_argument(
        "--strict-s",
        action="store_true",
        dest=CONF_STRICT_S,
        help="Fail when a surface presentation does not satisfy condition S",
    )
    compute.add_argument(
        "--dump-colorings",
        action="store_true",
        dest=CONF_DUMP_COLORINGS,
        help="Include every colored bracket in the report",
    )

    verify = commands[Command.VERIFY]
    verify.add_argument(
        "--moves",
        dest=CONF_MOVES,
        help="Comma-separated move kinds to draw from (default: all framed moves)",
        metavar=CONF_MOVES,
    )
    verify.add_argument(
        "--count",
        dest=CONF_COUNT,
        help=f"Random sequences per diagram and level (default: {DEFAULT_COUNT})",
        metavar=CONF_COUNT,
    )
    verify.add_argument(
        "--length",
        dest=CONF_LENGTH,
        help=f"Moves per random sequence (default: {DEFAULT_LENGTH})",
        metavar=CONF_LENGTH,
    )
    verify.add_argument(
        "--seed",
        dest=CONF_SEED,
        help=f"The random seed (default: {DEFAULT_SEED})",
        metavar=CONF_SEED,
    )
    verify.add_argument(
        "--replay",
        dest=CONF_REPLAY,
        help="A move script written by an earlier violation",
        metavar=CONF_REPLAY,
    )

    commands[Command.CABLE].add_argument(
        "--colors",
        dest=CONF_COLORS,
        help="Comma-separated colors, one per component (example: 2,1)",
        metavar=CONF_COLORS,
    )

    construct = commands[Command.CONSTRUCT]
    construct.add_argument(
        "--mode",
        dest=CONF_MODE,
        help=f"The construction: {', '.join(str(m) for m in ConstructionMode)}",
        metavar=CONF_MODE,
    )
    construct.add_argument(
        "--fixed",
        dest=CONF_FIXED,
        help="The second knot of the split-fixed construction",
        metavar=CONF_FIXED,
    )

    arguments = parser.parse_args(args)
    return vars(arguments)


def main() -> None:
    """Run."""
    cli_arguments = get_cli_arguments(sys.argv[1:])
    env_vars = get_env_vars()
    params: dict[str, Any] = env_vars | cli_arguments

    vwrt = Vwrt(params)
    uvloop.run(vwrt.async_start())
