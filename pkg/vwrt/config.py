"""Define a configuration management module."""
from __future__ import annotations

from enum import StrEnum
from typing import Any, cast

import voluptuous as vol
from ruamel.yaml import YAML
from ruamel.yaml.error import YAMLError

import vwrt.helpers.config_validation as cv
from vwrt.bracket import Backend
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
    DEFAULT_TERM_BUDGET,
    DEFAULT_TOLERANCE,
    LOGGER,
)
from vwrt.diagram.moves import MoveKind
from vwrt.errors import VwrtError
from vwrt.helpers.output import OutputFormat
from vwrt.surface import ConstructionMode
from vwrt.util import closest_match

DEFAULT_MOVES = [str(kind) for kind in MoveKind if kind.is_framed]


class Command(StrEnum):
    """Define the CLI commands."""

    COMPUTE = "compute"
    VERIFY = "verify"
    CABLE = "cable"
    AUGMENT = "augment"
    CONSTRUCT = "construct"
    SELFTEST = "selftest"


DIAGRAM_COMMANDS = (Command.CABLE, Command.AUGMENT, Command.CONSTRUCT)


def _validate_command_options(config: dict[str, Any]) -> dict[str, Any]:
    """Check the options each command needs.

    Args:
        config: The schema-validated config.

    Returns:
        The unchanged config.

    Raises:
        Invalid: Raises when a command lacks a required option.
    """
    command = config[CONF_COMMAND]
    inputs = config[CONF_INPUTS]

    if command is Command.SELFTEST:
        return config

    if command is Command.VERIFY and CONF_REPLAY in config:
        return config

    if not inputs:
        raise vol.Invalid(f"{command} requires at least one input", path=[CONF_INPUTS])

    if command in DIAGRAM_COMMANDS and len(inputs) != 1:
        raise vol.Invalid(
            f"{command} takes exactly one input (got {len(inputs)})",
            path=[CONF_INPUTS],
        )

    if command is Command.CABLE and CONF_COLORS not in config:
        raise vol.Invalid("cable requires colors", path=[CONF_COLORS])

    if command is Command.CONSTRUCT:
        if CONF_MODE not in config:
            raise vol.Invalid("construct requires a mode", path=[CONF_MODE])
        if config[CONF_MODE] is ConstructionMode.SPLIT_FIXED and not config.get(
            CONF_FIXED
        ):
            raise vol.Invalid(
                "the split-fixed mode requires a fixed knot", path=[CONF_FIXED]
            )

    return config


RUN_CONFIG_SCHEMA = vol.All(
    vol.Schema(
        {
            vol.Required(CONF_COMMAND): vol.Coerce(Command),
            vol.Optional(CONF_INPUTS, default=[]): [str],
            vol.Optional(CONF_LEVELS, default=[DEFAULT_LEVEL]): cv.level_range,
            vol.Optional(CONF_BACKEND, default=str(Backend.EXACT)): cv.backend,
            vol.Optional(CONF_TOLERANCE, default=DEFAULT_TOLERANCE): cv.positive_float,
            vol.Optional(CONF_STRICT_S, default=False): cv.boolean,
            vol.Optional(CONF_SEED, default=DEFAULT_SEED): vol.Coerce(int),
            vol.Optional(CONF_JOBS, default=DEFAULT_JOBS): cv.positive_int,
            vol.Optional(
                CONF_FORMAT, default=str(OutputFormat.JSON)
            ): cv.output_format,
            vol.Optional(CONF_DUMP_COLORINGS, default=False): cv.boolean,
            vol.Optional(
                CONF_TERM_BUDGET, default=DEFAULT_TERM_BUDGET
            ): cv.positive_int,
            vol.Optional(CONF_VERBOSE, default=False): cv.boolean,
            vol.Optional(CONF_COLORS): cv.colors,
            vol.Optional(CONF_MODE): cv.construction_mode,
            vol.Optional(CONF_FIXED): cv.optional_string,
            vol.Optional(CONF_MOVES, default=DEFAULT_MOVES): cv.move_kinds,
            vol.Optional(CONF_COUNT, default=DEFAULT_COUNT): cv.positive_int,
            vol.Optional(CONF_LENGTH, default=DEFAULT_LENGTH): cv.positive_int,
            vol.Optional(CONF_REPLAY): str,
            vol.Optional(CONF_OUTPUT): cv.optional_string,
            vol.Optional(CONF_CONFIG): cv.optional_string,
        },
        extra=vol.ALLOW_EXTRA,
    ),
    _validate_command_options,
)

KNOWN_KEYS = [
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
]


class ConfigError(VwrtError):
    """Define an error related to bad configuration."""

    pass


def load_config_from_file(config_path: str) -> dict[str, Any]:
    """Load config data from a YAML or JSON file.

    Args:
        config_path: A path to a configuration file.

    Returns:
        A dictionary of parsed config options.

    Raises:
        ConfigError: Raises if the config file contains unparsable data.
    """
    config_file_data = {}

    parser = YAML(typ="safe")
    try:
        with open(config_path, encoding="utf-8") as config_file:
            config_file_data = parser.load(config_file)
    except OSError as err:
        raise ConfigError(f"Unable to read config file: {config_path}") from err
    except YAMLError as err:
        raise ConfigError(f"Unable to parse config file: {config_path}") from err

    if not isinstance(config_file_data, dict):
        raise ConfigError(f"Unable to parse config file: {config_path}")

    return config_file_data


class RunConfig:  # pylint: disable=too-many-public-methods
    """Define the configuration of one CLI run."""

    def __init__(self, config: dict[str, Any]) -> None:
        """Initialize.

        Args:
            config: CLI options and environment variables.

        Raises:
            ConfigError: Raises if unparsable data is found.
        """
        self._config = {**config}

        if config_path := self._config.get(CONF_CONFIG):
            self._config |= load_config_from_file(config_path)

        for key in self._config:
            if key in KNOWN_KEYS:
                continue
            if (match := closest_match(str(key), KNOWN_KEYS)) is not None:
                LOGGER.warning(
                    "Ignoring unknown config option %s (did you mean %s?)", key, match
                )
            else:
                LOGGER.warning("Ignoring unknown config option %s", key)

        try:
            self._config = RUN_CONFIG_SCHEMA(self._config)
        except vol.Invalid as err:
            raise ConfigError(err) from err

    def __repr__(self) -> str:
        """Define a string representation of this object.

        Returns:
            A string representation.
        """
        return str(self._config)

    @property
    def backend(self) -> Backend:
        """Return the evaluation backend.

        Returns:
            A Backend.
        """
        return cast(Backend, self._config[CONF_BACKEND])

    @property
    def colors(self) -> list[int] | None:
        """Return the cabling colors.

        Returns:
            A list of colors (if provided).
        """
        return self._config.get(CONF_COLORS)

    @property
    def command(self) -> Command:
        """Return the command.

        Returns:
            A Command.
        """
        return cast(Command, self._config[CONF_COMMAND])

    @property
    def count(self) -> int:
        """Return the number of random move sequences per diagram.

        Returns:
            A positive int.
        """
        return cast(int, self._config[CONF_COUNT])

    @property
    def dump_colorings(self) -> bool:
        """Return whether every colored bracket should be reported.

        Returns:
            Whether the property is true.
        """
        return cast(bool, self._config[CONF_DUMP_COLORINGS])

    @property
    def fixed(self) -> str | None:
        """Return the path of the fixed knot for the split-fixed construction.

        Returns:
            The path (if provided).
        """
        return self._config.get(CONF_FIXED)

    @property
    def inputs(self) -> list[str]:
        """Return the input paths.

        Returns:
            A list of paths.
        """
        return cast(list[str], self._config[CONF_INPUTS])

    @property
    def jobs(self) -> int:
        """Return the parallelism degree.

        Returns:
            A positive int.
        """
        return cast(int, self._config[CONF_JOBS])

    @property
    def length(self) -> int:
        """Return the number of moves per random sequence.

        Returns:
            A positive int.
        """
        return cast(int, self._config[CONF_LENGTH])

    @property
    def levels(self) -> list[int]:
        """Return the levels to evaluate at.

        Returns:
            An increasing list of levels.
        """
        return cast(list[int], self._config[CONF_LEVELS])

    @property
    def mode(self) -> ConstructionMode | None:
        """Return the knot-to-link construction.

        Returns:
            A ConstructionMode (if provided).
        """
        return self._config.get(CONF_MODE)

    @property
    def moves(self) -> list[MoveKind]:
        """Return the move kinds to fuzz with.

        Returns:
            A list of MoveKind objects.
        """
        return cast(list[MoveKind], self._config[CONF_MOVES])

    @property
    def output(self) -> str | None:
        """Return the output path.

        Returns:
            The path (if provided).
        """
        return self._config.get(CONF_OUTPUT)

    @property
    def output_format(self) -> OutputFormat:
        """Return the output format.

        Returns:
            An OutputFormat.
        """
        return cast(OutputFormat, self._config[CONF_FORMAT])

    @property
    def replay(self) -> str | None:
        """Return the path of a move script to replay.

        Returns:
            The path (if provided).
        """
        return self._config.get(CONF_REPLAY)

    @property
    def seed(self) -> int:
        """Return the random seed.

        Returns:
            An int.
        """
        return cast(int, self._config[CONF_SEED])

    @property
    def strict_s(self) -> bool:
        """Return whether a condition S failure is fatal.

        Returns:
            Whether the property is true.
        """
        return cast(bool, self._config[CONF_STRICT_S])

    @property
    def term_budget(self) -> int:
        """Return the largest state table tolerated.

        Returns:
            A positive int.
        """
        return cast(int, self._config[CONF_TERM_BUDGET])

    @property
    def tolerance(self) -> float:
        """Return the numeric tolerance.

        Returns:
            A positive float.
        """
        return cast(float, self._config[CONF_TOLERANCE])

    @property
    def verbose(self) -> bool:
        """Return whether verbose logging is enabled.

        Returns:
            Whether the property is true.
        """
        return cast(bool, self._config[CONF_VERBOSE])
