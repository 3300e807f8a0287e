"""Helpers for config validation using voluptuous."""
from __future__ import annotations

import re
from numbers import Number
from typing import Any

import voluptuous as vol

from vwrt.algebra.level import MIN_LEVEL
from vwrt.bracket import Backend
from vwrt.diagram.moves import MoveKind
from vwrt.helpers.output import OutputFormat
from vwrt.surface import ConstructionMode, ModeUnknown

LEVEL_RANGE_PATTERN = re.compile(r"^\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?$")


def boolean(value: Any) -> bool:
    """Validate and coerce a boolean value.

    Args:
        value: The value to validate.

    Returns:
        A parsed boolean.

    Raises:
        Invalid: Raises on an invalid boolean.
    """
    if isinstance(value, bool):
        return value
    if isinstance(value, str):
        value = value.lower().strip()
        if value in ("1", "true", "yes", "on", "enable"):
            return True
        if value in ("0", "false", "no", "off", "disable"):
            return False
    elif isinstance(value, Number):
        # type ignore: https://github.com/python/mypy/issues/3186
        return value != 0  # type: ignore[comparison-overlap]
    raise vol.Invalid(f"invalid boolean value: {value}")


def level_range(value: Any) -> list[int]:
    """Validate and expand a level or an inclusive level range.

    Accepts an int, a string "R" or "A..B", or a list of ints.

    Args:
        value: The value to validate.

    Returns:
        The levels in increasing order.

    Raises:
        Invalid: Raises on malformed input or a level below the minimum.
    """
    if isinstance(value, bool):
        raise vol.Invalid(f"invalid level: {value}")

    if isinstance(value, int):
        levels = [value]
    elif isinstance(value, (list, tuple)):
        levels = []
        for item in value:
            levels.extend(level_range(item))
    elif isinstance(value, str) and (match := LEVEL_RANGE_PATTERN.match(value)):
        start = int(match.group(1))
        end = int(match.group(2)) if match.group(2) is not None else start
        if end < start:
            raise vol.Invalid(f"empty level range: {value}")
        levels = list(range(start, end + 1))
    else:
        raise vol.Invalid(f"invalid level range (expected INT or A..B): {value}")

    if not levels:
        raise vol.Invalid("no levels given")
    if (low := min(levels)) < MIN_LEVEL:
        raise vol.Invalid(f"level must be at least {MIN_LEVEL}, got {low}")
    return sorted(set(levels))


def colors(value: Any) -> list[int]:
    """Validate and coerce a coloring such as "2,1".

    Args:
        value: The value to validate.

    Returns:
        A list of nonnegative colors.

    Raises:
        Invalid: Raises on malformed input or a negative color.
    """
    if isinstance(value, str):
        items: list[Any] = [item.strip() for item in value.split(",") if item.strip()]
    elif isinstance(value, (list, tuple)):
        items = list(value)
    else:
        raise vol.Invalid(f"invalid colors: {value}")

    try:
        parsed = [int(item) for item in items]
    except (TypeError, ValueError) as err:
        raise vol.Invalid(f"invalid colors: {value}") from err

    if not parsed:
        raise vol.Invalid("no colors given")
    if any(color < 0 for color in parsed):
        raise vol.Invalid(f"colors must be nonnegative: {value}")
    return parsed


def move_kinds(value: Any) -> list[MoveKind]:
    """Validate and coerce a list of move kinds such as "O1+,O2".

    Args:
        value: The value to validate.

    Returns:
        A list of MoveKind objects.

    Raises:
        Invalid: Raises on an unknown move kind.
    """
    if isinstance(value, str):
        items: list[Any] = [item.strip() for item in value.split(",") if item.strip()]
    elif isinstance(value, (list, tuple)):
        items = list(value)
    else:
        raise vol.Invalid(f"invalid moves: {value}")

    try:
        kinds = [MoveKind.parse(str(item)) for item in items]
    except ValueError as err:
        raise vol.Invalid(str(err)) from err

    if not kinds:
        raise vol.Invalid("no moves given")
    return kinds


def backend(value: Any) -> Backend:
    """Validate and coerce an evaluation backend.

    Args:
        value: The value to validate.

    Returns:
        A Backend.

    Raises:
        Invalid: Raises on an unknown backend.
    """
    try:
        return Backend.parse(str(value))
    except ValueError as err:
        raise vol.Invalid(str(err)) from err


def construction_mode(value: Any) -> ConstructionMode:
    """Validate and coerce a construction mode.

    Args:
        value: The value to validate.

    Returns:
        A ConstructionMode.

    Raises:
        Invalid: Raises on an unknown mode.
    """
    try:
        return ConstructionMode.parse(str(value))
    except ModeUnknown as err:
        raise vol.Invalid(str(err)) from err


def output_format(value: Any) -> OutputFormat:
    """Validate and coerce an output format.

    Args:
        value: The value to validate.

    Returns:
        An OutputFormat.

    Raises:
        Invalid: Raises on an unknown format.
    """
    try:
        return OutputFormat.parse(str(value))
    except ValueError as err:
        raise vol.Invalid(str(err)) from err


optional_string = vol.Any(str, None)
positive_float = vol.All(vol.Coerce(float), vol.Range(min=0, min_included=False))
positive_int = vol.All(vol.Coerce(int), vol.Range(min=1))
