"""Define utilities."""
from __future__ import annotations

from collections.abc import Iterable

from rapidfuzz import fuzz

DEFAULT_FUZZY_THRESHOLD = 80


def _get_fuzzy_match(candidates: list[str], key: str) -> str:
    """Get a fuzzy match from a list of strings."""
    candidates = sorted(candidates, key=lambda m: fuzz.ratio(key, m), reverse=True)
    return candidates[0]


def closest_match(key: str, choices: Iterable[str]) -> str | None:
    """Get the closest choice to a key, if any is close enough.

    Args:
        key: The (probably misspelled) key.
        choices: The valid choices.

    Returns:
        The closest choice, or None when nothing reaches the threshold.
    """
    if matches := [
        choice
        for choice in choices
        if fuzz.ratio(key.lower(), choice.lower()) >= DEFAULT_FUZZY_THRESHOLD
    ]:
        return _get_fuzzy_match(matches, key)
    return None


def suggest(message: str, key: str, choices: Iterable[str]) -> str:
    """Append a "did you mean" hint to an error message.

    Args:
        message: The error message.
        key: The rejected value.
        choices: The valid values.

    Returns:
        The message, with a suggestion when a close choice exists, otherwise with
        the list of valid values.
    """
    choices = list(choices)
    if (match := closest_match(key, choices)) is not None:
        return f"{message}; did you mean {match!r}?"
    return f"{message}; expected one of: {', '.join(choices)}"
