"""Define package errors."""


class VwrtError(Exception):
    """Define a base exception."""

    pass
