"""Exception hierarchy shared by all colorfix modules."""

from __future__ import annotations


class ColorFixError(Exception):
    """Base class for every error raised by colorfix."""


class MalformedInputError(ColorFixError, ValueError):
    """An object does not satisfy the structural requirements of an operation."""


class ParseError(MalformedInputError):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(MalformedInputError):
    """A tree decomposition (or similar certificate) violates a required condition."""


class SizeGuardError(ColorFixError):
    """Instance exceeds a configured size guard; rerun with ``force=True``."""


class InfeasibleError(ColorFixError):
    """Raised where an infeasible instance cannot be reported as a result value."""
