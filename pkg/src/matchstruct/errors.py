"""Exception hierarchy shared across the package."""

from __future__ import annotations


class MatchstructError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(MatchstructError):
    """Malformed graph input. Carries the 1-based offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(MatchstructError, ValueError):
    """An operation was called on input that violates its contract."""


class ConsistencyError(MatchstructError):
    """An internal structural guarantee failed; this signals a bug, not bad input."""
