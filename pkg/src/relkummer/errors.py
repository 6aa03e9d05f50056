"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations


class KummerError(Exception):
    """Base class for all errors raised by relkummer."""


class DomainError(KummerError, ValueError):
    """An operation was applied outside its mathematical domain."""


class UnsupportedInstanceError(KummerError):
    """The requested field / group configuration violates a hypothesis we need."""


class InvariantViolation(KummerError, AssertionError):
    """An internal consistency check failed; this always indicates a bug."""


class ParseError(KummerError, ValueError):
    """Malformed expression or instance text.

    ``pos`` is a 0-based offset into the parsed string; ``line`` and ``column``
    are 1-based and filled in when the text came from an instance file.
    """

    def __init__(self, message: str, pos: int | None = None, line: int | None = None, column: int | None = None):
        self.message = message
        self.pos = pos
        self.line = line
        self.column = column
        super().__init__(self._render())

    def _render(self) -> str:
        if self.line is not None:
            return f"line {self.line}, column {self.column}: {self.message}"
        if self.pos is not None:
            return f"position {self.pos}: {self.message}"
        return self.message
