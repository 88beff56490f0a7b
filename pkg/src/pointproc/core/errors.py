"""Exception hierarchy shared by every pointproc module.

All library errors derive from :class:`PointProcError` so callers (the CLI in
particular) can map them onto exit codes in one place:

* :class:`UsageError`    – a precondition was violated (exit code 2)
* :class:`RangeError`    – an infinite-measure request (exit code 2)
* :class:`ResourceError` – a support or draw-size guard tripped (exit code 3)
* :class:`DslError`      – parse or universe errors in pipeline text (exit code 1)
"""

from __future__ import annotations

from typing import Optional, Sequence


class PointProcError(Exception):
    """Root of the pointproc exception tree."""


class UsageError(PointProcError, ValueError):
    """Raised when an operation is called outside its precondition."""


class RangeError(PointProcError, ArithmeticError):
    """Raised instead of returning an infinite expected count."""


class ResourceError(PointProcError, MemoryError):
    """Raised when an enumeration or a single draw would grow past its guard."""


class DslError(PointProcError):
    """Base class for pipeline-language errors."""


class DslSyntaxError(DslError):
    """Syntax error with 1-based position information.

    Parameters
    ----------
    message
        Human-readable description (usually "Expected ...").
    line, column
        1-based position of the offending token.
    expected
        Tokens the parser would have accepted at that position.
    """

    def __init__(
        self,
        message: str,
        line: int,
        column: int,
        expected: Sequence[str] = (),
        source_line: Optional[str] = None,
    ) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        self.source_line = source_line


class DslTypeError(DslError):
    """Universe or arity error; *subexpression* is the offending source text."""

    def __init__(self, message: str, subexpression: str) -> None:
        super().__init__(f"{message} in `{subexpression}`")
        self.message = message
        self.subexpression = subexpression
