"""
Error hierarchy shared by the engine, the CLI and the report server.
"""


class CalgError(Exception):
    """Base class for every error raised by the engine."""

    exit_code = 1


class StructuralError(CalgError):
    """Ring mismatches, shape or degree inconsistencies."""

    exit_code = 1


class ParseError(CalgError):
    """
    Problem text that does not follow the grammar.

    Args:
        message: What went wrong
        line: 1-based line of the offending token
        column: 1-based column of the offending token
    """

    exit_code = 2

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        if line:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class PreconditionError(CalgError):
    """An operation was called on input it does not accept."""

    exit_code = 3


class InvariantError(CalgError):
    """An internal consistency check failed. Always a bug."""

    exit_code = 4
