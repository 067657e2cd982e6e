"""Exception hierarchy shared across the package.

The CLI maps these onto distinct exit codes.
"""


class BookRamseyError(Exception):
    """Base class for all package errors."""


class InputError(BookRamseyError):
    """Invalid argument or precondition violation."""


class ParseError(BookRamseyError):
    """Malformed graph / coloring / config file."""


class LimitsError(BookRamseyError):
    """A configured resource cap was exceeded."""


class InternalError(BookRamseyError):
    """An internal consistency check failed (implementation bug)."""
