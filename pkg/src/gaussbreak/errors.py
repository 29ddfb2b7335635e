"""Exception hierarchy.

Input problems (bad shapes, non-finite entries, violated preconditions) are
kept separate from internal numerical failures so that callers, in
particular the command line front end, can map them to distinct exit codes.
"""


class GaussBreakError(Exception):
    """Base class for all package errors."""


class InvalidInputError(GaussBreakError, ValueError):
    """Malformed or inconsistent input: shapes, finiteness, mode counts."""


class PreconditionError(InvalidInputError):
    """An operation was called on an object outside its domain."""


class NumericalError(GaussBreakError, RuntimeError):
    """An internal numerical routine failed to produce a usable result."""
