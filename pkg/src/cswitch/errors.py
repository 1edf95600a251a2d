"""Exception types raised by the toolkit.

Every error is a subclass of :class:`CswitchError` so callers can catch
toolkit failures with a single except clause.
"""

from __future__ import annotations


class CswitchError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatch(CswitchError):
    """A matrix is not square or does not match the declared dimension."""


class UnknownLabel(CswitchError):
    """An edge refers to a mode label with no corresponding matrix."""


class DuplicateEdge(CswitchError):
    """The same (source, destination, label) triple appears twice."""


class EmptyGraph(CswitchError):
    """The automaton has no edges, so it accepts no switching sequence."""


class ParseError(CswitchError):
    """A system document is malformed.

    Carries the line and column of the offending token when known.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class FieldMismatch(CswitchError):
    """Exact and floating entries were mixed, or fields of two objects differ."""


class NonConsecutivePath(CswitchError):
    """Edges do not chain head-to-tail, so they form no path."""


class CapExceeded(CswitchError):
    """An enumeration would exceed the configured cap.

    ``required`` reports the enumeration size that would have been needed.
    """

    def __init__(self, message: str, required: int):
        super().__init__(f"{message} (required {required})")
        self.required = required


class NotStronglyConnected(CswitchError):
    """The operation needs a strongly connected automaton."""


class BadSubspaceDim(CswitchError):
    """A subspace argument is trivial, full, or lives in the wrong dimension."""


class ZeroParameter(CswitchError):
    """A generator parameter that must be nonzero was zero."""


class UnknownExampleId(CswitchError):
    """No bundled example with the requested identifier."""


class EigenFailure(CswitchError):
    """The numerical eigenvalue backend did not converge."""
