"""Exception hierarchy shared by all graphres modules."""

from __future__ import annotations


class GraphresError(Exception):
    """Base class for every error raised by graphres."""


class DomainError(GraphresError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class CapabilityError(GraphresError):
    """The request is well-formed but exceeds a supported size bound."""


class FormulaNotApplicable(GraphresError):
    """A closed-form expression does not cover the requested parameters."""


class ParseError(GraphresError, ValueError):
    """Malformed graph text. ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int | None = None, text: str | None = None):
        self.position = position
        self.line = self.column = None
        if position is not None and text is not None:
            head = text[:position]
            self.line = head.count("\n") + 1
            self.column = position - (head.rfind("\n") + 1) + 1
        where = ""
        if self.line is not None:
            where = f" (line {self.line}, column {self.column})"
        elif position is not None:
            where = f" (offset {position})"
        super().__init__(message + where)


class AtlasError(GraphresError):
    """An atlas file could not be loaded."""


class ConsistencyError(GraphresError):
    """An internal cross-check failed, e.g. gamma differs inside an LC orbit."""
