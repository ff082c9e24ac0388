"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class GraphError(Exception):
    """Base class for domain failures (CLI exit status 1)."""


class EmptyGraphError(GraphError, ValueError):
    pass


class CyclicInputError(GraphError):
    pass


class NotTransitiveError(GraphError):
    pass


class NotUndirectedError(GraphError):
    pass


class NotAModuleError(GraphError):
    pass


class NotCongruenceError(GraphError):
    pass


class OracleBoundExceeded(GraphError):
    pass


class EdgeNotInGraphError(GraphError):
    pass


class UnknownVertexError(GraphError):
    pass


class NotTotalError(GraphError):
    """A linearization left some pair of vertices unordered."""


class NotComparabilityError(GraphError):
    """The target graph has no transitive orientation.

    ``witness`` is either ``("class", edges)`` where ``edges`` is an implication
    class containing some edge together with its inverse, or
    ``("triple", (a, b, c))`` with ``a->b`` and ``b->c`` oriented but ``a`` and
    ``c`` non-adjacent.
    """

    def __init__(self, message: str, witness: tuple) -> None:
        super().__init__(message)
        self.witness = witness


class InputError(Exception):
    """Malformed input text (CLI exit status 2)."""

    def __init__(self, line: int, reason: str, column: int | None = None) -> None:
        self.line = line
        self.column = column
        self.reason = reason
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {reason}")


class ParseError(InputError):
    pass


class SelfLoopError(InputError):
    pass
