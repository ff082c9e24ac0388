"""Two-linear-order representation of a transitive DAG.

When the complement of the closure is transitively orientable, the closure
is the intersection of two linear orders.  Each order is a topological sort
of the closure united with the orientation (resp. its inverse), and a
reachability query becomes two rank comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CyclicInputError, NotTotalError, ParseError, UnknownVertexError
from .graph import Digraph, inverse, is_acyclic, topological_order, transitive_closure
from .orient import orient_complement

__all__ = ["LinearOrder", "PermRep", "linearize", "build_permrep", "reachable"]


@dataclass(frozen=True)
class LinearOrder:
    sequence: tuple[int, ...]
    position: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        pos = [-1] * len(self.sequence)
        for rank, v in enumerate(self.sequence):
            if not 0 <= v < len(pos) or pos[v] != -1:
                raise ValueError("sequence is not a permutation of 0..n-1")
            pos[v] = rank
        object.__setattr__(self, "position", tuple(pos))

    def __len__(self) -> int:
        return len(self.sequence)


@dataclass(frozen=True)
class PermRep:
    l1: LinearOrder
    l2: LinearOrder
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.l1) != len(self.l2):
            raise ValueError("orders cover different vertex counts")
        if self.labels is not None and len(self.labels) != len(self.l1):
            raise ValueError("label count does not match order length")

    @property
    def n(self) -> int:
        return len(self.l1)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def vertex(self, label: str) -> int:
        names = self.labels if self.labels is not None else tuple(map(str, range(self.n)))
        try:
            return names.index(label)
        except ValueError:
            raise UnknownVertexError(f"unknown vertex {label!r}") from None

    def to_text(self) -> str:
        return "".join(" ".join(self.label(v) for v in lo.sequence) + "\n" for lo in (self.l1, self.l2))

    @classmethod
    def from_text(cls, text: str) -> PermRep:
        """Parse two lines of whitespace-separated labels."""
        rows = [(i, line.split()) for i, line in enumerate(text.splitlines(), 1) if line.strip()]
        if len(rows) != 2:
            raise ParseError(len(text.splitlines()) or 1, "order file needs exactly two non-empty lines")
        (_, first), (line2, second) = rows
        if len(set(first)) != len(first):
            raise ParseError(rows[0][0], "repeated label in first order")
        index = {s: i for i, s in enumerate(first)}
        if sorted(second) != sorted(first):
            raise ParseError(line2, "second order is not a permutation of the first")
        return cls(
            LinearOrder(tuple(range(len(first)))),
            LinearOrder(tuple(index[s] for s in second)),
            tuple(first),
        )


def linearize(gstar: Digraph, o: Digraph) -> LinearOrder:
    """Merge a transitive DAG with an orientation of its complement."""
    union = gstar.with_edges(list(gstar.edges()) + list(o.edges()))
    n = gstar.n
    for a in range(n):
        both = union.succ_mask[a] & union.pred_mask[a]
        if both:
            raise CyclicInputError(
                f"{gstar.label(a)} and {gstar.label(both.bit_length() - 1)} are ordered both ways"
            )
    if 2 * union.m != n * (n - 1):
        a, b = next((a, b) for a in range(n) for b in range(a + 1, n) if not union.adjacent(a, b))
        raise NotTotalError(f"{gstar.label(a)} and {gstar.label(b)} are left unordered")
    # an acyclic tournament has exactly one topological order
    return LinearOrder(tuple(topological_order(union)))


def build_permrep(g: Digraph, orientation: Digraph | None = None) -> PermRep:
    """Index the closure of the DAG ``g`` by two linear orders.

    ``orientation`` must be a transitive orientation of the undirected
    complement of the closure; by default one is computed.
    """
    if not is_acyclic(g):
        raise CyclicInputError("the permutation representation needs an acyclic graph")
    gstar = transitive_closure(g)
    if orientation is None:
        orientation, _ = orient_complement(g)
    return PermRep(
        linearize(gstar, orientation),
        linearize(gstar, inverse(orientation)),
        g.labels,
    )


def reachable(pr: PermRep, u: int, v: int) -> bool:
    """Whether ``v`` is reachable from ``u`` by a non-empty path."""
    p1, p2 = pr.l1.position, pr.l2.position
    if not (0 <= u < len(p1) and 0 <= v < len(p1)):
        raise UnknownVertexError(f"vertex outside 0..{len(p1) - 1}")
    return p1[u] < p1[v] and p2[u] < p2[v]
