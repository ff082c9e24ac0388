"""Forcing relation and transitive orientation.

Orientations are returned as oriented :class:`~transmod.graph.Digraph`
values on the same vertex set as the undirected target.
"""

from __future__ import annotations

import enum
from collections import deque

from .errors import EdgeNotInGraphError, NotComparabilityError, NotUndirectedError
from .graph import (
    Digraph,
    bits,
    is_acyclic,
    is_oriented,
    is_undirected,
    transitive_closure,
    undirected_complement,
)
from .mdtree import decompose_undirected
from .modules import ModuleKind

Edge = tuple[int, int]

__all__ = [
    "Source",
    "gamma",
    "forced_by",
    "implication_classes",
    "transitive_orientation",
    "orient_complement",
    "restrict",
    "transitivity_violation",
]


class Source(enum.Enum):
    LIFTED = "lifted"
    DIRECT = "direct"


def _require_undirected(ug: Digraph) -> None:
    if not is_undirected(ug):
        raise NotUndirectedError("expected an undirected graph (E equal to its inverse)")


def gamma(ug: Digraph, e1: Edge, e2: Edge) -> bool:
    """Whether two directed edges of ``ug`` force each other.

    They do when they share a tail and their heads are non-adjacent, or
    share a head and their tails are non-adjacent.  An edge forces itself.
    """
    _require_undirected(ug)
    for e in (e1, e2):
        if not ug.has_edge(*e):
            raise EdgeNotInGraphError(f"{e} is not an edge")
    (a, b), (c, d) = e1, e2
    if a == c and not ug.has_edge(b, d):
        return True
    return b == d and not ug.has_edge(a, c)


def forced_by(ug: Digraph, e: Edge) -> list[Edge]:
    """Edges ``f != e`` with ``e`` Γ ``f``."""
    a, b = e
    adj = ug.succ_mask
    out = [(a, d) for d in bits(adj[a] & ~adj[b] & ~(1 << b))]
    out += [(c, b) for c in bits(adj[b] & ~adj[a] & ~(1 << a))]
    return out


def implication_classes(ug: Digraph) -> list[frozenset[Edge]]:
    """Connected components of Γ on the directed edges of ``ug``.

    Classes are sorted by their smallest edge.
    """
    _require_undirected(ug)
    parent: dict[Edge, Edge] = {e: e for e in ug.edges()}

    def find(e: Edge) -> Edge:
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for e in ug.edges():
        for f in forced_by(ug, e):
            re, rf = find(e), find(f)
            if re != rf:
                parent[max(re, rf)] = min(re, rf)
    groups: dict[Edge, set[Edge]] = {}
    for e in parent:
        groups.setdefault(find(e), set()).add(e)
    return sorted((frozenset(s) for s in groups.values()), key=min)


def transitivity_violation(o: Digraph, ug: Digraph | None = None) -> tuple[int, int, int] | None:
    """A triple ``(a, b, c)`` with ``a->b``, ``b->c`` oriented and ``a->c``
    missing, or ``None`` if ``o`` is transitive.

    With ``ug`` given, triples whose ends are non-adjacent in ``ug`` are
    reported first.
    """
    found = None
    sm = o.succ_mask
    for a in range(o.n):
        for b in o.succ[a]:
            for c in bits(sm[b] & ~sm[a] & ~(1 << a)):
                if ug is None or not ug.has_edge(a, c):
                    return a, b, c
                if found is None:
                    found = (a, b, c)
    if found is None and not is_acyclic(o):
        # a cycle a->b->a can only come from a 2-cycle, which is not oriented
        a = next(v for v in range(o.n) if sm[v] & o.pred_mask[v])
        b = (sm[a] & o.pred_mask[a]).bit_length() - 1
        found = (a, b, a)
    return found


def _self_inverse_class(ug: Digraph, e: Edge) -> frozenset[Edge]:
    for cls in implication_classes(ug):
        if e in cls:
            return cls
    raise AssertionError("edge missing from its own graph")


def _orient_prime(q: Digraph, reps: list[int], ug: Digraph) -> list[Edge]:
    """Orient a prime quotient by forcing from its smallest edge."""
    direction: dict[frozenset[int], Edge] = {}
    for seed in sorted(e for e in q.edges() if e[0] < e[1]):
        if frozenset(seed) in direction:
            continue
        direction[frozenset(seed)] = seed
        queue = deque([seed])
        while queue:
            e = queue.popleft()
            for f in forced_by(q, e):
                key = frozenset(f)
                if key not in direction:
                    direction[key] = f
                    queue.append(f)
                elif direction[key] != f:
                    witness = (reps[f[0]], reps[f[1]])
                    raise NotComparabilityError(
                        "an implication class contains an edge and its inverse",
                        ("class", _self_inverse_class(ug, witness)),
                    )
    return list(direction.values())


def transitive_orientation(ug: Digraph) -> Digraph:
    """A transitive orientation of ``ug``, or :class:`NotComparabilityError`.

    Parallel nodes need nothing, series nodes are oriented by increasing
    smallest vertex, and prime quotients are oriented by closing one seed
    edge under forcing.  The composed result is checked before returning.
    """
    _require_undirected(ug)
    if ug.n == 0:
        return ug
    oriented: list[Edge] = []
    for nd in decompose_undirected(ug).walk():
        if nd.is_leaf or nd.kind is ModuleKind.PARALLEL:
            continue
        kids = nd.children
        if nd.kind is ModuleKind.SERIES:
            pairs = [(i, j) for i in range(len(kids)) for j in range(i + 1, len(kids))]
        else:
            reps = [c.min_vertex for c in kids]
            q = Digraph(
                len(kids),
                ((i, j) for i in range(len(kids)) for j in range(len(kids)) if ug.has_edge(reps[i], reps[j])),
            )
            pairs = _orient_prime(q, reps, ug)
        for i, j in pairs:
            oriented.extend((x, y) for x in kids[i].vertices for y in kids[j].vertices)
    o = ug.with_edges(oriented)
    _certify(o, ug)
    return o


def _certify(o: Digraph, ug: Digraph) -> None:
    if not is_oriented(o) or o.m * 2 != ug.m:
        raise AssertionError("orientation does not cover the target exactly once")
    bad = transitivity_violation(o, ug)
    if bad is not None:
        raise NotComparabilityError("orientation is not transitive", ("triple", bad))


def restrict(o: Digraph, ug: Digraph) -> Digraph:
    """Keep only the oriented edges whose undirected pair lies in ``ug``."""
    return o.with_edges(e for e in o.edges() if ug.has_edge(*e))


def orient_complement(g: Digraph) -> tuple[Digraph, Source]:
    """Transitive orientation of the undirected complement of the closure.

    First tries to orient the (larger) complement of ``g`` itself and
    restrict; if that graph is not a comparability graph, orients the
    complement of the closure directly.
    """
    target = undirected_complement(transitive_closure(g))
    try:
        lifted = transitive_orientation(undirected_complement(g))
    except NotComparabilityError:
        return transitive_orientation(target), Source.DIRECT
    o = restrict(lifted, target)
    _certify(o, target)
    return o, Source.LIFTED

