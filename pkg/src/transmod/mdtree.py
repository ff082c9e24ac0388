"""Modular decomposition trees.

Undirected graphs are decomposed top-down: a module whose induced subgraph
is disconnected is parallel, one whose complement is disconnected is series,
and otherwise its children are the maximal proper modules, found by growing
two-vertex seeds until no splitter remains.  Transitive DAGs reuse the
undirected tree of their symmetric closure with series nodes relabelled as
ordered, and arbitrary digraphs get there via SCC contraction.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from functools import cached_property

from .errors import CyclicInputError, EmptyGraphError, NotTransitiveError, NotUndirectedError
from .graph import (
    Digraph,
    Partition,
    bits,
    induced_subgraph,
    is_acyclic,
    is_transitive,
    is_undirected,
    quotient_graph,
    scc_contract,
    topological_order,
    transitive_closure,
    undirected_closure,
)
from .modules import ModuleKind

__all__ = [
    "MDNode",
    "leaf",
    "node",
    "decompose_undirected",
    "decompose_transitive_dag",
    "decompose_digraph",
    "prune",
    "canonical",
    "child_quotient",
    "node_sets",
    "format_tree",
    "serialize_tree",
    "tree_to_dot",
]


@dataclass(frozen=True)
class MDNode:
    """A node of a (possibly unreduced) decomposition tree.

    Leaves have ``kind is None`` and carry ``vertex``.  For ordered nodes the
    child tuple is the order; for the other kinds it is sorted by smallest
    contained vertex once the tree is canonical.
    """

    kind: ModuleKind | None
    children: tuple[MDNode, ...] = ()
    vertex: int | None = field(default=None)

    @property
    def is_leaf(self) -> bool:
        return self.kind is None

    @cached_property
    def vertices(self) -> frozenset[int]:
        if self.is_leaf:
            return frozenset((self.vertex,))
        return frozenset().union(*(c.vertices for c in self.children))

    @cached_property
    def min_vertex(self) -> int:
        return min(self.vertices)

    def walk(self) -> Iterator[MDNode]:
        """Pre-order traversal."""
        stack = [self]
        while stack:
            nd = stack.pop()
            yield nd
            stack.extend(reversed(nd.children))

    def leaves(self) -> Iterator[int]:
        for nd in self.walk():
            if nd.is_leaf:
                yield nd.vertex

    def map_leaves(self, fn: Callable[[int], MDNode]) -> MDNode:
        if self.is_leaf:
            return fn(self.vertex)
        return MDNode(self.kind, tuple(c.map_leaves(fn) for c in self.children))


def leaf(v: int) -> MDNode:
    return MDNode(None, (), v)


def node(kind: ModuleKind, children) -> MDNode:
    children = tuple(children)
    if len(children) < 2:
        raise ValueError("internal nodes need at least two children")
    return MDNode(kind, children)


def node_sets(t: MDNode) -> set[frozenset[int]]:
    return {nd.vertices for nd in t.walk()}


def canonical(t: MDNode) -> MDNode:
    """Sort children of non-ordered nodes by smallest contained vertex."""
    if t.is_leaf:
        return t
    children = tuple(canonical(c) for c in t.children)
    if t.kind is not ModuleKind.ORDERED:
        children = tuple(sorted(children, key=lambda c: c.min_vertex))
    return MDNode(t.kind, children)


def prune(t: MDNode) -> MDNode:
    """Reduce an unreduced tree.

    Children sharing their parent's kind are spliced into the parent (in
    place, for ordered nodes) and single-child nodes collapse.
    """
    if t.is_leaf:
        return t
    spliced: list[MDNode] = []
    for c in t.children:
        c = prune(c)
        if not c.is_leaf and c.kind is t.kind and t.kind is not ModuleKind.PRIME:
            spliced.extend(c.children)
        else:
            spliced.append(c)
    if len(spliced) == 1:
        return spliced[0]
    return canonical(MDNode(t.kind, tuple(spliced)))


# -- undirected decomposition ------------------------------------------------


def _components(adj: list[int], within: int) -> list[int]:
    comps = []
    rest = within
    while rest:
        start = rest & -rest
        seen = start
        frontier = start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            frontier = nxt & within & ~seen
            seen |= frontier
        comps.append(seen)
        rest &= ~seen
    return comps


def _grow_module(adj: list[int], within: int, seed: int) -> int:
    """Smallest module of the graph induced on ``within`` containing ``seed``."""
    s = seed
    while True:
        add = 0
        for x in bits(within & ~s):
            a = adj[x] & s
            if a and a != s:
                add |= 1 << x
        if not add:
            return s
        s |= add


def _maximal_proper_modules(adj: list[int], within: int) -> list[int]:
    """Children of a prime node: the maximal modules strictly inside it."""
    parts = []
    rest = within
    while rest:
        u = (rest & -rest).bit_length() - 1
        part = 1 << u
        for w in bits(within & ~(1 << u)):
            if _grow_module(adj, within, (1 << u) | (1 << w)) != within:
                part |= 1 << w
        parts.append(part)
        rest &= ~part
    return parts


def _decompose_mask(adj: list[int], co_adj: list[int], within: int) -> MDNode:
    if within & (within - 1) == 0:
        return leaf(within.bit_length() - 1)
    parts = _components(adj, within)
    kind = ModuleKind.PARALLEL
    if len(parts) == 1:
        parts = _components(co_adj, within)
        kind = ModuleKind.SERIES
        if len(parts) == 1:
            parts = _maximal_proper_modules(adj, within)
            kind = ModuleKind.PRIME
    children = sorted((_decompose_mask(adj, co_adj, p) for p in parts), key=lambda c: c.min_vertex)
    return MDNode(kind, tuple(children))


def decompose_undirected(ug: Digraph) -> MDNode:
    if not is_undirected(ug):
        raise NotUndirectedError("decompose_undirected needs an undirected graph")
    if ug.n == 0:
        raise EmptyGraphError("the empty graph has no decomposition tree")
    adj = list(ug.succ_mask)
    full = ug.all_mask
    co_adj = [full & ~adj[v] & ~(1 << v) for v in range(ug.n)]
    return _decompose_mask(adj, co_adj, full)


# -- transitive DAGs and general digraphs -----------------------------------


def _total_order(g: Digraph, reps: list[int]) -> list[int]:
    """Unique topological order of ``g`` restricted to ``reps``."""
    sub = induced_subgraph(g, reps)
    order = topological_order(sub)
    for x, y in zip(order, order[1:]):
        if not sub.has_edge(x, y):
            raise AssertionError(
                "ordered node quotient is not a total order; decomposition is inconsistent"
            )
    return [reps[i] for i in order]


def _as_ordered(t: MDNode, g: Digraph) -> MDNode:
    if t.is_leaf:
        return t
    children = [_as_ordered(c, g) for c in t.children]
    if t.kind is not ModuleKind.SERIES:
        return MDNode(t.kind, tuple(children))
    by_rep = {c.min_vertex: c for c in children}
    seq = _total_order(g, sorted(by_rep))
    return MDNode(ModuleKind.ORDERED, tuple(by_rep[r] for r in seq))


def decompose_transitive_dag(g: Digraph) -> MDNode:
    if not is_acyclic(g):
        raise CyclicInputError("decompose_transitive_dag needs an acyclic graph")
    if not is_transitive(g):
        raise NotTransitiveError("decompose_transitive_dag needs a transitive graph")
    return _as_ordered(decompose_undirected(undirected_closure(g)), g)


def expand_sccs(t: MDNode, p: Partition) -> MDNode:
    """Replace each contracted vertex by a series node over its component."""

    def expand(v: int) -> MDNode:
        block = sorted(p.blocks[v])
        if len(block) == 1:
            return leaf(block[0])
        return node(ModuleKind.SERIES, (leaf(x) for x in block))

    # contracted quotients are acyclic, so a series parent cannot occur above
    for nd in t.walk():
        if nd.kind is ModuleKind.SERIES and any(c.is_leaf and len(p.blocks[c.vertex]) > 1 for c in nd.children):
            raise AssertionError("component series node placed under a series parent")
    return t.map_leaves(expand)


def decompose_digraph(g: Digraph) -> MDNode:
    """Decomposition tree of the transitive closure of ``g``."""
    if g.n == 0:
        raise EmptyGraphError("the empty graph has no decomposition tree")
    dag, p = scc_contract(g)
    t = decompose_transitive_dag(transitive_closure(dag))
    return prune(expand_sccs(t, p))


def child_quotient(g: Digraph, nd: MDNode) -> Digraph:
    """Quotient of ``g`` induced on ``nd`` by its children.

    Vertex ``i`` of the result is ``nd.children[i]``.
    """
    if nd.is_leaf:
        raise ValueError("leaves have no child quotient")
    members = sorted(nd.vertices)
    pos = {v: i for i, v in enumerate(members)}
    sub = induced_subgraph(g, members)
    p = Partition(len(members), ([pos[v] for v in c.vertices] for c in nd.children))
    q = quotient_graph(sub, p)
    if g.labels is None:
        return q
    return Digraph(q.n, q.edges(), [format_tree(c, g) for c in nd.children])


# -- output ----------------------------------------------------------------


def format_tree(t: MDNode, g: Digraph | None = None) -> str:
    """Compact one-line form, e.g. ``prime(ordered(A<D<G), H, series(B, C))``."""
    name = g.label if g is not None else str
    if t.is_leaf:
        return name(t.vertex)
    sep = "<" if t.kind is ModuleKind.ORDERED else ", "
    return f"{t.kind.value}({sep.join(format_tree(c, g) for c in t.children)})"


def serialize_tree(t: MDNode, g: Digraph | None = None) -> str:
    """One record per node, numbered in pre-order.

    ``node <id> <kind> children=<ids>`` for prime, series and parallel
    nodes, ``node <id> ordered order=<ids>`` for ordered nodes (ids listed
    first to last) and ``leaf <id> <label>`` for leaves.
    """
    name = g.label if g is not None else str
    ids = {id(nd): i for i, nd in enumerate(t.walk())}
    lines = []
    for nd in t.walk():
        i = ids[id(nd)]
        if nd.is_leaf:
            lines.append(f"leaf {i} {name(nd.vertex)}")
            continue
        kids = ",".join(str(ids[id(c)]) for c in nd.children)
        key = "order" if nd.kind is ModuleKind.ORDERED else "children"
        lines.append(f"node {i} {nd.kind.value} {key}={kids}")
    return "\n".join(lines) + "\n"


def tree_to_dot(t: MDNode, g: Digraph | None = None) -> str:
    name = g.label if g is not None else str
    ids = {id(nd): i for i, nd in enumerate(t.walk())}
    lines = ["digraph mdtree {"]
    for nd in t.walk():
        i = ids[id(nd)]
        if nd.is_leaf:
            lines.append(f'  n{i} [label="{name(nd.vertex)}", shape=circle];')
            continue
        lines.append(f'  n{i} [label="{nd.kind.value}", shape=box];')
        for pos, c in enumerate(nd.children):
            attr = f' [label="{pos + 1}"]' if nd.kind is ModuleKind.ORDERED else ""
            lines.append(f"  n{i} -> n{ids[id(c)]}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
