"""Simple digraphs over dense integer vertex ids, plus the closure,
complement and reduction primitives everything else is built from.

Graph values are immutable; every operation returns a new graph.  Vertex
sets are frequently handled as Python ints used as bitsets (bit ``v`` set
means vertex ``v`` is a member), which keeps the brute-force code short.
"""

from __future__ import annotations

import heapq
from collections.abc import Iterable, Sequence
from functools import cached_property

from .errors import CyclicInputError

__all__ = [
    "Digraph",
    "Partition",
    "bits",
    "mask",
    "inverse",
    "undirected_closure",
    "complement",
    "undirected_complement",
    "transitive_closure",
    "transitive_reduction",
    "is_transitive",
    "is_acyclic",
    "is_oriented",
    "is_undirected",
    "scc_contract",
    "strongly_connected_components",
    "topological_order",
    "induced_subgraph",
    "quotient_graph",
]


def bits(m: int) -> list[int]:
    """Members of a bitset, ascending."""
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


def mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Digraph:
    """A simple directed graph on vertices ``0 .. n-1``.

    Self-loops are rejected, duplicate edges collapse.  ``labels`` is an
    optional tuple of distinct strings naming the vertices.
    """

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        labels: Sequence[str] | None = None,
    ) -> None:
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        succ: list[set[int]] = [set() for _ in range(n)]
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a}, {b}) outside vertex range 0..{n - 1}")
            if a == b:
                raise ValueError(f"self-loop on vertex {a}")
            succ[a].add(b)
        self.n = n
        self.succ: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in succ)
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n or len(set(labels)) != n:
                raise ValueError("labels must be n distinct strings")
        self.labels: tuple[str, ...] | None = labels

    @classmethod
    def from_labeled_edges(
        cls,
        edges: Iterable[tuple[str, str]],
        vertices: Iterable[str] = (),
    ) -> Digraph:
        """Build a graph from label pairs; ids follow first appearance,
        with ``vertices`` (if given) appearing before any edge endpoint."""
        index: dict[str, int] = {}

        def vid(label: str) -> int:
            if label not in index:
                index[label] = len(index)
            return index[label]

        for v in vertices:
            vid(v)
        pairs = [(vid(a), vid(b)) for a, b in edges]
        return cls(len(index), pairs, labels=list(index))

    # -- views -----------------------------------------------------------

    @cached_property
    def pred(self) -> tuple[tuple[int, ...], ...]:
        pred: list[list[int]] = [[] for _ in range(self.n)]
        for a, succ in enumerate(self.succ):
            for b in succ:
                pred[b].append(a)
        return tuple(tuple(p) for p in pred)

    @cached_property
    def succ_mask(self) -> tuple[int, ...]:
        return tuple(mask(s) for s in self.succ)

    @cached_property
    def pred_mask(self) -> tuple[int, ...]:
        return tuple(mask(p) for p in self.pred)

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges())

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> Iterable[tuple[int, int]]:
        for a, succ in enumerate(self.succ):
            for b in succ:
                yield a, b

    @property
    def m(self) -> int:
        return sum(len(s) for s in self.succ)

    def has_edge(self, a: int, b: int) -> bool:
        return (self.succ_mask[a] >> b) & 1 == 1

    def adjacent(self, a: int, b: int) -> bool:
        return self.has_edge(a, b) or self.has_edge(b, a)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def vertex(self, label: str) -> int:
        """Inverse of :meth:`label`."""
        if self.labels is None:
            v = int(label)
            if not 0 <= v < self.n:
                raise KeyError(label)
            return v
        return self._label_index[label]

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.labels or ())}

    def with_edges(self, edges: Iterable[tuple[int, int]]) -> Digraph:
        """Same vertices and labels, new edge set."""
        return Digraph(self.n, edges, self.labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return (self.n, self.succ, self.labels) == (other.n, other.succ, other.labels)

    def __hash__(self) -> int:
        return hash((self.n, self.succ, self.labels))

    def __repr__(self) -> str:
        shown = ", ".join(f"{self.label(a)}->{self.label(b)}" for a, b in self.edges())
        return f"Digraph(n={self.n}, edges=[{shown}])"


class Partition:
    """Disjoint non-empty blocks covering ``0 .. n-1``.

    Blocks keep the order they were given in; block ``i`` becomes vertex
    ``i`` of any quotient built from the partition.
    """

    def __init__(self, n: int, blocks: Iterable[Iterable[int]]) -> None:
        self.n = n
        self.blocks: tuple[frozenset[int], ...] = tuple(frozenset(b) for b in blocks)
        block_of = [-1] * n
        for i, block in enumerate(self.blocks):
            if not block:
                raise ValueError("empty block")
            for v in block:
                if not 0 <= v < n:
                    raise ValueError(f"vertex {v} outside 0..{n - 1}")
                if block_of[v] != -1:
                    raise ValueError(f"vertex {v} appears in two blocks")
                block_of[v] = i
        if -1 in block_of:
            raise ValueError(f"vertex {block_of.index(-1)} not covered")
        self.block_of: tuple[int, ...] = tuple(block_of)

    @classmethod
    def singletons(cls, n: int) -> Partition:
        return cls(n, ([v] for v in range(n)))

    def __len__(self) -> int:
        return len(self.blocks)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.n == other.n and set(self.blocks) == set(other.blocks)

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.blocks)))

    def __repr__(self) -> str:
        return f"Partition({[sorted(b) for b in self.blocks]})"


# -- closures, complements, predicates ----------------------------------


def inverse(g: Digraph) -> Digraph:
    return g.with_edges((b, a) for a, b in g.edges())


def undirected_closure(g: Digraph) -> Digraph:
    return g.with_edges(e for a, b in g.edges() for e in ((a, b), (b, a)))


def complement(g: Digraph) -> Digraph:
    full = g.all_mask
    return g.with_edges(
        (a, b)
        for a in range(g.n)
        for b in bits(full & ~g.succ_mask[a] & ~(1 << a))
    )


def undirected_complement(g: Digraph) -> Digraph:
    return complement(undirected_closure(g))


def is_undirected(g: Digraph) -> bool:
    return g.succ_mask == g.pred_mask


def is_oriented(g: Digraph) -> bool:
    return all(g.succ_mask[v] & g.pred_mask[v] == 0 for v in range(g.n))


def is_transitive(g: Digraph) -> bool:
    sm = g.succ_mask
    for a in range(g.n):
        reach = 0
        for b in g.succ[a]:
            reach |= sm[b]
        if reach & ~(1 << a) & ~sm[a]:
            return False
    return True


def is_acyclic(g: Digraph) -> bool:
    return len(topological_order(g, strict=False)) == g.n


def topological_order(g: Digraph, strict: bool = True) -> list[int]:
    """Kahn's algorithm, taking the smallest ready vertex first.

    With ``strict`` a cycle raises :class:`CyclicInputError`; otherwise the
    returned list is simply shorter than ``n``.
    """
    indeg = [len(p) for p in g.pred]
    ready = [v for v in range(g.n) if indeg[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for w in g.succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    if strict and len(order) != g.n:
        raise CyclicInputError("graph contains a cycle")
    return order


def descendants_masks(g: Digraph) -> list[int]:
    """For every vertex, the bitset of vertices reachable by a non-empty path.

    A vertex on a cycle is its own descendant.
    """
    sm = g.succ_mask
    out = []
    for s in range(g.n):
        seen = 0
        frontier = sm[s]
        while frontier:
            seen |= frontier
            nxt = 0
            for v in bits(frontier):
                nxt |= sm[v]
            frontier = nxt & ~seen
        out.append(seen)
    return out


def transitive_closure(g: Digraph) -> Digraph:
    reach = descendants_masks(g)
    return g.with_edges((a, b) for a in range(g.n) for b in bits(reach[a] & ~(1 << a)))


def transitive_reduction(g: Digraph) -> Digraph:
    """Unique minimal subgraph with the same closure; DAGs only."""
    if not is_acyclic(g):
        raise CyclicInputError("transitive reduction requires an acyclic graph")
    reach = descendants_masks(g)
    kept = []
    for a in range(g.n):
        covered = 0
        for c in g.succ[a]:
            covered |= reach[c]
        kept.extend((a, b) for b in bits(g.succ_mask[a] & ~covered))
    return g.with_edges(kept)


def strongly_connected_components(g: Digraph) -> list[list[int]]:
    """Iterative Tarjan; components in reverse topological order."""
    index = [-1] * g.n
    low = [0] * g.n
    on_stack = [False] * g.n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(g.n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            succ = g.succ[v]
            if i < len(succ):
                work[-1] = (v, i + 1)
                w = succ[i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def quotient_graph(g: Digraph, p: Partition) -> Digraph:
    """Merge each block into one vertex.

    Edges inside a block vanish and parallel edges between blocks collapse.
    No module check is made; see :func:`transmod.modules.quotient` for the
    checked version.  Labels of merged blocks are the member labels joined
    by ``+`` in ascending id order.
    """
    if p.n != g.n:
        raise ValueError("partition does not match graph")
    bo = p.block_of
    edges = {(bo[a], bo[b]) for a, b in g.edges() if bo[a] != bo[b]}
    labels = None
    if g.labels is not None:
        labels = ["+".join(g.label(v) for v in sorted(b)) for b in p.blocks]
    return Digraph(len(p), edges, labels)


def scc_contract(g: Digraph) -> tuple[Digraph, Partition]:
    """Contract strongly connected components.

    Blocks are listed by their smallest vertex, so acyclic inputs come back
    with the identity partition and an equal graph.
    """
    comps = sorted(strongly_connected_components(g))
    p = Partition(g.n, comps)
    q = quotient_graph(g, p)
    if all(len(b) == 1 for b in p.blocks):
        q = g
    return q, p


def induced_subgraph(g: Digraph, vertices: Sequence[int]) -> Digraph:
    """Subgraph on ``vertices``; vertex ``i`` of the result is ``vertices[i]``."""
    pos = {v: i for i, v in enumerate(vertices)}
    edges = [(pos[a], pos[b]) for a in vertices for b in g.succ[a] if b in pos]
    labels = [g.label(v) for v in vertices] if g.labels is not None else None
    return Digraph(len(vertices), edges, labels)
