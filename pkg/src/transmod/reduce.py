"""Sequential/parallel flow reduction.

Two rules shrink a digraph before any closure is computed:

* ``seq(a, b)``: ``b`` is the only successor of ``a`` and ``a`` the only
  predecessor of ``b``; the merged vertex is an ordered module of the closure.
* ``par(a, b)``: ``a`` and ``b`` have identical predecessor and successor
  sets; the merged vertex is a parallel module of the closure.

The rules are applied until neither fires.  The result does not depend on
the order of application, so the engine uses a FIFO worklist for
reproducible traces and accepts a ``random.Random`` to shuffle the order for
testing.  Parallel candidates are located through a table keyed on XOR
signatures of the neighbour sets; sets are always compared exactly before a
merge happens.
"""

from __future__ import annotations

import hashlib
import random
from collections.abc import Callable
from dataclasses import dataclass

from .errors import EmptyGraphError
from .graph import (
    Digraph,
    Partition,
    scc_contract,
    transitive_closure,
    transitive_reduction,
)
from .mdtree import MDNode, decompose_transitive_dag, expand_sccs, leaf, prune
from .modules import ModuleKind

__all__ = [
    "MergeStep",
    "Kernel",
    "hash_basis",
    "seq_applicable",
    "par_applicable",
    "reduce",
    "reduce_contracted",
    "decompose_via_reduction",
]

HASH_KEY = b"transmod-flow-signature-v1"


def hash_basis(v: int) -> int:
    """128-bit keyed hash of a super-vertex id."""
    digest = hashlib.blake2b(v.to_bytes(8, "little"), digest_size=16, key=HASH_KEY).digest()
    return int.from_bytes(digest, "little")


@dataclass(frozen=True)
class MergeStep:
    rule: str  # "seq" or "par"
    left: int
    right: int
    merged: int


@dataclass(frozen=True)
class Kernel:
    """Irreducible graph plus one fragment tree per kernel vertex.

    Kernel vertex ``i`` stands for the leaves of ``fragments[i]``; kernel
    vertices are numbered by their smallest original vertex.  The merge log
    uses engine ids: ``0 .. n-1`` for input vertices, then one fresh id per
    merge.
    """

    graph: Digraph
    fragments: tuple[MDNode, ...]
    log: tuple[MergeStep, ...]
    n: int

    def partition(self) -> Partition:
        return Partition(self.n, (f.vertices for f in self.fragments))


def seq_applicable(g: Digraph, a: int, b: int) -> bool:
    return a != b and g.succ[a] == (b,) and g.pred[b] == (a,)


def par_applicable(g: Digraph, a: int, b: int) -> bool:
    return a != b and g.pred[a] == g.pred[b] and g.succ[a] == g.succ[b]


def _combine(kind: ModuleKind, a: MDNode, b: MDNode) -> MDNode:
    parts: list[MDNode] = []
    for f in (a, b):
        if f.kind is kind:
            parts.extend(f.children)
        else:
            parts.append(f)
    return MDNode(kind, tuple(parts))


class _Engine:
    def __init__(
        self,
        g: Digraph,
        rng: random.Random | None,
        basis: Callable[[int], int],
        check_exclusive: bool,
    ) -> None:
        self.n = g.n
        self.rng = rng
        self.basis = basis
        self.check_exclusive = check_exclusive
        self.succ = {v: set(g.succ[v]) for v in range(g.n)}
        self.pred = {v: set(g.pred[v]) for v in range(g.n)}
        self.frag = {v: leaf(v) for v in range(g.n)}
        self.next_id = g.n
        self.ssig: dict[int, int] = {}
        self.psig: dict[int, int] = {}
        self.index: dict[tuple[int, int], set[int]] = {}
        for v in range(g.n):
            self.ssig[v] = self._sig(self.succ[v])
            self.psig[v] = self._sig(self.pred[v])
            self.index.setdefault(self._key(v), set()).add(v)
        self.pending: list[tuple[str, int, int]] = []
        self.queued: set[tuple[str, int, int]] = set()
        self.log: list[MergeStep] = []

    def _sig(self, vs: set[int]) -> int:
        s = 0
        for v in vs:
            s ^= self.basis(v)
        return s

    def _key(self, v: int) -> tuple[int, int]:
        return self.psig[v], self.ssig[v]

    def _unindex(self, v: int) -> None:
        key = self._key(v)
        bucket = self.index[key]
        bucket.discard(v)
        if not bucket:
            del self.index[key]

    # -- rule predicates on the live graph ------------------------------

    def is_seq(self, a: int, b: int) -> bool:
        return a != b and self.succ[a] == {b} and self.pred[b] == {a}

    def is_par(self, a: int, b: int) -> bool:
        return a != b and self.pred[a] == self.pred[b] and self.succ[a] == self.succ[b]

    def _push(self, rule: str, a: int, b: int) -> None:
        item = (rule, a, b)
        if item not in self.queued:
            self.queued.add(item)
            self.pending.append(item)

    def _candidates(self, v: int) -> None:
        if len(self.succ[v]) == 1:
            (s,) = self.succ[v]
            if self.pred[s] == {v}:
                self._push("seq", v, s)
        if len(self.pred[v]) == 1:
            (p,) = self.pred[v]
            if self.succ[p] == {v}:
                self._push("seq", p, v)
        for w in sorted(self.index.get(self._key(v), ())):
            if self.is_par(v, w):
                self._push("par", v, w)
                break

    def seed(self) -> None:
        for v in sorted(self.succ):
            if len(self.succ[v]) == 1:
                (s,) = self.succ[v]
                if self.pred[s] == {v}:
                    self._push("seq", v, s)
        for _key, bucket in sorted(self.index.items(), key=lambda kv: min(kv[1])):
            groups: dict[tuple[frozenset, frozenset], list[int]] = {}
            for v in sorted(bucket):
                groups.setdefault((frozenset(self.pred[v]), frozenset(self.succ[v])), []).append(v)
            for members in groups.values():
                for a, b in zip(members, members[1:]):
                    self._push("par", a, b)

    # -- merging ------------------------------------------------------------

    def _retarget(self, x: int, sets: dict[int, set[int]], sigs: dict[int, int], a: int, b: int, c: int) -> None:
        self._unindex(x)
        s = sets[x]
        for old in (a, b):
            if old in s:
                s.discard(old)
                sigs[x] ^= self.basis(old)
        s.add(c)
        sigs[x] ^= self.basis(c)
        self.index.setdefault(self._key(x), set()).add(x)

    def merge(self, rule: str, a: int, b: int) -> int:
        c = self.next_id
        self.next_id += 1
        pred_c = (self.pred[a] | self.pred[b]) - {a, b}
        succ_c = (self.succ[a] | self.succ[b]) - {a, b}
        for v in (a, b):
            self._unindex(v)
        for x in pred_c:
            self._retarget(x, self.succ, self.ssig, a, b, c)
        for y in succ_c:
            self._retarget(y, self.pred, self.psig, a, b, c)
        kind = ModuleKind.ORDERED if rule == "seq" else ModuleKind.PARALLEL
        self.frag[c] = _combine(kind, self.frag.pop(a), self.frag.pop(b))
        for v in (a, b):
            del self.succ[v], self.pred[v], self.ssig[v], self.psig[v]
        self.succ[c] = succ_c
        self.pred[c] = pred_c
        self.ssig[c] = self._sig(succ_c)
        self.psig[c] = self._sig(pred_c)
        self.index.setdefault(self._key(c), set()).add(c)
        self.log.append(MergeStep(rule, a, b, c))
        self._candidates(c)
        for x in sorted(pred_c | succ_c):
            self._candidates(x)
        return c

    def assert_exclusive(self) -> None:
        verts = sorted(self.succ)
        for a in verts:
            if len(self.succ[a]) != 1:
                continue
            (b,) = self.succ[a]
            if self.pred[b] != {a}:
                continue
            for x in verts:
                if self.is_par(a, x) or self.is_par(b, x):
                    raise AssertionError(f"vertex in both seq({a}, {b}) and a par pair with {x}")

    def run(self) -> None:
        while True:
            self.seed()
            if not self.pending:
                return
            while self.pending:
                i = self.rng.randrange(len(self.pending)) if self.rng is not None else 0
                item = self.pending.pop(i)
                self.queued.discard(item)
                rule, a, b = item
                if a not in self.succ or b not in self.succ:
                    continue
                ok = self.is_seq(a, b) if rule == "seq" else self.is_par(a, b)
                if not ok:
                    continue
                if self.check_exclusive:
                    self.assert_exclusive()
                self.merge(rule, a, b)
            if self.check_exclusive:
                self.assert_exclusive()

    def kernel(self, g: Digraph) -> Kernel:
        alive = sorted(self.succ, key=lambda v: self.frag[v].min_vertex)
        pos = {v: i for i, v in enumerate(alive)}
        edges = [(pos[a], pos[b]) for a in alive for b in self.succ[a]]
        labels = None
        if g.labels is not None:
            labels = _unique(["+".join(g.label(x) for x in sorted(self.frag[v].vertices)) for v in alive])
        kg = Digraph(len(alive), edges, labels)
        return Kernel(kg, tuple(self.frag[v] for v in alive), tuple(self.log), g.n)


def _unique(labels: list[str]) -> list[str]:
    if len(set(labels)) == len(labels):
        return labels
    return [f"{s}#{i}" for i, s in enumerate(labels)]


def reduce(
    g: Digraph,
    rng: random.Random | None = None,
    basis: Callable[[int], int] = hash_basis,
    check_exclusive: bool = False,
) -> Kernel:
    """Apply both flow rules until neither fires.

    ``rng`` picks the next candidate at random instead of FIFO; ``basis``
    replaces the per-vertex signature hash (tests use it to force
    collisions); ``check_exclusive`` asserts before every merge that no
    vertex takes part in both a seq and a par application.
    """
    eng = _Engine(g, rng, basis, check_exclusive)
    eng.run()
    return eng.kernel(g)


def reduce_contracted(g: Digraph, pre_reduce: bool = False) -> tuple[Kernel, Partition]:
    """Contract SCCs, optionally transitively reduce, then :func:`reduce`.

    Returns the kernel (over contracted vertices) and the SCC partition.
    """
    dag, p = scc_contract(g)
    if pre_reduce:
        dag = transitive_reduction(dag)
    return reduce(dag), p


def decompose_via_reduction(g: Digraph, pre_reduce: bool = False) -> MDNode:
    """Decomposition tree of the closure of ``g``, reducing before closing.

    Only the kernel is ever transitively closed.  With ``pre_reduce`` the
    contracted graph is transitively reduced first, which guarantees that
    every prime-free module collapses during reduction.
    """
    if g.n == 0:
        raise EmptyGraphError("the empty graph has no decomposition tree")
    k, p = reduce_contracted(g, pre_reduce)
    if k.graph.n == 1:
        t = k.fragments[0]
    else:
        kt = decompose_transitive_dag(transitive_closure(k.graph))
        t = kt.map_leaves(lambda i: k.fragments[i])
    return prune(expand_sccs(t, p))
