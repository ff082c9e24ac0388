"""Brute-force module machinery.

Everything here enumerates subsets, so it only runs on small graphs
(``ORACLE_BOUND`` vertices by default).  It is deliberately naive: the rest
of the package is tested against it.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from collections.abc import Iterable

from .errors import NotAModuleError, NotCongruenceError, OracleBoundExceeded
from .graph import (
    Digraph,
    Partition,
    bits,
    induced_subgraph,
    is_transitive,
    mask,
    quotient_graph,
)

ORACLE_BOUND = 14


class ModuleKind(enum.Enum):
    PRIME = "prime"
    SERIES = "series"
    PARALLEL = "parallel"
    ORDERED = "ordered"


def _as_mask(g: Digraph, m: Iterable[int] | int) -> int:
    mm = m if isinstance(m, int) else mask(m)
    if mm == 0:
        raise ValueError("module candidates must be non-empty")
    if mm & ~g.all_mask:
        raise ValueError("module candidate contains vertices outside the graph")
    return mm


def _check_bound(g: Digraph, bound: int) -> None:
    if g.n > bound:
        raise OracleBoundExceeded(f"oracle limited to {bound} vertices, graph has {g.n}")


def splitters(g: Digraph, m: Iterable[int] | int) -> list[int]:
    """Vertices outside ``m`` that see its members differently."""
    mm = _as_mask(g, m)
    out = []
    for x in bits(g.all_mask & ~mm):
        s = g.succ_mask[x] & mm
        p = g.pred_mask[x] & mm
        if s not in (0, mm) or p not in (0, mm):
            out.append(x)
    return out


def is_module(g: Digraph, m: Iterable[int] | int) -> bool:
    return not splitters(g, m)


def overlap(a: int, b: int) -> bool:
    return bool(a & b) and bool(a & ~b) and bool(b & ~a)


# graphs are immutable and hashable, so repeated queries on one graph share work
@lru_cache(maxsize=32)
def _module_masks(g: Digraph) -> tuple[int, ...]:
    return tuple(m for m in range(1, 1 << g.n) if is_module(g, m))


@lru_cache(maxsize=32)
def _strong_masks(g: Digraph) -> tuple[int, ...]:
    modules = _module_masks(g)
    return tuple(m for m in modules if not any(overlap(m, x) for x in modules))


def all_modules(g: Digraph, bound: int = ORACLE_BOUND) -> set[frozenset[int]]:
    _check_bound(g, bound)
    return {frozenset(bits(m)) for m in _module_masks(g)}


def strong_modules(g: Digraph, bound: int = ORACLE_BOUND) -> set[frozenset[int]]:
    _check_bound(g, bound)
    return {frozenset(bits(m)) for m in _strong_masks(g)}


def nontrivial(sets: Iterable[frozenset[int]], n: int) -> set[frozenset[int]]:
    """Drop ``V`` and the singletons."""
    return {s for s in sets if 1 < len(s) < n}


def quotient(g: Digraph, p: Partition) -> Digraph:
    """Quotient by a congruence partition; every block must be a module."""
    for block in p.blocks:
        if not is_module(g, block):
            raise NotCongruenceError(f"block {sorted(block)} is not a module")
    return quotient_graph(g, p)


def _require_module(g: Digraph, mm: int) -> None:
    if not is_module(g, mm):
        raise NotAModuleError(f"{bits(mm)} is not a module")


def minimal_strong_superset(g: Digraph, m: Iterable[int], bound: int = ORACLE_BOUND) -> frozenset[int]:
    _check_bound(g, bound)
    mm = _as_mask(g, m)
    _require_module(g, mm)
    supersets = [s for s in _strong_masks(g) if s & mm == mm]
    return frozenset(bits(min(supersets, key=int.bit_count)))


def child_partition(g: Digraph, m: Iterable[int], bound: int = ORACLE_BOUND) -> list[frozenset[int]]:
    """Maximal strong modules of ``g`` properly contained in the module ``m``."""
    _check_bound(g, bound)
    mm = _as_mask(g, m)
    _require_module(g, mm)
    inside = [s for s in _strong_masks(g) if s & mm == s and s != mm]
    maximal = [s for s in inside if not any(s != t and s & t == s for t in inside)]
    return sorted((frozenset(bits(s)) for s in maximal), key=min)


def classify_quotient(q: Digraph) -> ModuleKind:
    """Kind of a child quotient graph with at least two vertices."""
    n = q.n
    pairs = n * (n - 1)
    if q.m == 0:
        return ModuleKind.PARALLEL
    if q.m == pairs:
        return ModuleKind.SERIES
    if 2 * q.m == pairs and all(q.adjacent(a, b) for a in range(n) for b in range(a + 1, n)):
        # a tournament; total order iff transitive
        if is_transitive(q):
            return ModuleKind.ORDERED
    return ModuleKind.PRIME


def module_kind(g: Digraph, m: Iterable[int], bound: int = ORACLE_BOUND) -> ModuleKind:
    members = sorted(set(m))
    if len(members) < 2:
        raise ValueError("module kinds are defined for modules of size two or more")
    blocks = child_partition(g, members, bound)
    sub = induced_subgraph(g, members)
    pos = {v: i for i, v in enumerate(members)}
    p = Partition(len(members), ([pos[v] for v in b] for b in blocks))
    return classify_quotient(quotient_graph(sub, p))
