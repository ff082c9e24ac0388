"""Modular decomposition of directed graphs through their transitive closures.

The main entry points:

* :func:`decompose_digraph` / :func:`decompose_via_reduction` build the
  decomposition tree of ``G*`` (directly, or after applying the flow rules).
* :func:`reduce` applies the sequential and parallel merge rules.
* :func:`orient_complement` finds a transitive orientation of the
  complement of ``U(G*)``.
* :func:`build_permrep` / :func:`reachable` index ``G*`` by two linear
  orders for constant-time reachability.
"""

from .edgelist import parse_edge_list, serialize_edge_list
from .errors import (
    CyclicInputError,
    GraphError,
    InputError,
    NotComparabilityError,
    NotTransitiveError,
    NotUndirectedError,
    ParseError,
    SelfLoopError,
)
from .graph import (
    Digraph,
    Partition,
    complement,
    scc_contract,
    transitive_closure,
    transitive_reduction,
    undirected_closure,
    undirected_complement,
)
from .mdtree import (
    MDNode,
    decompose_digraph,
    decompose_transitive_dag,
    decompose_undirected,
    format_tree,
)
from .modules import ModuleKind, all_modules, is_module, strong_modules
from .orient import Source, implication_classes, orient_complement, transitive_orientation
from .permrep import PermRep, build_permrep, reachable
from .reduce import Kernel, decompose_via_reduction, reduce

__all__ = [
    "CyclicInputError",
    "Digraph",
    "GraphError",
    "InputError",
    "Kernel",
    "MDNode",
    "ModuleKind",
    "NotComparabilityError",
    "NotTransitiveError",
    "NotUndirectedError",
    "ParseError",
    "Partition",
    "PermRep",
    "SelfLoopError",
    "Source",
    "all_modules",
    "build_permrep",
    "complement",
    "decompose_digraph",
    "decompose_transitive_dag",
    "decompose_undirected",
    "decompose_via_reduction",
    "format_tree",
    "implication_classes",
    "is_module",
    "orient_complement",
    "parse_edge_list",
    "reachable",
    "reduce",
    "scc_contract",
    "serialize_edge_list",
    "strong_modules",
    "transitive_closure",
    "transitive_orientation",
    "transitive_reduction",
    "undirected_closure",
    "undirected_complement",
]
