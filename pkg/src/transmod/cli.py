"""Command-line front end.

Exit status: 0 on success, 1 on domain failures (e.g. a graph that has no
transitive orientation), 2 on usage errors and malformed input.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from typing import TextIO

from . import graph as gc
from .edgelist import decode_input, graph_to_dot, parse_edge_list, serialize_edge_list
from .errors import GraphError, InputError, NotComparabilityError
from .mdtree import decompose_digraph, decompose_undirected, format_tree, serialize_tree, tree_to_dot
from .modules import all_modules, module_kind, nontrivial, strong_modules
from .orient import Source, orient_complement, transitive_orientation
from .permrep import PermRep, build_permrep, reachable
from .reduce import decompose_via_reduction, reduce


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse prints usage and exits 2
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        data = sys.stdin.buffer.read()
    else:
        try:
            with open(path, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise InputError(0, f"cannot read {path}: {exc.strerror}") from None
    return decode_input(data)


def _load(args) -> gc.Digraph:
    args.graph = parse_edge_list(_read(args.input), undirected=args.undirected)
    return args.graph


def _names(g: gc.Digraph, vs) -> str:
    return "{" + ",".join(g.label(v) for v in sorted(vs)) + "}"


def _emit_graph(g: gc.Digraph, fmt: str, out: TextIO) -> None:
    out.write(graph_to_dot(g) if fmt == "dot" else serialize_edge_list(g))


def _emit_tree(t, g: gc.Digraph, fmt: str, out: TextIO) -> None:
    if fmt == "dot":
        out.write(tree_to_dot(t, g))
    elif fmt == "structured":
        out.write(serialize_tree(t, g))
    else:
        out.write(format_tree(t, g) + "\n")


# -- subcommands -----------------------------------------------------------


def cmd_decompose(args, out: TextIO) -> None:
    g = _load(args)
    if args.mode == "undirected":
        t = decompose_undirected(gc.undirected_closure(g))
    elif args.method == "reduction":
        t = decompose_via_reduction(g, pre_reduce=args.pre_reduce)
    else:
        t = decompose_digraph(g)
    _emit_tree(t, g, args.format, out)


def cmd_reduce(args, out: TextIO) -> None:
    g = _load(args)
    dag, p = gc.scc_contract(g) if args.contract_sccs else (g, gc.Partition.singletons(g.n))
    if args.pre_reduce:
        dag = gc.transitive_reduction(dag)
    k = reduce(dag)
    out.write("# kernel\n")
    _emit_graph(k.graph, "text", out)
    out.write("# fragments\n")
    for i, frag in enumerate(k.fragments):
        out.write(f"fragment {k.graph.label(i)}\n")
        _emit_tree(frag, dag, args.format if args.format != "dot" else "structured", out)
    if args.trace:
        out.write("# trace\n")
        names = {v: dag.label(v) for v in range(dag.n)}
        for step in k.log:
            names[step.merged] = f"{names[step.left]}+{names[step.right]}"
            out.write(f"{step.rule} {names[step.left]} {names[step.right]} -> {step.merged}\n")


def _orientation_lines(g: gc.Digraph, o: gc.Digraph, source: Source) -> str:
    lines = [f"source: {source.value}"]
    lines += [f"{g.label(a)} {g.label(b)}" for a, b in o.edges()]
    return "\n".join(lines) + "\n"


def cmd_orient(args, out: TextIO) -> None:
    g = _load(args)
    if args.target == "complement-of-closure":
        o, source = orient_complement(g)
    elif args.target == "complement-of-input":
        o, source = transitive_orientation(gc.undirected_complement(g)), Source.DIRECT
    else:
        o, source = transitive_orientation(gc.undirected_closure(g)), Source.DIRECT
    out.write(_orientation_lines(g, o, source))


def cmd_permrep_build(args, out: TextIO) -> None:
    g = _load(args)
    if args.contract_sccs:
        g, _ = gc.scc_contract(g)
    out.write(build_permrep(g).to_text())


def cmd_permrep_query(args, out: TextIO) -> None:
    pr = PermRep.from_text(_read(args.orders))
    out.write("true\n" if reachable(pr, pr.vertex(args.u), pr.vertex(args.v)) else "false\n")


def cmd_oracle(args, out: TextIO) -> None:
    g = _load(args)
    if args.of == "closure":
        g = gc.transitive_closure(g)
    elif args.of == "undirected":
        g = gc.undirected_closure(g)
    mods = nontrivial(all_modules(g, bound=args.bound), g.n)
    strong = nontrivial(strong_modules(g, bound=args.bound), g.n)
    key = lambda s: (len(s), sorted(s))  # noqa: E731
    for s in sorted(mods, key=key):
        out.write(f"module {_names(g, s)}\n")
    for s in sorted(strong, key=key):
        out.write(f"strong {_names(g, s)} {module_kind(g, s, bound=args.bound).value}\n")


def cmd_closure(args, out: TextIO) -> None:
    g = _load(args)
    h = gc.transitive_reduction(g) if args.reduce else gc.transitive_closure(g)
    _emit_graph(h, args.format, out)


def cmd_complement(args, out: TextIO) -> None:
    g = _load(args)
    if args.of == "closure":
        g = gc.transitive_closure(g)
    h = gc.undirected_complement(g) if args.undirected_complement else gc.complement(g)
    _emit_graph(h, args.format, out)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="transmod", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, fn, help, formats=("text", "dot"), aliases=()):
        p = sub.add_parser(name, help=help, aliases=list(aliases))
        p.set_defaults(func=fn)
        p.add_argument("input", nargs="?", default="-", help="edge-list file (default: stdin)")
        p.add_argument("--undirected", action="store_true", help="add the inverse of every input edge")
        p.add_argument("--format", choices=formats, default=formats[0])
        return p

    p = command("decompose", cmd_decompose, "modular decomposition of the transitive closure",
                formats=("text", "structured", "dot"))
    p.add_argument("--mode", choices=("closure", "undirected"), default="closure",
                   help="decompose the closure (default) or the undirected closure of the input")
    p.add_argument("--method", choices=("direct", "reduction"), default="reduction")
    p.add_argument("--pre-reduce", action="store_true", help="transitively reduce before the flow rules")

    p = command("reduce", cmd_reduce, "apply the flow rules and print kernel and fragments",
                formats=("text", "structured"))
    p.add_argument("--trace", action="store_true", help="print the merge log")
    p.add_argument("--contract-sccs", action="store_true")
    p.add_argument("--pre-reduce", action="store_true")

    p = command("orient", cmd_orient, "transitive orientation", formats=("text",))
    p.add_argument("--target", choices=("complement-of-closure", "complement-of-input", "input"),
                   default="complement-of-closure")

    p = command("permrep-build", cmd_permrep_build, "two linear orders indexing the closure",
                formats=("text",))
    p.add_argument("--contract-sccs", action="store_true", help="index SCC representatives of a cyclic input")

    p = sub.add_parser("permrep-query", help="reachability query against an order file")
    p.set_defaults(func=cmd_permrep_query)
    p.add_argument("orders")
    p.add_argument("u")
    p.add_argument("v")

    permrep = sub.add_parser("permrep", help="build or query a permutation representation")
    psub = permrep.add_subparsers(dest="action", required=True, parser_class=_Parser)
    pb = psub.add_parser("build")
    pb.set_defaults(func=cmd_permrep_build, format="text")
    pb.add_argument("input", nargs="?", default="-")
    pb.add_argument("--undirected", action="store_true")
    pb.add_argument("--contract-sccs", action="store_true")
    pq = psub.add_parser("query")
    pq.set_defaults(func=cmd_permrep_query)
    pq.add_argument("orders")
    pq.add_argument("u")
    pq.add_argument("v")

    p = command("oracle", cmd_oracle, "brute-force module listing (small graphs)", formats=("text",))
    p.add_argument("--of", choices=("closure", "input", "undirected"), default="closure")
    p.add_argument("--bound", type=int, default=14)

    p = command("closure", cmd_closure, "transitive closure (or reduction) as an edge list")
    p.add_argument("--reduce", action="store_true", help="print the transitive reduction instead")

    p = command("complement", cmd_complement, "complement as an edge list")
    p.add_argument("--of", choices=("input", "closure"), default="input")
    p.add_argument("--undirected-complement", action="store_true",
                   help="complement of the undirected closure")
    return parser


def _describe_witness(exc: NotComparabilityError, g: gc.Digraph | None) -> str:
    kind, data = exc.witness
    name = g.label if g is not None else str
    if kind == "triple":
        return "witness triple: " + " ".join(name(v) for v in data)
    edges = " ".join(f"{name(a)}->{name(b)}" for a, b in sorted(data))
    return f"witness class: {edges}"


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        args.func(args, out)
    except InputError as exc:
        print(f"transmod: {exc}", file=sys.stderr)
        return 2
    except NotComparabilityError as exc:
        witness = _describe_witness(exc, getattr(args, "graph", None))
        print(f"transmod: not a comparability graph: {exc}; {witness}", file=sys.stderr)
        return 1
    except GraphError as exc:
        print(f"transmod: {exc}", file=sys.stderr)
        return 1
    return 0


def console_entry() -> None:
    sys.exit(main())
