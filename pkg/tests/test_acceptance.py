"""Acceptance checks, one per criterion.

Each test prints a ``PASS``/``FAIL`` line (visible in ``pytest -v`` output and
when run as a script) and then asserts.  Random inputs are seeded.
"""

from __future__ import annotations

import io
import random
import sys
import time
from pathlib import Path

import pytest

from transmod.cli import main as cli_main
from transmod.edgelist import decode_input, parse_edge_list
from transmod.errors import InputError, NotComparabilityError
from transmod.graph import (
    Digraph,
    transitive_closure,
    undirected_closure,
    undirected_complement,
)
from transmod.mdtree import decompose_digraph, decompose_undirected, format_tree, node_sets
from transmod.modules import ModuleKind, nontrivial, strong_modules
from transmod.orient import (
    Source,
    implication_classes,
    orient_complement,
    restrict,
    transitive_orientation,
)
from transmod.permrep import build_permrep, reachable
from transmod.reduce import decompose_via_reduction, reduce, reduce_contracted

sys.path.insert(0, str(Path(__file__).parent))
from conftest import load, random_dag, random_digraph  # noqa: E402
from oracles import is_transitive_triple, reach_pairs, strong_sets  # noqa: E402
from test_reduce import compose  # noqa: E402

TIME_LIMIT = 60.0
_capsys = None


@pytest.fixture(autouse=True)
def _uncaptured(capsys):
    global _capsys
    _capsys = capsys
    yield
    _capsys = None


def report(number: int, title: str, ok: bool, detail: str, elapsed: float) -> None:
    status = "PASS" if ok else "FAIL"
    line = f"[{status}] criterion {number}: {title} ({detail}; {elapsed:.2f}s)"
    if _capsys is None:
        print(line)
        return
    with _capsys.disabled():
        print("\n" + line)


def _check(number, title, fn):
    start = time.perf_counter()
    try:
        failures, detail = fn()
    except Exception as exc:  # a crash is a failure, reported like any other
        failures, detail = [repr(exc)], "raised"
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < TIME_LIMIT
    if elapsed >= TIME_LIMIT:
        detail += f"; exceeded {TIME_LIMIT:.0f}s"
    report(number, title, ok, detail, elapsed)
    assert not failures, failures[:5]
    assert elapsed < TIME_LIMIT


def _names(g, sets):
    return {"".join(sorted(g.label(v) for v in s)) for s in sets}


# -- criterion bodies ------------------------------------------------------


def c1():
    g1 = load("g1")
    bad = []
    tree = format_tree(decompose_digraph(g1), g1)
    want = "prime(ordered(A<D<G), series(B, C), parallel(E, F), H)"
    if tree != want:
        bad.append(f"tree {tree}")
    strong = _names(g1, nontrivial(strong_modules(transitive_closure(g1)), g1.n))
    if strong != {"ADG", "BC", "EF"}:
        bad.append(f"strong {sorted(strong)}")
    return bad, "tree and strong modules exact"


def c2():
    g3, g4 = load("g3"), load("g4")
    bad = []
    t3 = format_tree(decompose_undirected(undirected_closure(g3)), g3)
    if t3 != "series(parallel(series(A, C), D, E), B)":
        bad.append(f"U(G3) tree {t3}")
    t4 = decompose_digraph(g4)
    bc = frozenset({g4.vertex("B"), g4.vertex("C")})
    if not any(nd.kind is ModuleKind.SERIES and nd.vertices == bc for nd in t4.walk()):
        bad.append(f"G4 tree {format_tree(t4, g4)}")
    if bc in strong_modules(undirected_closure(g4)):
        bad.append("{B,C} strong in U(G4)")
    return bad, "exact"


def c3():
    rng = random.Random(3)
    bad = []
    for i in range(500):
        p = 0.1 + 0.8 * (i % 9) / 8
        g = transitive_closure(random_dag(rng, rng.randint(1, 9), p))
        edges = set(g.edges())
        lhs = strong_sets(g.n, edges)
        rhs = strong_sets(g.n, edges | {(b, a) for a, b in edges})
        if lhs != rhs or strong_modules(g) != lhs:
            bad.append(g)
    return bad, f"500 graphs, {len(bad)} violations"


def c4():
    g2 = load("g2")
    bad = []
    k = reduce(g2)
    names = {i: g2.label(i) for i in range(g2.n)}
    steps = []
    for s in k.log:
        steps.append(f"{s.rule} {names[s.left]} {names[s.right]}")
        names[s.merged] = names[s.left] + names[s.right]
    want = ["seq D F", "par B C", "seq BC E", "par BCE DF", "seq A BCEDF"]
    if k.graph.n != 1 or steps != want:
        bad.append(f"G2 trace {steps}")
    rng = random.Random(4)
    for _ in range(200):
        g = random_digraph(rng, rng.randint(1, 9), rng.random() * 0.5)
        base = reduce(g, check_exclusive=True)
        ref = (base.partition(), {(base.fragments[a].vertices, base.fragments[b].vertices) for a, b in base.graph.edges()})
        for _ in range(20):
            k = reduce(g, rng=random.Random(rng.random()), check_exclusive=True)
            got = (k.partition(), {(k.fragments[a].vertices, k.fragments[b].vertices) for a, b in k.graph.edges()})
            if got != ref:
                bad.append(g)
                break
    return bad, f"trace of 5 merges; 200x20 orders, {len(bad)} violations"


def c5():
    rng = random.Random(5)
    bad = []
    for _ in range(200):
        n = rng.randint(1, 14)
        g = Digraph(n, compose(rng, rng.sample(range(n), n)))
        if any(nd.kind is ModuleKind.PRIME for nd in decompose_digraph(g).walk()):
            bad.append(("generator produced a prime node", g))
            continue
        k, _ = reduce_contracted(g, pre_reduce=True)
        if k.graph.n != 1:
            bad.append(g)
    return bad, f"200 prime-free orders, {len(bad)} violations"


def c6():
    rng = random.Random(6)
    bad = []
    cyclic = 0
    for i in range(300):
        n = rng.randint(1, 10)
        g = random_digraph(rng, n, rng.choice([0.05, 0.1, 0.15, 0.2, 0.3, 0.45]))
        star = transitive_closure(g)
        oracle = strong_sets(n, set(star.edges()))
        direct = decompose_digraph(g)
        via = decompose_via_reduction(g)
        cyclic += any(star.has_edge(b, a) for a, b in star.edges())
        if via != direct or node_sets(direct) != oracle:
            bad.append(g)
    return bad, f"300 digraphs ({cyclic} cyclic), {len(bad)} violations"


def c7():
    g2, g5 = load("g2"), load("g5")
    bad = []
    cg2 = undirected_complement(transitive_closure(g2))
    singletons = [c for c in implication_classes(cg2) if len(c) == 1]
    labels = sorted(g2.label(a) + g2.label(b) for c in singletons for a, b in c)
    if labels != ["BC", "CB"] or len(implication_classes(cg2)) != 4:
        bad.append(f"unforced edges {labels}")
    try:
        transitive_orientation(undirected_complement(g5))
        bad.append("pentagon oriented")
    except NotComparabilityError as exc:
        kind, cls = exc.witness
        if kind != "class" or not any((b, a) in cls for a, b in cls):
            bad.append(f"witness {exc.witness}")
    target = undirected_complement(transitive_closure(g5))
    o = transitive_orientation(target)
    if not is_transitive_triple(set(o.edges())) or 2 * o.m != target.m:
        bad.append("G5* complement orientation invalid")
    _, source = orient_complement(g5)
    if source is not Source.DIRECT:
        bad.append("G5 not direct")
    return bad, "exact"


def c8():
    rng = random.Random(8)
    bad = []
    done = 0
    while done < 300:
        g = random_digraph(rng, rng.randint(1, 8), rng.choice([0.1, 0.2, 0.3, 0.4, 0.6]))
        cu = undirected_complement(g)
        try:
            lifted = transitive_orientation(cu)
        except NotComparabilityError:
            continue
        done += 1
        cstar = undirected_complement(transitive_closure(g))
        outer = {e: i for i, c in enumerate(implication_classes(cu)) for e in c}
        if any(len({outer[e] for e in c}) != 1 for c in implication_classes(cstar)):
            bad.append(("refinement", g))
        o = restrict(lifted, cstar)
        if 2 * o.m != cstar.m or not is_transitive_triple(set(o.edges())):
            bad.append(("transfer", g))
    return bad, f"300 graphs, {len(bad)} violations"


def c9():
    g2 = load("g2")
    bad = []
    o = transitive_orientation(undirected_complement(transitive_closure(g2)))
    if not o.has_edge(g2.vertex("B"), g2.vertex("C")):
        bad.append("seed orientation lacks B->C")
    pr = build_permrep(g2, orientation=o)
    orders = ["".join(pr.label(v) for v in lo.sequence) for lo in (pr.l1, pr.l2)]
    if orders != ["ABCEDF", "ADFCBE"]:
        bad.append(f"orders {orders}")
    rng = random.Random(9)
    done = 0
    while done < 300:
        g = random_dag(rng, rng.randint(1, 9), rng.random())
        try:
            pr = build_permrep(g)
        except NotComparabilityError:
            continue
        done += 1
        pairs = reach_pairs(g.n, set(g.edges()))
        if any(reachable(pr, u, v) != ((u, v) in pairs) for u in range(g.n) for v in range(g.n)):
            bad.append(g)
    # queries read two precomputed position tuples
    if not (isinstance(pr.l1.position, tuple) and isinstance(pr.l2.position, tuple)):
        bad.append("positions are not precomputed arrays")
    return bad, f"orders {'/'.join(orders)}; 300 DAGs, {len(bad)} violations"


def _cli(argv, stdin_bytes, tmp):
    tmp.write_bytes(stdin_bytes)
    return cli_main([*argv, str(tmp)], out=io.StringIO())


def c10(tmp_path):
    bad = []
    err = sys.stderr
    sys.stderr = io.StringIO()
    try:
        f = tmp_path / "in.txt"
        for text in (b"A A\n", b"A B\nB B\n", b"A B C\n", b"A \"B\"\n", b"A\\ B\n", b"A \xff\n", b"A\x01 B\n"):
            code = _cli(["decompose"], text, f)
            if code != 2 or "line" not in sys.stderr.getvalue():
                bad.append((text, code))
            sys.stderr = io.StringIO()
        rng = random.Random(10)
        pieces = [b"A", b"B", b"C", b" ", b"\t", b"\n", b"#", b"\"", b"\\", b"\x00", b"\xff", b"\xc3\xa9", b"AA"]
        rejected = 0
        for i in range(10_000):
            if i % 2:
                data = bytes(rng.randrange(256) for _ in range(rng.randint(0, 40)))
            else:
                data = b"".join(rng.choice(pieces) for _ in range(rng.randint(0, 25)))
            try:
                parse_edge_list(decode_input(data))
            except InputError:
                rejected += 1
            except Exception as exc:
                bad.append((data, repr(exc)))
            if i % 50 == 0:
                code = _cli(["closure"], data, f)
                if code not in (0, 2):
                    bad.append((data, code))
    finally:
        sys.stderr = err
    return bad, f"10000 fuzzed inputs ({rejected} rejected cleanly), {len(bad)} crashes"


# -- pytest entry points ---------------------------------------------------


def test_criterion_01_golden_g1():
    _check(1, "G1 tree and strong modules", c1)


def test_criterion_02_golden_section_examples():
    _check(2, "U(G3) tree; G4 series vs U(G4)", c2)


def test_criterion_03_closure_theorem():
    _check(3, "strong modules of G equal those of U(G)", c3)


def test_criterion_04_reduction_trace_and_confluence():
    _check(4, "G2 reduction trace and confluence", c4)


def test_criterion_05_prime_free_completeness():
    _check(5, "prime-free orders reduce to one vertex", c5)


def test_criterion_06_pipeline_equivalence():
    _check(6, "reduction pipeline equals direct decomposition and oracle", c6)


def test_criterion_07_orientation_goldens():
    _check(7, "implication classes and orientation goldens", c7)


def test_criterion_08_forcing_lift_and_transfer():
    _check(8, "forcing refinement and orientation transfer", c8)


def test_criterion_09_permutation_representation():
    _check(9, "permutation representation orders and reachability", c9)


def test_criterion_10_robust_parsing(tmp_path):
    _check(10, "malformed input exits 2; fuzzed parsing never crashes", lambda: c10(tmp_path))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
