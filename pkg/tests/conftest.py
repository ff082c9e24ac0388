from __future__ import annotations

import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from transmod.edgelist import parse_edge_list
from transmod.graph import Digraph

FIXTURES = Path(__file__).parent / "fixtures"


def load(name: str) -> Digraph:
    return parse_edge_list((FIXTURES / f"{name}.txt").read_text())


@pytest.fixture
def g1() -> Digraph:
    return load("g1")


@pytest.fixture
def g2() -> Digraph:
    return load("g2")


@pytest.fixture
def g3() -> Digraph:
    return load("g3")


@pytest.fixture
def g4() -> Digraph:
    return load("g4")


@pytest.fixture
def g5() -> Digraph:
    return load("g5")


def names(g: Digraph, vs) -> str:
    """Concatenated labels of a vertex set, e.g. ``ADG``."""
    return "".join(sorted(g.label(v) for v in vs))


def edge_names(g: Digraph, edges) -> set[str]:
    return {g.label(a) + g.label(b) for a, b in edges}


def random_digraph(rng: random.Random, n: int, p: float) -> Digraph:
    return Digraph(n, [(a, b) for a in range(n) for b in range(n) if a != b and rng.random() < p])


def random_dag(rng: random.Random, n: int, p: float) -> Digraph:
    perm = list(range(n))
    rng.shuffle(perm)
    return Digraph(n, [(perm[i], perm[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


@st.composite
def digraphs(draw, max_n: int = 8, min_n: int = 1) -> Digraph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Digraph(n, chosen)


@st.composite
def dags(draw, max_n: int = 8, min_n: int = 1) -> Digraph:
    n = draw(st.integers(min_n, max_n))
    perm = draw(st.permutations(range(n)))
    pairs = [(perm[i], perm[j]) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Digraph(n, chosen)
