"""Edge-list text format.

One record per line: ``<src> <dst>`` declares an edge, a lone ``<label>``
declares a vertex.  ``#`` starts a comment.  Vertex ids follow first
appearance.  Labels are printable, contain no whitespace, quotes or
backslashes.
"""

from __future__ import annotations

from .errors import ParseError, SelfLoopError
from .graph import Digraph

__all__ = ["parse_edge_list", "decode_input", "serialize_edge_list", "graph_to_dot"]


def _bad_char(token: str) -> int | None:
    for i, ch in enumerate(token):
        if not ch.isprintable() or ch in "\"\\":
            return i
    return None


def parse_edge_list(text: str, undirected: bool = False) -> Digraph:
    """Parse edge-list text; ``undirected`` adds the inverse of every edge."""
    index: dict[str, int] = {}
    edges: list[tuple[int, int]] = []

    def vid(label: str) -> int:
        if label not in index:
            index[label] = len(index)
        return index[label]

    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        tokens: list[tuple[int, str]] = []
        col = 0
        for tok in body.split():
            col = body.index(tok, col)
            tokens.append((col + 1, tok))
            col += len(tok)
        if not tokens:
            continue
        for col, tok in tokens:
            bad = _bad_char(tok)
            if bad is not None:
                raise ParseError(lineno, f"invalid character {tok[bad]!r} in label", col + bad)
        if len(tokens) > 2:
            raise ParseError(lineno, "expected one or two labels", tokens[2][0])
        if len(tokens) == 1:
            vid(tokens[0][1])
            continue
        (_, a), (_, b) = tokens
        if a == b:
            raise SelfLoopError(lineno, f"self-loop on {a!r}")
        edges.append((vid(a), vid(b)))
        if undirected:
            edges.append((vid(b), vid(a)))
    return Digraph(len(index), edges, list(index))


def decode_input(data: bytes) -> str:
    """UTF-8 decode with a line-addressed :class:`ParseError` on failure."""
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data[: exc.start].count(b"\n") + 1
        raise ParseError(line, "input is not valid UTF-8") from None


def serialize_edge_list(g: Digraph) -> str:
    """Every vertex on its own line in id order, then one line per edge, so
    that parsing the output reproduces ids and labels."""
    lines = [g.label(v) for v in range(g.n)]
    lines += [f"{g.label(a)} {g.label(b)}" for a, b in g.edges()]
    return "".join(line + "\n" for line in lines)


def graph_to_dot(g: Digraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    lines += [f'  "{g.label(v)}";' for v in range(g.n)]
    lines += [f'  "{g.label(a)}" -> "{g.label(b)}";' for a, b in g.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"
