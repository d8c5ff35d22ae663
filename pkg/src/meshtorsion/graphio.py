"""Plain-text ribbon graph documents.

One statement per line, ``#`` starts a comment::

    vertex v1 + : a b c
    edge a - d
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import GraphSemanticError, GraphSyntaxError
from .ribbon import NEG, POS, RibbonGraph, Vertex, validate

_TOKEN = re.compile(r"\S+")
_NAME = re.compile(r"[A-Za-z0-9_.\[\]']+$")


@dataclass(frozen=True)
class GraphDocument:
    source: str
    graph: RibbonGraph
    spans: dict = field(default_factory=dict, compare=False)


def _tokens(line):
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]


def _name(tok, lineno):
    text, col = tok
    if not _NAME.match(text):
        raise GraphSyntaxError(lineno, col, f"invalid name {text!r}")
    return text


def parse_graph(text: str, trivalent: bool = True) -> GraphDocument:
    """Parse a document; raises GraphSyntaxError or GraphSemanticError."""
    vertices = []
    edges = []
    spans = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        head, col = toks[0]
        if head == "vertex":
            if len(toks) < 4:
                raise GraphSyntaxError(lineno, len(line.rstrip()) + 1, "expected 'vertex <name> <+|-> : <half-edges>'")
            name = _name(toks[1], lineno)
            sign_text, sign_col = toks[2]
            if sign_text not in ("+", "-"):
                raise GraphSyntaxError(lineno, sign_col, f"vertex color must be '+' or '-', got {sign_text!r}")
            colon, colon_col = toks[3]
            if colon != ":":
                raise GraphSyntaxError(lineno, colon_col, f"expected ':' after the color, got {colon!r}")
            hs = tuple(_name(t, lineno) for t in toks[4:])
            for t in toks[4:]:
                spans.setdefault(t[0], (lineno, t[1]))
            spans.setdefault(("vertex", name), (lineno, col))
            vertices.append(Vertex(name, POS if sign_text == "+" else NEG, hs))
        elif head == "edge":
            if len(toks) != 4 or toks[2][0] != "-":
                bad = toks[2] if len(toks) > 2 and toks[2][0] != "-" else (None, len(line.rstrip()) + 1)
                raise GraphSyntaxError(lineno, bad[1], "expected 'edge <hA> - <hB>'")
            a, b = _name(toks[1], lineno), _name(toks[3], lineno)
            spans.setdefault(("edge", a, b), (lineno, col))
            edges.append((a, b))
        else:
            raise GraphSyntaxError(lineno, col, f"unknown statement {head!r}; expected 'vertex' or 'edge'")
    g = RibbonGraph(vertices, edges)
    problems = validate(g, trivalent=trivalent)
    if problems:
        raise GraphSemanticError(problems)
    return GraphDocument(source=text, graph=g, spans=spans)


def render_graph(g: RibbonGraph) -> str:
    lines = []
    for v in g.vertices:
        lines.append(f"vertex {v.name} {'+' if v.sign == POS else '-'} : {' '.join(v.half_edges)}")
    for a, b in g.edges:
        lines.append(f"edge {a} - {b}")
    return "\n".join(lines) + "\n"


def load_graph(path, trivalent: bool = True) -> RibbonGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read(), trivalent=trivalent).graph
