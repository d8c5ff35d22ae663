"""Bicolored ribbon graphs as rotation systems.

A graph is a list of vertices, each with a sign and a cyclic (clockwise)
tuple of half-edge names, together with a list of edges pairing the
half-edges. Faces are the orbits of the face permutation
``h -> pairing(rotation(h))``.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import GraphSemanticError

POS = 1
NEG = -1


@dataclass(frozen=True)
class Vertex:
    name: str
    sign: int
    half_edges: tuple


@dataclass(frozen=True)
class GraphInvariants:
    V: int
    E: int
    F: int
    chi: int
    genus: int
    P: int
    N: int
    w: int
    Q: int


class RibbonGraph:
    """Immutable rotation system with +-1 vertex colors."""

    def __init__(self, vertices, edges):
        self.vertices = tuple(
            v if isinstance(v, Vertex) else Vertex(v[0], int(v[1]), tuple(v[2])) for v in vertices
        )
        self.edges = tuple(tuple(e) for e in edges)
        self._vertex_by_name = {v.name: v for v in self.vertices}
        self._vertex_of = {}
        self._rotation = {}
        for v in self.vertices:
            hs = v.half_edges
            for i, h in enumerate(hs):
                self._vertex_of.setdefault(h, v.name)
                self._rotation.setdefault(h, hs[(i + 1) % len(hs)])
        self._pairing = {}
        self._edge_of = {}
        for e in self.edges:
            if len(e) != 2:
                continue
            a, b = e
            self._pairing.setdefault(a, b)
            self._pairing.setdefault(b, a)
            self._edge_of.setdefault(a, e)
            self._edge_of.setdefault(b, e)

    # structure accessors

    @property
    def half_edges(self):
        return tuple(h for v in self.vertices for h in v.half_edges)

    def vertex(self, name) -> Vertex:
        return self._vertex_by_name[name]

    def vertex_of(self, h) -> str:
        return self._vertex_of[h]

    def sign_of(self, h) -> int:
        return self._vertex_by_name[self._vertex_of[h]].sign

    def rotation(self, h):
        return self._rotation[h]

    def pairing(self, h):
        return self._pairing[h]

    def face_permutation(self, h):
        return self._pairing[self._rotation[h]]

    def edge_of(self, h):
        """The edge tuple containing half-edge ``h``."""
        return self._edge_of[h]

    def find_edge(self, key):
        """Look up an edge by ``"hA-hB"``, ``"hA"`` or a tuple."""
        if isinstance(key, str) and key in self._pairing:
            return self.edge_of(key)
        if isinstance(key, str):
            key = tuple(part.strip() for part in key.split("-", 1))
        for e in self.edges:
            if set(key) == set(e):
                return e
        raise KeyError(f"no edge {key!r}")

    def __eq__(self, other):
        if not isinstance(other, RibbonGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"RibbonGraph(V={len(self.vertices)}, E={len(self.edges)})"


def validate(g: RibbonGraph, trivalent: bool = True) -> list:
    """Every violated structural invariant, as messages naming the half-edges.

    An empty list means the graph is valid. ``trivalent=False`` relaxes the
    valence and color requirements so that general ribbon graphs can be
    checked too.
    """
    problems = []
    vertex_count = Counter(h for v in g.vertices for h in v.half_edges)
    edge_count = Counter(h for e in g.edges for h in e)
    names = Counter(v.name for v in g.vertices)
    for name, k in names.items():
        if k > 1:
            problems.append(f"vertex name {name!r} used {k} times")
    for h, k in vertex_count.items():
        if k > 1:
            problems.append(f"half-edge {h!r} appears in {k} vertex cycles")
    for e in g.edges:
        if len(e) != 2:
            problems.append(f"edge {e!r} does not have two half-edges")
        elif e[0] == e[1]:
            problems.append(f"half-edge {e[0]!r} paired with itself")
    for h, k in edge_count.items():
        if k > 1 and not any(len(e) == 2 and e[0] == e[1] == h for e in g.edges):
            problems.append(f"half-edge {h!r} appears in {k} edges")
        if h not in vertex_count:
            problems.append(f"half-edge {h!r} is in an edge but in no vertex")
    for h in vertex_count:
        if h not in edge_count:
            problems.append(f"half-edge {h!r} is not paired")
    for v in g.vertices:
        if trivalent and len(v.half_edges) != 3:
            problems.append(
                f"vertex {v.name!r}: rotation cycle length {len(v.half_edges)} != 3 (trivalent required)"
            )
        if not v.half_edges:
            problems.append(f"vertex {v.name!r} has no half-edges")
        if trivalent and v.sign not in (POS, NEG):
            problems.append(f"vertex {v.name!r}: color must be + or -")
    if problems:
        return problems
    if g.vertices:
        seen = _orbit(g, g.vertices[0].half_edges[0])
        missing = [h for h in g.half_edges if h not in seen]
        if missing:
            problems.append(f"graph is not connected; unreachable half-edges {sorted(missing)!r}")
    else:
        problems.append("graph has no vertices")
    return problems


def _orbit(g, start):
    seen = {start}
    stack = [start]
    while stack:
        h = stack.pop()
        for k in (g.rotation(h), g.pairing(h)):
            if k not in seen:
                seen.add(k)
                stack.append(k)
    return seen


def require_valid(g: RibbonGraph, trivalent: bool = True) -> None:
    problems = validate(g, trivalent=trivalent)
    if problems:
        raise GraphSemanticError(problems)


def faces(g: RibbonGraph) -> list:
    """Boundary cycles of the fattened surface, as lists of half-edges."""
    out = []
    seen = set()
    for h in g.half_edges:
        if h in seen:
            continue
        cycle = []
        k = h
        while k not in seen:
            seen.add(k)
            cycle.append(k)
            k = g.face_permutation(k)
        out.append(cycle)
    return out


def face_of(g: RibbonGraph) -> dict:
    """Map each half-edge to the index of its face."""
    return {h: i for i, cycle in enumerate(faces(g)) for h in cycle}


def surface_invariants(g: RibbonGraph):
    """(V, E, F, chi, genus) for any connected ribbon graph."""
    V = len(g.vertices)
    E = len(g.edges)
    F = len(faces(g))
    chi = V - E + F
    if chi % 2:
        raise ArithmeticError("odd Euler characteristic for an orientable surface")
    return V, E, F, chi, (2 - chi) // 2


def invariants(g: RibbonGraph) -> GraphInvariants:
    V, E, F, chi, genus = surface_invariants(g)
    P = sum(1 for v in g.vertices if v.sign == POS)
    N = sum(1 for v in g.vertices if v.sign == NEG)
    if (P - N) % 2:
        raise ArithmeticError("P - N is odd; the graph cannot be trivalent")
    Q = sum(1 for a, b in g.edges if g.sign_of(a) != g.sign_of(b))
    w = Fraction(P - N, 2)
    return GraphInvariants(V=V, E=E, F=F, chi=chi, genus=genus, P=P, N=N, w=int(w), Q=Q)


def winding_number(g: RibbonGraph) -> int:
    P = sum(1 for v in g.vertices if v.sign == POS)
    N = sum(1 for v in g.vertices if v.sign == NEG)
    return (P - N) // 2


def mirror(g: RibbonGraph) -> RibbonGraph:
    """Reverse every cyclic order; colors are kept."""
    return RibbonGraph(
        [Vertex(v.name, v.sign, (v.half_edges[0],) + tuple(reversed(v.half_edges[1:]))) for v in g.vertices],
        g.edges,
    )


def recolor(g: RibbonGraph, sign: int) -> RibbonGraph:
    if sign not in (POS, NEG):
        raise ValueError("sign must be +1 or -1")
    return RibbonGraph([Vertex(v.name, sign, v.half_edges) for v in g.vertices], g.edges)


def random_graph(v: int, seed=None, colors: str = "random") -> RibbonGraph:
    """A uniformly random connected trivalent ribbon graph on ``v`` vertices.

    ``colors`` is ``"random"``, ``"+"`` or ``"-"``. Deterministic for a
    given seed.
    """
    if v < 2 or v % 2:
        raise ValueError("a trivalent graph needs an even number (>= 2) of vertices")
    rng = random.Random(seed)
    while True:
        hs = [f"h{i}" for i in range(3 * v)]
        shuffled = hs[:]
        rng.shuffle(shuffled)
        edges = [(shuffled[2 * i], shuffled[2 * i + 1]) for i in range(len(hs) // 2)]
        verts = []
        for i in range(v):
            cyc = hs[3 * i : 3 * i + 3]
            if rng.random() < 0.5:
                cyc = [cyc[0], cyc[2], cyc[1]]
            if colors == "random":
                sign = rng.choice((POS, NEG))
            else:
                sign = POS if colors == "+" else NEG
            verts.append(Vertex(f"v{i}", sign, tuple(cyc)))
        g = RibbonGraph(verts, edges)
        if not validate(g):
            return g
