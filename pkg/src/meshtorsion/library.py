"""Named ribbon graphs used by the tests, the CLI and the docs.

Planar examples are built from vertex coordinates: the cyclic order at a
vertex is the clockwise order of the outgoing edge directions.
"""

from __future__ import annotations

import math

from .ribbon import NEG, POS, RibbonGraph, Vertex


def planar_graph(positions, edges, signs, tangents=None):
    """Ribbon graph of a drawing in the plane.

    ``edges`` is a list of ``(name, u, v)``; half-edges are called
    ``f"{name}.{u}"`` and ``f"{name}.{v}"``. ``tangents`` optionally maps
    ``(name, vertex)`` to a point the edge heads toward when leaving the
    vertex (a Bezier control point for curved edges).
    """
    tangents = tangents or {}
    around = {v: [] for v in positions}
    pairs = []
    for name, a, b in edges:
        ha, hb = f"{name}.{a}", f"{name}.{b}"
        pairs.append((ha, hb))
        for here, there, h in ((a, b, ha), (b, a, hb)):
            tx, ty = tangents.get((name, here), positions[there])
            x, y = positions[here]
            around[here].append((math.atan2(ty - y, tx - x), h))
    verts = []
    for v in positions:
        # clockwise = decreasing angle
        cyc = tuple(h for _, h in sorted(around[v], reverse=True))
        verts.append(Vertex(v, signs[v], cyc))
    return RibbonGraph(verts, pairs)


def theta(sign_a: int = POS, sign_b: int = POS) -> RibbonGraph:
    """Two vertices joined by three edges, embedded in the sphere."""
    return RibbonGraph(
        [Vertex("v1", sign_a, ("a", "b", "c")), Vertex("v2", sign_b, ("d", "e", "f"))],
        [("a", "d"), ("b", "f"), ("c", "e")],
    )


def theta_torus(sign: int = POS) -> RibbonGraph:
    """Theta graph with the pairing that yields a single face (genus one)."""
    return RibbonGraph(
        [Vertex("v1", sign, ("a", "b", "c")), Vertex("v2", sign, ("d", "e", "f"))],
        [("a", "d"), ("b", "e"), ("c", "f")],
    )


def prism(sign: int = POS) -> RibbonGraph:
    """Triangular prism drawn as two nested triangles joined by spokes."""
    positions = {}
    for k in range(3):
        ang = math.pi / 2 + 2 * math.pi * k / 3
        positions[f"o{k}"] = (2 * math.cos(ang), 2 * math.sin(ang))
        positions[f"i{k}"] = (math.cos(ang), math.sin(ang))
    edges = []
    for k in range(3):
        j = (k + 1) % 3
        edges.append((f"O{k}{j}", f"o{k}", f"o{j}"))
        edges.append((f"I{k}{j}", f"i{k}", f"i{j}"))
        edges.append((f"S{k}", f"o{k}", f"i{k}"))
    return planar_graph(positions, edges, {v: sign for v in positions})


# Vertex coordinates and curve control points copied from the drawing of
# the eight-vertex plabic graph (seven black vertices, one white). The
# faces are F1..F6 and the edge between N1 and N2 separates F5 from F6.
_CA_POSITIONS = {
    "K2": (-6.0, 1.0),
    "L1": (-8.0, 0.0),
    "L2": (-6.0, 0.0),
    "L3": (-4.0, 0.0),
    "M1": (-7.0, -0.6),
    "M2": (-5.0, -0.6),
    "N1": (-7.0, -1.6),
    "N2": (-5.0, -1.6),
}

# spanning tree (the plabic graph itself)
_CA_TREE = [
    ("L1M1", "L1", "M1"),
    ("M1L2", "M1", "L2"),
    ("L2K2", "L2", "K2"),
    ("L2M2", "L2", "M2"),
    ("M2L3", "M2", "L3"),
    ("M1N1", "M1", "N1"),
    ("M2N2", "M2", "N2"),
]

# curved edges completing it to a ribbon graph of the sphere
_CA_COTREE = [
    ("K2L3", "K2", "L3"),
    ("K2L1", "K2", "L1"),
    ("N1L1", "N1", "L1"),
    ("N2L3", "N2", "L3"),
    ("E56", "N1", "N2"),
]

_CA_TANGENTS = {
    ("K2L3", "K2"): (-5.0, 1.6),
    ("K2L3", "L3"): (-4.0, 1.0),
    ("K2L1", "K2"): (-7.0, 1.6),
    ("K2L1", "L1"): (-8.0, 1.0),
    ("N1L1", "N1"): (-8.0, -2.2),
    ("N1L1", "L1"): (-9.0, -0.6),
    ("N2L3", "N2"): (-4.0, -2.2),
    ("N2L3", "L3"): (-3.0, -0.6),
    ("E56", "N1"): (-6.3, -2.5),
    ("E56", "N2"): (-5.7, -2.5),
}


def cluster_graph() -> RibbonGraph:
    """The completed plabic graph: w = (7 - 1) / 2 = 3 on the sphere."""
    signs = {v: POS for v in _CA_POSITIONS}
    signs["M2"] = NEG
    return planar_graph(_CA_POSITIONS, _CA_TREE + _CA_COTREE, signs, _CA_TANGENTS)


CLUSTER_CUT_EDGE = ("E56.N1", "E56.N2")


def cluster_tree():
    """Edges of the plabic spanning tree inside :func:`cluster_graph`."""
    return [(f"{name}.{a}", f"{name}.{b}") for name, a, b in _CA_TREE]


def fatgraph_example() -> RibbonGraph:
    """Three vertices and five edges (one vertex is 4-valent); a torus."""
    positions = {"A": (0.0, 1.0), "B": (1.0, 2.0), "C": (2.5, 1.5)}
    edges = [
        ("e1", "A", "C"),
        ("e2", "A", "B"),
        ("e3", "B", "C"),
        ("e4", "C", "A"),
        ("e5", "A", "B"),
    ]
    tangents = {
        ("e1", "A"): (-2.5, -2.0),
        ("e1", "C"): (2.0, 0.0),
        ("e4", "C"): (5.0, 2.0),
        ("e4", "A"): (2.0, -2.0),
        ("e5", "A"): (-2.0, 3.0),
        ("e5", "B"): (1.0, 4.0),
    }
    return planar_graph(positions, edges, {v: POS for v in positions}, tangents)
