"""The cyclic-set cocycle and two computations of the Euler number of E_G."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

from .errors import NonIntegerTotal
from .ribbon import NEG, POS, RibbonGraph, require_valid


@dataclass(frozen=True)
class CyclicTriple:
    """Nested sets A <= B <= C, with C listed in its cyclic order."""

    A: frozenset
    B: frozenset
    C: tuple

    def __post_init__(self):
        if len(set(self.C)) != len(self.C):
            raise ValueError("labels of C must be distinct")
        if not self.A or not self.B or not self.C:
            raise ValueError("A, B, C must be nonempty")
        if not (set(self.A) <= set(self.B) <= set(self.C)):
            raise ValueError("need A <= B <= C")

    @classmethod
    def of(cls, A, B, C):
        return cls(frozenset(A), frozenset(B), tuple(C))


def _cyclic_sign(a, b, c, pos, m):
    """+1 if a, b, c occur in cyclic order, -1 if reversed."""
    db = (pos[b] - pos[a]) % m
    dc = (pos[c] - pos[a]) % m
    return 1 if db < dc else -1


def c_Z(t: CyclicTriple) -> Fraction:
    """-1/2 (P(a,b,c cyclic) - P(a,b,c anticyclic)), by enumeration."""
    pos = {x: i for i, x in enumerate(t.C)}
    m = len(t.C)
    signed = 0
    for a, b, c in product(t.A, t.B, t.C):
        if a != b and b != c and a != c:
            signed += _cyclic_sign(a, b, c, pos, m)
    total = len(t.A) * len(t.B) * len(t.C)
    return Fraction(-signed, 2 * total)


def vertex_contribution(corners, sign: int) -> Fraction:
    """Cocycle total over the six flags of the triangle at one vertex.

    ``corners`` are the three local sheets in clockwise order on the
    surface. The fibre order of the sheets agrees with it at positive
    vertices and is reversed at negative ones; each flag
    {x} < {x, y} < {x, y, z} is weighted by its orientation relative to
    the surface.
    """
    fibre = tuple(corners) if sign == POS else tuple(reversed(corners))
    surface_pos = {x: i for i, x in enumerate(corners)}
    total = Fraction(0)
    for x, y, z in permutations(corners):
        # the flag (k, j, i) with (i, j, k) clockwise is positively oriented
        orientation = -_cyclic_sign(x, y, z, surface_pos, 3)
        total += orientation * c_Z(CyclicTriple.of({x}, {x, y}, fibre))
    return total


def euler_number_cocycle(g: RibbonGraph) -> int:
    require_valid(g)
    total = Fraction(0)
    for v in g.vertices:
        total += vertex_contribution(v.half_edges, v.sign)
    if total.denominator != 1:
        raise NonIntegerTotal(f"cocycle sum {total} is not an integer")
    return int(total)


def euler_number_clutching(g: RibbonGraph) -> int:
    """(#++ edges) - P + N - (#-- edges), from the clutching construction."""
    require_valid(g)
    P = sum(1 for v in g.vertices if v.sign == POS)
    N = sum(1 for v in g.vertices if v.sign == NEG)
    pp = sum(1 for a, b in g.edges if g.sign_of(a) == POS and g.sign_of(b) == POS)
    nn = sum(1 for a, b in g.edges if g.sign_of(a) == NEG and g.sign_of(b) == NEG)
    return pp - P + N - nn
