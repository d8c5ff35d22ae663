"""Row and column operations over R: handle slides, exchanges, and the
edge and vertex identities they must satisfy.

Indices are 1-based, as in the notation x_{ab}. A word of operations acts
left to right: ``apply_word(m, [op1, op2])`` applies op1 first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import IndexOutOfRange, NotAUnit, PreconditionViolated
from .linalg import RR, Matrix, det
from .ring import ONE, ZERO, RingElem, is_unit

COLUMN = "x"
ROW = "y"


@dataclass(frozen=True)
class ElementaryOp:
    """x_{ab}^s adds s * (column a) to column b; y_{ab}^s adds s * (row b) to row a.

    ``s`` is normally an element of R, but any coefficient matching the
    matrix works.
    """

    kind: str
    a: int
    b: int
    s: object

    def __post_init__(self):
        if self.kind not in (COLUMN, ROW):
            raise ValueError("kind must be 'x' (column) or 'y' (row)")
        if self.a == self.b:
            raise ValueError("an elementary operation needs two distinct indices")
        if isinstance(self.s, int):
            object.__setattr__(self, "s", RingElem(self.s))

    def inverse(self) -> "ElementaryOp":
        return ElementaryOp(self.kind, self.a, self.b, -self.s)

    def __str__(self):
        return f"{self.kind}_{self.a}{self.b}^({self.s})"


def x(a, b, s) -> ElementaryOp:
    return ElementaryOp(COLUMN, a, b, s)


def y(a, b, s) -> ElementaryOp:
    return ElementaryOp(ROW, a, b, s)


def apply_op(m: Matrix, op: ElementaryOp) -> Matrix:
    n = m.nrows if op.kind == ROW else m.ncols
    for idx in (op.a, op.b):
        if not 1 <= idx <= n:
            raise IndexOutOfRange(f"index {idx} out of range 1..{n} for {op}")
    rows = m.to_lists()
    a, b = op.a - 1, op.b - 1
    if op.kind == COLUMN:
        for r in rows:
            r[b] = r[b] + op.s * r[a]
    else:
        rows[a] = [p + op.s * q for p, q in zip(rows[a], rows[b])]
    return Matrix(m.ring, m.nrows, m.ncols, rows)


def apply_word(m: Matrix, word) -> Matrix:
    for op in word:
        m = apply_op(m, op)
    return m


def random_unit(rng: random.Random, span: int = 3) -> RingElem:
    """+-u^a (1-u)^b with |a|, |b| <= span."""
    return RingElem.unit(rng.choice((1, -1)), rng.randint(-span, span), rng.randint(-span, span))


def identity(n: int) -> Matrix:
    return Matrix.identity(RR, n)


@dataclass(frozen=True)
class ExchangePoint:
    """Z_{ab}^s: trajectory from y_b down to x_a; entry (a, b) must vanish."""

    a: int
    b: int
    s: RingElem


def exchange_word(m: Matrix, z: ExchangePoint, p=None, q=None):
    """Handle slides created at an exchange: x_{bq}^{s c_aq} and y_{pa}^{-c_pb s}.

    With ``p`` and ``q`` given only that one pair is produced; otherwise the
    pairs for every row p != a and column q != b.
    """
    if not (1 <= z.a <= m.nrows and 1 <= z.b <= m.ncols):
        raise IndexOutOfRange(f"exchange indices ({z.a}, {z.b}) out of range")
    if m[z.a - 1, z.b - 1] != ZERO:
        raise PreconditionViolated(f"entry ({z.a}, {z.b}) is {m[z.a - 1, z.b - 1]}, must be 0 at an exchange")
    ps = [p] if p is not None else [i for i in range(1, m.nrows + 1) if i != z.a]
    qs = [q] if q is not None else [j for j in range(1, m.ncols + 1) if j != z.b]
    cols = [x(z.b, qq, z.s * m[z.a - 1, qq - 1]) for qq in qs]
    rows = [y(pp, z.a, -(m[pp - 1, z.b - 1] * z.s)) for pp in ps]
    return cols + rows


def exchange_effect(m: Matrix, z: ExchangePoint, p=None, q=None) -> Matrix:
    """Apply the slides created by an exchange; the result should equal ``m``."""
    return apply_word(m, exchange_word(m, z, p, q))


# edge identity


@dataclass(frozen=True)
class EdgeIdentity:
    v: RingElem
    a_prime: RingElem
    b_prime: RingElem
    v_prime: RingElem
    middle: Matrix
    ok: bool


def _require_unit(*labels):
    for s in labels:
        if is_unit(s) is None:
            raise NotAUnit(f"label {s} is not a unit of R")


def edge_middle_from_left(a, b, v) -> Matrix:
    """diag(1-v, 1) followed by y_12^{-b} and x_21^{-a}."""
    start = Matrix.diagonal(RR, [ONE - v, ONE])
    return apply_word(start, [y(1, 2, -b), x(2, 1, -a)])


def edge_middle_from_right(a, b, v) -> Matrix:
    """diag(1, 1-v) with the right-hand slides x_12^{b}, y_21^{a} undone."""
    end = Matrix.diagonal(RR, [ONE, ONE - v])
    return apply_word(end, [y(2, 1, -a), x(1, 2, -b)])


def verify_edge_identity(a: RingElem, b: RingElem) -> EdgeIdentity:
    """Check the two descriptions of the middle matrix over an edge.

    The primed labels are read off the left-hand middle matrix, then the
    right-hand middle matrix is rebuilt from them and compared.
    """
    _require_unit(a, b)
    v = a * b
    left = edge_middle_from_left(a, b, v)
    b_p = -left[0, 1]
    a_p = -left[1, 0]
    v_p = ONE - left[1, 1] + a_p * b_p
    right = edge_middle_from_right(a_p, b_p, v_p)
    ok = left == right and left[0, 0] == ONE and (a_p, b_p, v_p) == (a, b, v)
    return EdgeIdentity(v=v, a_prime=a_p, b_prime=b_p, v_prime=v_p, middle=left, ok=ok)


# vertex identity


def vertex_word(a, b, c):
    """The nine column operations around a triangle, labels 1-indexed by position."""
    a1, a2, a3 = a
    b1, b2, b3 = b
    c1, c2, c3 = c
    return [
        x(2, 3, c1), x(2, 1, -a3), x(1, 2, b3),
        x(3, 1, c2), x(3, 2, -a1), x(2, 3, b1),
        x(1, 2, c3), x(1, 3, -a2), x(3, 1, b2),
    ]


def vertex_product(a, b, c) -> Matrix:
    return apply_word(identity(3), vertex_word(a, b, c))


@dataclass(frozen=True)
class VertexIdentity:
    v: RingElem
    a: tuple
    b: tuple
    c: tuple
    ok: bool


def verify_vertex_identity(t1, t2, t3, sign: int = 1) -> VertexIdentity:
    """Solve and check the triangle identity from three unit labels.

    At a positive vertex the inputs are b-labels: c_i = -b_i,
    a_i = b_j b_k and v = b1 b2 b3. At a negative vertex (the mirror
    image) the roles of a and b are exchanged and the inputs are a-labels.
    """
    _require_unit(t1, t2, t3)
    t = (t1, t2, t3)
    v = t1 * t2 * t3
    other = (t2 * t3, t3 * t1, t1 * t2)
    if sign > 0:
        a, b = other, t
    else:
        a, b = t, other
    c = tuple(-s for s in b) if sign > 0 else tuple(-s for s in a)
    if sign > 0:
        product_ok = vertex_product(a, b, c) == identity(3)
    else:
        product_ok = vertex_product(b, a, c) == identity(3)
    aa = a[0] * a[1] * a[2]
    bb = b[0] * b[1] * b[2]
    if sign > 0:
        sums_ok = aa == v * v and bb == v
    else:
        sums_ok = aa == v and bb == v * v
    ab_ok = all(ai * bi == v for ai, bi in zip(a, b))
    return VertexIdentity(v=v, a=a, b=b, c=c, ok=product_ok and sums_ok and ab_ok)


def determinant(m: Matrix) -> RingElem:
    return det(m)
