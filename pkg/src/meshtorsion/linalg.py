"""Exact dense matrices over Q, Q(zeta_n) and R.

A coefficient domain object supplies ``zero``, ``one``, ``coerce``,
``is_invertible`` and ``inv``. Elimination only pivots on invertible
entries, so over R it succeeds exactly when unit pivots exist.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .cyclotomic import Cyclotomic, parse_cyclotomic, render_cyclotomic
from .errors import NonUnitPivot
from .ring import RingElem, is_unit, parse_ring, render_ring


class RationalField:
    name = "Q"
    is_field = True
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        return Fraction(x)

    def is_invertible(self, x):
        return x != 0

    def inv(self, x):
        return 1 / Fraction(x)

    def render(self, x):
        return str(x)

    def parse(self, text):
        return Fraction(text.strip())

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class CyclotomicField:
    is_field = True

    def __init__(self, n: int):
        self.n = n
        self.zero = Cyclotomic(n)
        self.one = Cyclotomic(n, [1])

    @property
    def name(self):
        return f"Q(zeta_{self.n})"

    def coerce(self, x):
        if isinstance(x, Cyclotomic):
            if x.order != self.n:
                raise ValueError("wrong cyclotomic order")
            return x
        if isinstance(x, RingElem):
            from .ring import eval_cyclotomic

            return eval_cyclotomic(x, self.n)
        return Cyclotomic(self.n, [Fraction(x)])

    def is_invertible(self, x):
        return not x.is_zero()

    def inv(self, x):
        return x.inverse()

    def zeta(self, k=1):
        return Cyclotomic.zeta(self.n, k)

    def render(self, x):
        return render_cyclotomic(x)

    def parse(self, text):
        return parse_cyclotomic(text, self.n)

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.n == self.n

    def __hash__(self):
        return hash(("cyc", self.n))

    def __repr__(self):
        return f"CyclotomicField({self.n})"


class LaurentRing:
    """The localized ring R; invertible elements are +-u^a (1-u)^b."""

    name = "R"
    is_field = False
    zero = RingElem(0)
    one = RingElem(1)

    def coerce(self, x):
        return x if isinstance(x, RingElem) else RingElem(int(x))

    def is_invertible(self, x):
        return is_unit(x) is not None

    def inv(self, x):
        return x.inverse()

    def render(self, x):
        return render_ring(x)

    def parse(self, text):
        return parse_ring(text)

    def __eq__(self, other):
        return isinstance(other, LaurentRing)

    def __hash__(self):
        return hash("R")

    def __repr__(self):
        return "RR"


QQ = RationalField()
RR = LaurentRing()


def domain_from_name(name: str):
    name = name.strip()
    if name == "Q":
        return QQ
    if name == "R":
        return RR
    if name.startswith("Q(zeta_") and name.endswith(")"):
        return CyclotomicField(int(name[len("Q(zeta_"):-1]))
    raise ValueError(f"unknown coefficient domain {name!r}")


class Matrix:
    """Immutable nrows x ncols matrix with entries in ``ring``."""

    __slots__ = ("ring", "nrows", "ncols", "rows")

    def __init__(self, ring, nrows, ncols, rows=None):
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [[ring.zero] * ncols for _ in range(nrows)]
        rows = tuple(tuple(ring.coerce(x) for x in r) for r in rows)
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ValueError(f"entries do not have shape {nrows}x{ncols}")
        self.rows = rows

    @classmethod
    def from_rows(cls, ring, rows, ncols=None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(ring, len(rows), ncols, rows)

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, n, n, [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring, nrows, ncols):
        return cls(ring, nrows, ncols)

    @classmethod
    def diagonal(cls, ring, entries):
        n = len(entries)
        return cls(ring, n, n, [[entries[i] if i == j else ring.zero for j in range(n)] for i in range(n)])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def to_lists(self):
        return [list(r) for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __add__(self, other):
        self._same_shape(other)
        return Matrix(
            self.ring, self.nrows, self.ncols, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        )

    def __sub__(self, other):
        self._same_shape(other)
        return Matrix(
            self.ring, self.nrows, self.ncols, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        )

    def __neg__(self):
        return Matrix(self.ring, self.nrows, self.ncols, [[-a for a in r] for r in self.rows])

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.ring.zero
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(self.ring, self.nrows, other.ncols, out)

    def scale(self, s):
        return Matrix(self.ring, self.nrows, self.ncols, [[s * a for a in r] for r in self.rows])

    def transpose(self):
        return Matrix(self.ring, self.ncols, self.nrows, [list(c) for c in zip(*self.rows)] if self.nrows else [])

    def submatrix(self, rows, cols):
        return Matrix(self.ring, len(rows), len(cols), [[self.rows[i][j] for j in cols] for i in rows])

    def map(self, ring, f):
        return Matrix(ring, self.nrows, self.ncols, [[f(a) for a in r] for r in self.rows])

    def is_zero(self):
        return all(a == self.ring.zero for r in self.rows for a in r)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __repr__(self):
        body = "; ".join(", ".join(self.ring.render(a) for a in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"


def block_matrix(ring, row_sizes, col_sizes, blocks):
    """Assemble from a dict {(block_row, block_col): Matrix}; missing blocks are zero."""
    rows = []
    for bi, nr in enumerate(row_sizes):
        for i in range(nr):
            row = []
            for bj, nc in enumerate(col_sizes):
                blk = blocks.get((bi, bj))
                if blk is None:
                    row.extend([ring.zero] * nc)
                else:
                    if blk.shape != (nr, nc):
                        raise ValueError(f"block {(bi, bj)} has shape {blk.shape}, expected {(nr, nc)}")
                    row.extend(blk.rows[i])
            rows.append(row)
    return Matrix(ring, sum(row_sizes), sum(col_sizes), rows)


def row_reduce(m: Matrix, pivot_order: str = "first"):
    """Reduced row echelon form using only invertible pivots.

    Returns ``(rref_rows, pivot_cols, ops)`` where ``ops`` is the matrix E
    with E @ m = rref. ``pivot_order`` chooses the first or last usable row
    in each column, which gives different (equally valid) reductions.
    """
    ring = m.ring
    a = [list(r) for r in m.rows]
    e = [[ring.one if i == j else ring.zero for j in range(m.nrows)] for i in range(m.nrows)]
    pivots = []
    r = 0
    for c in range(m.ncols):
        if r >= m.nrows:
            break
        candidates = [i for i in range(r, m.nrows) if ring.is_invertible(a[i][c])]
        if not candidates:
            if any(a[i][c] != ring.zero for i in range(r, m.nrows)):
                if ring.is_field:
                    raise AssertionError("nonzero field element reported as non-invertible")
                raise NonUnitPivot(f"column {c} has nonzero entries but no unit pivot over {ring.name}")
            continue
        p = candidates[0] if pivot_order == "first" else candidates[-1]
        a[r], a[p] = a[p], a[r]
        e[r], e[p] = e[p], e[r]
        inv = ring.inv(a[r][c])
        a[r] = [inv * x for x in a[r]]
        e[r] = [inv * x for x in e[r]]
        for i in range(m.nrows):
            if i != r and a[i][c] != ring.zero:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                e[i] = [x - f * y for x, y in zip(e[i], e[r])]
        pivots.append(c)
        r += 1
    return a, pivots, Matrix(ring, m.nrows, m.nrows, e)


def rank(m: Matrix) -> int:
    return len(row_reduce(m)[1])


def solve(m: Matrix, rhs: Matrix, pivot_order: str = "first") -> Matrix:
    """A particular solution X of m @ X = rhs (free variables set to zero).

    Raises ValueError if the system is inconsistent.
    """
    if rhs.nrows != m.nrows:
        raise ValueError("right-hand side has the wrong number of rows")
    ring = m.ring
    red, pivots, e = row_reduce(m, pivot_order)
    b = e @ rhs
    for i in range(len(pivots), m.nrows):
        if any(x != ring.zero for x in b.rows[i]):
            raise ValueError("inconsistent linear system")
    x = [[ring.zero] * rhs.ncols for _ in range(m.ncols)]
    for i, c in enumerate(pivots):
        x[c] = list(b.rows[i])
    return Matrix(ring, m.ncols, rhs.ncols, x)


def det_gauss(m: Matrix):
    """Determinant by elimination; needs invertible pivots."""
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    ring = m.ring
    a = [list(r) for r in m.rows]
    n = m.nrows
    d = ring.one
    for c in range(n):
        p = next((i for i in range(c, n) if ring.is_invertible(a[i][c])), None)
        if p is None:
            if all(a[i][c] == ring.zero for i in range(c, n)):
                return ring.zero
            raise NonUnitPivot(f"no unit pivot in column {c} over {ring.name}")
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        piv = a[c][c]
        d = d * piv
        inv = ring.inv(piv)
        for i in range(c + 1, n):
            if a[i][c] != ring.zero:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def det_expansion(m: Matrix):
    """Division-free determinant by Laplace expansion over column subsets.

    O(n 2^n) ring operations; works over any commutative ring.
    """
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    ring = m.ring
    n = m.nrows
    # minors[mask] = det of the submatrix on the last popcount(mask) rows and columns in mask
    minors = {0: ring.one}
    for mask in range(1, 1 << n):
        k = bin(mask).count("1")
        row = n - k
        acc = ring.zero
        sign_pos = 0
        for j in range(n):
            if mask >> j & 1:
                entry = m.rows[row][j]
                if entry != ring.zero:
                    term = entry * minors[mask ^ (1 << j)]
                    acc = acc + term if sign_pos % 2 == 0 else acc - term
                sign_pos += 1
        minors[mask] = acc
    return minors[(1 << n) - 1]


def det(m: Matrix):
    if m.ring.is_field:
        return det_gauss(m)
    return det_expansion(m)


def random_unimodular(ring, n, rng, steps=6, entries=None):
    """Product of random elementary matrices (determinant one)."""
    if entries is None:
        entries = [ring.coerce(k) for k in (-2, -1, 1, 2, 3)]
    m = Matrix.identity(ring, n)
    if n < 2:
        return m
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        e = [list(r) for r in Matrix.identity(ring, n).rows]
        e[i][j] = rng.choice(entries)
        m = m @ Matrix(ring, n, n, e)
    return m


