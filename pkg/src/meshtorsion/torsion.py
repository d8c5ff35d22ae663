"""Torsion of based free acyclic chain complexes.

Two independent algorithms: ``torsion_det`` assembles the odd-to-even map
built from the boundary and a chain contraction and takes its determinant;
``torsion_minors`` multiplies pivotal minors of the boundary matrices with
alternating exponents. Both report the value modulo +-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cyclotomic import Cyclotomic, totient
from .errors import NonUnitPivot, NotAcyclic, NotAUnit, RankMismatch
from .linalg import RR, CyclotomicField, Matrix, block_matrix, det, det_expansion, domain_from_name, row_reduce, solve
from .ring import RingElem, eval_cyclotomic, is_unit


class ChainComplex:
    """Ranks n_0..n_d and boundaries d_k : C_k -> C_{k-1} (k = 1..d).

    ``boundaries[k - 1]`` is the n_{k-1} x n_k matrix of d_k.
    ``partition`` optionally groups generators, given as ``(degree, index)``
    pairs, into parts with as many even as odd generators.
    """

    def __init__(self, ring, ranks, boundaries, basis_labels=None, partition=None):
        self.ring = ring
        self.ranks = tuple(int(r) for r in ranks)
        if any(r < 0 for r in self.ranks):
            raise ValueError("ranks must be non-negative")
        bs = []
        for k, m in enumerate(boundaries, start=1):
            if not isinstance(m, Matrix):
                m = Matrix(ring, self.ranks[k - 1], self.ranks[k], m)
            bs.append(m)
        self.boundaries = tuple(bs)
        if len(self.boundaries) != max(len(self.ranks) - 1, 0):
            raise ValueError(f"need {max(len(self.ranks) - 1, 0)} boundary matrices, got {len(self.boundaries)}")
        for k, m in enumerate(self.boundaries, start=1):
            if m.shape != (self.ranks[k - 1], self.ranks[k]):
                raise ValueError(f"d_{k} has shape {m.shape}, expected {(self.ranks[k - 1], self.ranks[k])}")
        for k in range(1, len(self.boundaries)):
            if not (self.boundaries[k - 1] @ self.boundaries[k]).is_zero():
                raise ValueError(f"d_{k} d_{k + 1} != 0")
        if basis_labels is not None:
            basis_labels = tuple(tuple(lbls) for lbls in basis_labels)
            if tuple(len(lbls) for lbls in basis_labels) != self.ranks:
                raise ValueError("basis_labels must give one label per generator")
        self.basis_labels = basis_labels
        if partition is not None:
            partition = tuple(tuple((int(k), int(i)) for k, i in part) for part in partition)
            _check_partition(self.ranks, partition)
        self.partition = partition

    @property
    def dim(self) -> int:
        return len(self.ranks) - 1

    def boundary(self, k: int) -> Matrix:
        """d_k, including the zero maps at the ends."""
        if 1 <= k <= len(self.boundaries):
            return self.boundaries[k - 1]
        return Matrix.zeros(self.ring, self.rank(k - 1), self.rank(k))

    def rank(self, k: int) -> int:
        return self.ranks[k] if 0 <= k < len(self.ranks) else 0

    def map(self, ring, f) -> "ChainComplex":
        return ChainComplex(
            ring, self.ranks, [m.map(ring, f) for m in self.boundaries], self.basis_labels, self.partition
        )

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return (self.ring, self.ranks, self.boundaries, self.basis_labels, self.partition) == (
            other.ring, other.ranks, other.boundaries, other.basis_labels, other.partition
        )

    def __repr__(self):
        return f"ChainComplex({self.ring.name}, ranks={list(self.ranks)})"


def _check_partition(ranks, partition):
    seen = set()
    for part in partition:
        even = odd = 0
        for k, i in part:
            if not (0 <= k < len(ranks) and 0 <= i < ranks[k]):
                raise ValueError(f"partition names a missing generator {(k, i)}")
            if (k, i) in seen:
                raise ValueError(f"generator {(k, i)} is in two parts")
            seen.add((k, i))
            if k % 2:
                odd += 1
            else:
                even += 1
        if even != odd:
            raise ValueError(f"part {part} has {even} even and {odd} odd generators")
    total = sum(ranks)
    if len(seen) != total:
        raise ValueError(f"partition covers {len(seen)} of {total} generators")


def evaluate_complex(c: ChainComplex, n: int) -> ChainComplex:
    """Push a complex over R into Q(zeta_n) along u -> zeta."""
    field = CyclotomicField(n)
    return c.map(field, lambda x: eval_cyclotomic(x, n))


def change_basis(c: ChainComplex, k: int, a: Matrix, a_inv: Matrix) -> ChainComplex:
    """New basis of C_k given by the columns of ``a``: d_k -> d_k a, d_{k+1} -> a^-1 d_{k+1}."""
    bs = list(c.boundaries)
    if k >= 1:
        bs[k - 1] = bs[k - 1] @ a
    if k + 1 <= len(bs):
        bs[k] = a_inv @ bs[k]
    return ChainComplex(c.ring, c.ranks, bs)


# contraction


@dataclass(frozen=True)
class Contraction:
    """delta_k : C_k -> C_{k+1}; ``maps[k]`` has shape n_{k+1} x n_k."""

    maps: tuple

    def delta(self, k: int):
        return self.maps[k] if 0 <= k < len(self.maps) else None


def homology_ranks(c: ChainComplex) -> list:
    """Rank of H_k for each degree (over a field)."""
    rk = [0] + [len(row_reduce(m)[1]) for m in c.boundaries] + [0]
    return [c.ranks[k] - rk[k] - rk[k + 1] for k in range(len(c.ranks))]


def check_acyclic(c: ChainComplex) -> None:
    for k, h in enumerate(homology_ranks(c)):
        if h:
            raise NotAcyclic(k, h)


def find_contraction(c: ChainComplex, pivot_order: str = "first") -> Contraction:
    """Solve d_{k+1} delta_k = 1 - delta_{k-1} d_k degree by degree."""
    check_acyclic(c)
    ring = c.ring
    maps = []
    prev = None
    for k in range(len(c.ranks)):
        nk = c.ranks[k]
        rhs = Matrix.identity(ring, nk)
        if prev is not None:
            rhs = rhs - prev @ c.boundary(k)
        up = c.boundary(k + 1)
        try:
            delta = solve(up, rhs, pivot_order)
        except ValueError as exc:
            if isinstance(exc, NonUnitPivot):
                raise
            raise NotAcyclic(k, nk) from exc
        maps.append(delta)
        prev = delta
    out = Contraction(tuple(maps))
    _check_contraction(c, out)
    return out


def _check_contraction(c: ChainComplex, delta: Contraction) -> None:
    ring = c.ring
    for k in range(len(c.ranks)):
        total = c.boundary(k + 1) @ delta.maps[k]
        if k >= 1:
            total = total + delta.maps[k - 1] @ c.boundary(k)
        if total != Matrix.identity(ring, c.ranks[k]):
            raise AssertionError(f"contraction identity fails in degree {k}")


# torsion values


def _hnf2(vectors):
    """Hermite basis ((h11, h12), (0, h22)) of the lattice spanned in Z^2."""
    rows = [list(v) for v in vectors if any(v)]
    h11 = h12 = h22 = 0
    # gcd-combine first coordinates
    first = None
    rest = []
    for r in rows:
        if first is None:
            first = r
            continue
        a, b = first, r
        while b[0]:
            q = a[0] // b[0]
            a, b = b, [a[0] - q * b[0], a[1] - q * b[1]]
        first = a
        rest.append(b)
    if first is not None:
        if first[0] < 0:
            first = [-first[0], -first[1]]
        if first[0] == 0:
            rest.append(first)
            first = None
    g = 0
    for r in rest:
        g = gcd(g, r[1])
    h22 = g
    if first is not None:
        h11 = first[0]
        h12 = first[1] % h22 if h22 else first[1]
    return (h11, h12), (0, h22)


def _valuations(x: RingElem):
    """(u-adic, (1-u)-adic) valuation of a nonzero element of R."""
    num = x.numerator
    a = num.min_exp()
    if x.denom_pow:
        return a, -x.denom_pow
    p = num.shift(-a)
    b = 0
    while p.value_at_one() == 0:
        p = p.divide_one_minus_u()
        b += 1
    return a, b


def _domain_of(value):
    if isinstance(value, Cyclotomic):
        return CyclotomicField(value.order)
    if isinstance(value, RingElem):
        return RR
    from .linalg import QQ

    return QQ


def _finite_group(value, gens):
    """All elements of +-<gens> (the generators must have finite order)."""
    one = value * 0 + 1
    group = {one, -one}
    frontier = list(group)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in group:
                    if len(group) > 10_000:
                        raise ValueError(f"generator {g} does not have finite order")
                    group.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(group)


class TorsionValue:
    """A nonzero value modulo the subgroup +-<gens>.

    Over Q(zeta_n) the generators must be roots of unity and the
    representative is the coset member with the lexicographically largest
    coefficient vector. Over R the generators must be units; the
    representative has its u and (1-u) valuations reduced against the
    Hermite basis of the exponent lattice and a positive lowest coefficient.
    """

    __slots__ = ("value", "modulo", "_canon")

    def __init__(self, value, modulo=()):
        if value == 0:
            raise ValueError("torsion value must be nonzero")
        self.value = value
        if isinstance(value, RingElem):
            vecs = []
            for gen in modulo:
                unit = is_unit(gen if isinstance(gen, RingElem) else RingElem(gen))
                if unit is None:
                    raise NotAUnit(f"generator {gen} is not a unit")
                vecs.append((unit.a, unit.b))
            self.modulo = _hnf2(vecs)
        else:
            self.modulo = _finite_group(value, [g if not isinstance(value, Cyclotomic) else _as_cyc(g, value.order) for g in modulo])
        self._canon = self._canonical()

    def _canonical(self):
        v = self.value
        if isinstance(v, RingElem):
            (h11, h12), (_, h22) = self.modulo
            a, b = _valuations(v)
            if h11:
                q = a // h11
                a, b = a - q * h11, b - q * h12
                v = v * RingElem.unit(1, -q * h11, -q * h12)
            if h22:
                q = b // h22
                v = v * RingElem.unit(1, 0, -q * h22)
            lead = v.numerator.terms[v.numerator.min_exp()]
            return -v if lead < 0 else v
        if isinstance(v, Cyclotomic):
            width = totient(v.order)

            def key(x):
                return tuple(x.coeffs) + (Fraction(0),) * (width - len(x.coeffs))

            return max((v * g for g in self.modulo), key=key)
        return max(v * g for g in self.modulo)

    @property
    def representative(self):
        return self._canon

    def inverse(self) -> "TorsionValue":
        out = TorsionValue.__new__(TorsionValue)
        out.value = 1 / self.value if not isinstance(self.value, (RingElem, Cyclotomic)) else self.value.inverse()
        out.modulo = self.modulo
        out._canon = out._canonical()
        return out

    def __mul__(self, other: "TorsionValue") -> "TorsionValue":
        if self.modulo != other.modulo:
            raise ValueError("torsion values modulo different subgroups")
        out = TorsionValue.__new__(TorsionValue)
        out.value = self.value * other.value
        out.modulo = self.modulo
        out._canon = out._canonical()
        return out

    def __eq__(self, other):
        if not isinstance(other, TorsionValue):
            return NotImplemented
        return type(self.value) is type(other.value) and self.modulo == other.modulo and self._canon == other._canon

    def __hash__(self):
        return hash(self._canon)

    def __repr__(self):
        return f"TorsionValue(+-{_domain_of(self.value).render(self._canon)})"


def _as_cyc(g, n):
    return g if isinstance(g, Cyclotomic) else Cyclotomic(n, [g])


def reidemeister_class(t: TorsionValue, subgroup_gens) -> TorsionValue:
    """Coarsen the quotient by extra unit generators."""
    if isinstance(t.value, RingElem):
        (h11, h12), (_, h22) = t.modulo
        old = [g for g in ((h11, h12), (0, h22)) if any(g)]
        gens = [RingElem.unit(1, a, b) for a, b in old] + list(subgroup_gens)
    else:
        gens = list(t.modulo) + list(subgroup_gens)
    return TorsionValue(t.value, gens)


# algorithms


def _odd_even_matrix(c: ChainComplex, delta: Contraction) -> Matrix:
    ring = c.ring
    evens = [k for k in range(len(c.ranks)) if k % 2 == 0]
    odds = [k for k in range(len(c.ranks)) if k % 2 == 1]
    blocks = {}
    for bi, e in enumerate(evens):
        for bj, o in enumerate(odds):
            if e == o - 1:
                blocks[(bi, bj)] = c.boundary(o)
            elif e == o + 1:
                blocks[(bi, bj)] = delta.maps[o]
    return block_matrix(ring, [c.ranks[k] for k in evens], [c.ranks[k] for k in odds], blocks)


def _check_balance(c: ChainComplex):
    even = sum(r for k, r in enumerate(c.ranks) if k % 2 == 0)
    odd = sum(r for k, r in enumerate(c.ranks) if k % 2 == 1)
    if even != odd:
        raise RankMismatch(f"odd rank {odd} != even rank {even}")


def _wrap(c: ChainComplex, value) -> TorsionValue:
    if c.ring == RR and is_unit(value) is None:
        raise NotAUnit(f"torsion {value} is not a unit of R")
    return TorsionValue(value)


def torsion_det(c: ChainComplex, pivot_order: str = "first") -> TorsionValue:
    """det of d + delta from odd to even degrees, modulo +-1."""
    _check_balance(c)
    delta = find_contraction(c, pivot_order)
    return _wrap(c, det(_odd_even_matrix(c, delta)))


def torsion_minors(c: ChainComplex) -> TorsionValue:
    """Alternating product of pivotal minors of the boundary matrices.

    S_k are pivot columns of d_k restricted to the rows of C_{k-1} not
    already used by S_{k-1}; each minor d_k[rows, S_k] is square and
    invertible when the complex is acyclic.
    """
    _check_balance(c)
    check_acyclic(c)
    ring = c.ring
    value = ring.one
    prev_cols = []
    for k in range(1, len(c.ranks)):
        rows = [i for i in range(c.ranks[k - 1]) if i not in set(prev_cols)]
        sub = c.boundary(k).submatrix(rows, list(range(c.ranks[k])))
        _, pivots, _ = row_reduce(sub)
        if len(pivots) != len(rows):
            raise NotAcyclic(k - 1, len(rows) - len(pivots))
        minor = det_expansion(sub.submatrix(list(range(len(rows))), pivots))
        value = value * minor if k % 2 else value * ring.inv(minor)
        prev_cols = pivots
    return _wrap(c, value)


def suspend(c: ChainComplex) -> ChainComplex:
    """Shift every generator up one degree."""
    if not any(c.ranks):
        return ChainComplex(c.ring, (), [])
    ranks = (0,) + c.ranks
    bs = [Matrix.zeros(c.ring, 0, c.ranks[0])] + list(c.boundaries)
    labels = ((),) + c.basis_labels if c.basis_labels is not None else None
    part = None
    if c.partition is not None:
        part = tuple(tuple((k + 1, i) for k, i in p) for p in c.partition)
    return ChainComplex(c.ring, ranks, bs, labels, part)


def circle_complex(ring, x=None) -> ChainComplex:
    """0 -> C_1 -> C_0 -> 0 with d = (1 - u), or d = (x) if given."""
    if x is None:
        x = ring.coerce(RingElem.one_minus_u())
    return ChainComplex(ring, (1, 1), [[[x]]])


# random complexes with known torsion


def random_basis_change(ring, n, rng, steps=6, entries=None):
    """(A, A^-1) with A a product of random elementary matrices."""
    if entries is None:
        entries = [ring.coerce(k) for k in (-2, -1, 1, 2, 3)]
    a = [list(r) for r in Matrix.identity(ring, n).rows]
    ainv = [list(r) for r in Matrix.identity(ring, n).rows]
    if n >= 2:
        for _ in range(steps):
            i, j = rng.sample(range(n), 2)
            s = rng.choice(entries)
            # A <- A E_ij(s): column j += s column i; A^-1 <- E_ij(-s) A^-1: row i -= s row j
            for r in a:
                r[j] = r[j] + s * r[i]
            ainv[i] = [p - s * q for p, q in zip(ainv[i], ainv[j])]
    return Matrix(ring, n, n, a), Matrix(ring, n, n, ainv)


def random_acyclic_complex(ring, rng, length=3, max_pieces=3, scalars=None, steps=6):
    """A scrambled direct sum of 1 x 1 two-term pieces, with its torsion.

    Returns ``(complex, expected)`` where ``expected`` is the product of the
    piece scalars with alternating exponents, which basis changes of
    determinant one cannot alter.
    """
    if scalars is None:
        scalars = [ring.coerce(k) for k in (1, -1, 2, 3, -5)]
    pieces = []
    for k in range(1, length + 1):
        for _ in range(rng.randint(0, max_pieces)):
            pieces.append((k, rng.choice(scalars)))
    if not pieces:
        pieces.append((1, rng.choice(scalars)))
    top = max(k for k, _ in pieces)
    ranks = [0] * (top + 1)
    index = {}
    for p, (k, _) in enumerate(pieces):
        index[(p, k)] = ranks[k]
        ranks[k] += 1
        index[(p, k - 1)] = ranks[k - 1]
        ranks[k - 1] += 1
    bs = []
    for k in range(1, top + 1):
        rows = [[ring.zero] * ranks[k] for _ in range(ranks[k - 1])]
        for p, (kk, s) in enumerate(pieces):
            if kk == k:
                rows[index[(p, k - 1)]][index[(p, k)]] = s
        bs.append(Matrix(ring, ranks[k - 1], ranks[k], rows))
    expected = ring.one
    for k, s in pieces:
        expected = expected * s if k % 2 else expected * ring.inv(s)
    c = ChainComplex(ring, ranks, bs)
    for k in range(top + 1):
        a, ainv = random_basis_change(ring, ranks[k], rng, steps)
        c = change_basis(c, k, a, ainv)
    return c, TorsionValue(expected)


# serialization


def dumps_complex(c: ChainComplex) -> str:
    lines = [f"ring: {c.ring.name}", "ranks: " + " ".join(str(r) for r in c.ranks)]
    if c.basis_labels is not None:
        lines.append("labels: " + " | ".join(" ".join(lbls) for lbls in c.basis_labels))
    for k, m in enumerate(c.boundaries, start=1):
        lines.append(f"d{k}:")
        if m.ncols:
            for r in m.rows:
                lines.append(", ".join(c.ring.render(x) for x in r))
    if c.partition is not None:
        lines.append(
            "partition: " + " | ".join(" ".join(f"{k}:{i}" for k, i in part) for part in c.partition)
        )
    return "\n".join(lines) + "\n"


def loads_complex(text: str) -> ChainComplex:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if len(lines) < 2 or not lines[0].startswith("ring:") or not lines[1].startswith("ranks:"):
        raise ValueError("complex text must start with 'ring:' and 'ranks:' lines")
    ring = domain_from_name(lines[0][5:])
    ranks = [int(t) for t in lines[1][6:].split()]
    pos = 2
    labels = None
    if pos < len(lines) and lines[pos].startswith("labels:"):
        labels = [grp.split() for grp in lines[pos][7:].split("|")]
        pos += 1
    bs = []
    for k in range(1, len(ranks)):
        if pos >= len(lines) or lines[pos] != f"d{k}:":
            raise ValueError(f"expected 'd{k}:'")
        pos += 1
        rows = []
        for _ in range(ranks[k - 1] if ranks[k] else 0):
            if pos >= len(lines):
                raise ValueError(f"d{k} has too few rows")
            entries = [ring.parse(t) for t in lines[pos].split(",")]
            if len(entries) != ranks[k]:
                raise ValueError(f"d{k} row has {len(entries)} entries, expected {ranks[k]}")
            rows.append(entries)
            pos += 1
        if not ranks[k]:
            rows = [[] for _ in range(ranks[k - 1])]
        bs.append(Matrix(ring, ranks[k - 1], ranks[k], rows))
    partition = None
    if pos < len(lines) and lines[pos].startswith("partition:"):
        partition = []
        for grp in lines[pos][10:].split("|"):
            partition.append([tuple(int(t) for t in item.split(":")) for item in grp.split()])
        pos += 1
    if pos != len(lines):
        raise ValueError(f"unexpected trailing line {lines[pos]!r}")
    return ChainComplex(ring, ranks, bs, labels, partition)
