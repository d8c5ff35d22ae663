"""From a bicolored trivalent ribbon graph to its torsion invariants.

Edge labels are handled as exponents: every label is +-u^k, so the
handle-slide relations become integer linear equations in the b-label
exponents (the a-label exponent of the same half-edge is lambda - b, where
v = u^lambda).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations

from .cocycle import euler_number_clutching, euler_number_cocycle
from .cyclotomic import Cyclotomic, cyc_equal_up_to_sign, totient
from .errors import (
    InconsistentSystem,
    InvalidTolerance,
    NotASpanningTree,
    NoValidCutEdge,
    UndefinedTorsion,
)
from .linalg import RR
from .ribbon import POS, RibbonGraph, face_of, require_valid, winding_number
from .ring import ONE, U, UnitUpToSign, eval_cyclotomic
from .torsion import ChainComplex, TorsionValue, evaluate_complex, reidemeister_class, torsion_det

# torsion


@dataclass(frozen=True)
class TorsionReport:
    n: int
    epsilon: int
    w: int
    tau: Cyclotomic
    tau_class: TorsionValue
    reidemeister: TorsionValue
    euler_number: int

    @property
    def inconclusive(self) -> bool:
        """zeta is real for n = 2, so the sign of w cannot be seen."""
        return self.n == 2


def fibre_complex(epsilon: int) -> ChainComplex:
    """0 -> C_1 -> C_0 -> 0 over R with boundary 1 - u^epsilon."""
    return ChainComplex(RR, (1, 1), [[[ONE - U ** epsilon]]])


def legendrian_turaev_torsion(g: RibbonGraph) -> TorsionReport:
    require_valid(g)
    w = winding_number(g)
    if abs(w) < 2:
        raise UndefinedTorsion(f"torsion undefined for |w|={abs(w)}")
    n, eps = abs(w), (1 if w > 0 else -1)
    e = euler_number_cocycle(g)
    if abs(e) != n:
        raise AssertionError(f"Euler number {e} disagrees with w = {w}")
    c = fibre_complex(eps)
    over_r = torsion_det(c)
    tau = eval_cyclotomic(over_r.value, n)
    over_field = torsion_det(evaluate_complex(c, n))
    tau_class = TorsionValue(tau)
    if over_field != tau_class:
        raise AssertionError("torsion over R and over Q(zeta_n) disagree")
    zeta = Cyclotomic.zeta(n)
    return TorsionReport(
        n=n,
        epsilon=eps,
        w=w,
        tau=tau,
        tau_class=tau_class,
        reidemeister=reidemeister_class(tau_class, [zeta]),
        euler_number=e,
    )


class Verdict(str, Enum):
    DISTINCT_BY_REIDEMEISTER = "DistinctByReidemeister"
    DISTINCT_BY_TURAEV = "DistinctByTuraev"
    INDISTINGUISHABLE = "Indistinguishable"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.value


def distinguish(g1: RibbonGraph, g2: RibbonGraph) -> Verdict:
    require_valid(g1)
    require_valid(g2)
    w1, w2 = winding_number(g1), winding_number(g2)
    if abs(w1) != abs(w2):
        return Verdict.DISTINCT_BY_REIDEMEISTER
    n = abs(w1)
    if n >= 3:
        t1 = legendrian_turaev_torsion(g1).tau
        t2 = legendrian_turaev_torsion(g2).tau
        if not cyc_equal_up_to_sign(t1, t2):
            return Verdict.DISTINCT_BY_TURAEV
    elif n in (1, 2) and w1 != w2:
        return Verdict.INCONCLUSIVE
    return Verdict.INDISTINGUISHABLE


# edge labels


@dataclass(frozen=True)
class VertexLabels:
    """Exponents of the labels on the three half-edges of one vertex."""

    vertex: str
    sign: int
    half_edges: tuple
    a: tuple
    b: tuple
    c: tuple

    def units(self, kind: str):
        return tuple(UnitUpToSign(k) for k in getattr(self, kind))


@dataclass(frozen=True)
class EdgeLabeling:
    labels: tuple
    cut_edge: tuple
    v_exp: int
    n: int
    w: int
    closure_exponent: int

    @property
    def v(self) -> UnitUpToSign:
        return UnitUpToSign(self.v_exp)

    def of(self, vertex: str) -> VertexLabels:
        for lab in self.labels:
            if lab.vertex == vertex:
                return lab
        raise KeyError(vertex)

    @property
    def closure(self) -> str:
        return f"v^{self.w} = u^{self.closure_exponent}"


def valid_cut_edges(g: RibbonGraph):
    """Edges whose two sides lie on different faces."""
    fo = face_of(g)
    return [e for e in g.edges if fo[e[0]] != fo[e[1]]]


def _spanning_tree(g: RibbonGraph, root: str):
    """BFS tree: parent half-edge pair per vertex, and the visiting order."""
    parent = {root: None}
    order = [root]
    for name in order:
        for h in g.vertex(name).half_edges:
            k = g.pairing(h)
            nb = g.vertex_of(k)
            if nb not in parent:
                parent[nb] = (k, h)  # (half-edge at child, half-edge at parent)
                order.append(nb)
    return parent, order


def solve_edge_labels(g: RibbonGraph, cut=None, euler_number=None) -> EdgeLabeling:
    """Unit labels u^k satisfying the vertex, edge and cut relations.

    Unknowns are the b-exponents beta_h, one per half-edge, and lambda with
    v = u^lambda. Equations: sum of beta at a vertex is lambda (positive) or
    2 lambda (negative); beta_h + beta_h' = lambda across an edge, and
    lambda - n across the cut. Co-tree edges are gauge-fixed to zero, the
    tree is solved leaf-first with values affine in lambda, and the root
    equation determines lambda, which must come out as sign(w).
    """
    require_valid(g)
    w = winding_number(g)
    if w == 0:
        raise UndefinedTorsion("edge labels need w != 0 (v = u^lambda with lambda = n / w)")
    n = abs(euler_number if euler_number is not None else euler_number_clutching(g))
    valid = valid_cut_edges(g)
    if cut is None:
        if not valid:
            raise NoValidCutEdge(
                "every edge has both sides on the same face; the 2-fold covering fallback is not implemented"
            )
        cut_e = valid[0]
    else:
        cut_e = g.find_edge(cut)
        if cut_e not in valid:
            raise NoValidCutEdge(
                f"edge {cut_e[0]}-{cut_e[1]} has both sides on one face; choose another edge "
                "(the 2-fold covering fallback is not implemented)"
            )
    twist = {cut_e[0]: n, cut_e[1]: n}

    # affine values (constant, coefficient of lambda)
    beta = {}
    root = g.vertices[0].name
    parent, order = _spanning_tree(g, root)
    tree_halves = {p[0] for p in parent.values() if p} | {p[1] for p in parent.values() if p}
    for h in g.half_edges:
        if h in tree_halves or h in beta:
            continue
        k = g.pairing(h)
        beta[h] = (0, 0)
        beta[k] = (-twist.get(h, 0), 1)

    def rhs(name):
        return (0, 1) if g.vertex(name).sign == POS else (0, 2)

    for name in reversed(order[1:]):
        h_child, h_par = parent[name]
        c0, c1 = rhs(name)
        for h in g.vertex(name).half_edges:
            if h != h_child:
                b0, b1 = beta[h]
                c0, c1 = c0 - b0, c1 - b1
        beta[h_child] = (c0, c1)
        beta[h_par] = (-twist.get(h_child, 0) - c0, 1 - c1)

    r0, r1 = rhs(root)
    s0 = sum(beta[h][0] for h in g.vertex(root).half_edges)
    s1 = sum(beta[h][1] for h in g.vertex(root).half_edges)
    # (s1 - r1) * lambda = r0 - s0
    if s1 == r1:
        raise InconsistentSystem("root equation does not determine v")
    lam = Fraction(r0 - s0, s1 - r1)
    eps = 1 if w > 0 else -1
    if lam.denominator != 1 or lam != eps:
        raise InconsistentSystem(f"label system forces v = u^{lam}, expected u^{eps}")
    lam = int(lam)
    bexp = {h: b0 + b1 * lam for h, (b0, b1) in beta.items()}

    labels = []
    for vert in g.vertices:
        hs = vert.half_edges
        b = tuple(bexp[h] for h in hs)
        a = tuple(lam - x for x in b)
        c = b if vert.sign == POS else a
        labels.append(VertexLabels(vert.name, vert.sign, hs, a, b, c))
    front, back = cut_e
    closure = (lam - bexp[front]) + (lam - bexp[back]) - lam
    out = EdgeLabeling(
        labels=tuple(labels), cut_edge=cut_e, v_exp=lam, n=n, w=w, closure_exponent=closure
    )
    problems = check_labeling(g, out)
    if problems:
        raise InconsistentSystem("; ".join(problems))
    return out


def check_labeling(g: RibbonGraph, lab: EdgeLabeling) -> list:
    """Re-verify every label relation directly; returns the failures."""
    problems = []
    lam = lab.v_exp
    alpha, beta = {}, {}
    for vl in lab.labels:
        vert = g.vertex(vl.vertex)
        if vl.half_edges != vert.half_edges:
            problems.append(f"{vl.vertex}: half-edges out of order")
            continue
        for i, h in enumerate(vl.half_edges):
            alpha[h], beta[h] = vl.a[i], vl.b[i]
            if vl.a[i] + vl.b[i] != lam:
                problems.append(f"{h}: a b != v")
        for i in range(3):
            j, k = (i + 1) % 3, (i + 2) % 3
            if vert.sign == POS:
                if vl.a[i] != vl.b[j] + vl.b[k]:
                    problems.append(f"{vl.vertex}: a_{i + 1} != b_{j + 1} b_{k + 1}")
                if vl.c[i] != vl.b[i]:
                    problems.append(f"{vl.vertex}: c_{i + 1} != -b_{i + 1}")
            else:
                if vl.b[i] != vl.a[j] + vl.a[k]:
                    problems.append(f"{vl.vertex}: b_{i + 1} != a_{j + 1} a_{k + 1}")
                if vl.c[i] != vl.a[i]:
                    problems.append(f"{vl.vertex}: c_{i + 1} != -a_{i + 1}")
    for h, k in g.edges:
        shift = lab.n if {h, k} == set(lab.cut_edge) else 0
        if beta.get(k) != alpha.get(h, 0) - shift or beta.get(h) != alpha.get(k, 0) - shift:
            where = "cut edge" if shift else "edge"
            problems.append(f"{where} {h}-{k}: facing labels do not match")
    if lab.n != lab.v_exp * lab.w or lab.closure_exponent != lab.n:
        problems.append(f"closure fails: v^{lab.w} != u^{lab.n}")
    return problems


# perimeter relation b^k = a^(m-k)


@dataclass(frozen=True)
class JKSReport:
    holds: bool
    m: int
    k: int
    perimeter: tuple
    alpha: tuple
    beta: tuple
    subsets_checked: int

    def __bool__(self):
        return self.holds


def _check_tree(g: RibbonGraph, tree):
    edges = [g.find_edge(e) for e in tree]
    if len(set(edges)) != len(g.vertices) - 1:
        raise NotASpanningTree(f"a spanning tree has {len(g.vertices) - 1} edges, got {len(set(edges))}")
    comp = {v.name: v.name for v in g.vertices}

    def find(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for h, k in set(edges):
        a, b = find(g.vertex_of(h)), find(g.vertex_of(k))
        if a == b:
            raise NotASpanningTree(f"edge {h}-{k} closes a cycle")
        comp[a] = b
    return set(edges)


def tree_perimeter(g: RibbonGraph, tree_edges) -> list:
    """Leaves (co-tree half-edges) in the order met walking around the thickened tree."""
    inside = {h for e in tree_edges for h in e}
    leaves = [h for h in g.half_edges if h not in inside]
    if not leaves:
        return []
    out = []
    h = leaves[0]
    while True:
        out.append(h)
        h = g.rotation(h)
        while h in inside:
            h = g.rotation(g.pairing(h))
        if h == leaves[0]:
            break
    return out


def verify_jks(g: RibbonGraph, tree, samples: int = 20, seed: int = 0) -> JKSReport:
    """Check prod_{j in J} b_j = prod_{i not in J} a_i around the perimeter.

    Only the vertex relations and the tree-edge relations are imposed; the
    leaf labels are otherwise random (one leaf at the root takes up the
    slack). With p positive vertices, the a-labels around the perimeter
    multiply to v^(p+1), and every J of size k = p + 1 is tested in
    exponent arithmetic.
    """
    require_valid(g)
    tree_edges = _check_tree(g, tree)
    w = winding_number(g)
    lam = 1 if w >= 0 else -1
    rng = random.Random(seed)
    inside = {h for e in tree_edges for h in e}
    perimeter = tree_perimeter(g, tree_edges)
    m = len(perimeter)

    # orient the tree from a root carrying a leaf
    root = next(v.name for v in g.vertices if any(h not in inside for h in v.half_edges))
    slack = next(h for h in g.vertex(root).half_edges if h not in inside)
    beta = {h: rng.randint(-5, 5) for h in perimeter if h != slack}
    parent = {root: None}
    order = [root]
    for name in order:
        for h in g.vertex(name).half_edges:
            if h in inside:
                k = g.pairing(h)
                nb = g.vertex_of(k)
                if nb not in parent:
                    parent[nb] = (k, h)
                    order.append(nb)

    def rhs(name):
        return lam if g.vertex(name).sign == POS else 2 * lam

    for name in reversed(order[1:]):
        h_child, h_par = parent[name]
        beta[h_child] = rhs(name) - sum(beta[h] for h in g.vertex(name).half_edges if h != h_child)
        beta[h_par] = lam - beta[h_child]
    beta[slack] = rhs(root) - sum(beta[h] for h in g.vertex(root).half_edges if h != slack)

    # independent re-check of the imposed equations
    for vert in g.vertices:
        if sum(beta[h] for h in vert.half_edges) != rhs(vert.name):
            raise AssertionError(f"vertex relation fails at {vert.name}")
    for h, k in tree_edges:
        if beta[h] + beta[k] != lam:
            raise AssertionError(f"edge relation fails on {h}-{k}")

    b = tuple(beta[h] for h in perimeter)
    a = tuple(lam - x for x in b)
    p = sum(1 for v in g.vertices if v.sign == POS)
    k = p + 1
    holds = sum(a) == k * lam
    checked = 0
    if 0 <= k <= m:
        subsets = _sample_subsets(m, k, samples, rng)
        for J in subsets:
            holds = holds and check_jks_subset(a, b, J)
            checked += 1
    else:
        holds = False
    return JKSReport(holds=holds, m=m, k=k, perimeter=tuple(perimeter), alpha=a, beta=b, subsets_checked=checked)


def check_jks_subset(a, b, J) -> bool:
    """sum_{j in J} b_j == sum_{i not in J} a_i (empty sums are zero)."""
    J = set(J)
    return sum(b[j] for j in J) == sum(a[i] for i in range(len(a)) if i not in J)


def _sample_subsets(m, k, samples, rng):
    total = math.comb(m, k)
    if total <= samples:
        return [set(J) for J in combinations(range(m), k)]
    seen = set()
    while len(seen) < samples:
        seen.add(tuple(sorted(rng.sample(range(m), k))))
    return [set(J) for J in sorted(seen)]


# r_1


_MAX_TERMS = 10**8


def higher_torsion_r1(n: int, power: int = 1, tol: float = 1e-9) -> float:
    """n Im(sum_k zeta^(power k) / k^2), zeta = exp(2 pi i / n).

    The tail after K terms is bounded by Abel summation:
    |sum_{k>K} sin(k t)/k^2| <= 1 / ((K+1)^2 |sin(t/2)|), t = 2 pi power / n.
    """
    if not isinstance(tol, (int, float)) or not math.isfinite(tol) or tol <= 0:
        raise InvalidTolerance(f"tolerance must be a positive finite number, got {tol!r}")
    if n < 1:
        raise ValueError("n must be positive")
    if math.gcd(power, n) != 1:
        raise ValueError(f"zeta^{power} is not a primitive {n}-th root of unity")
    p = power % n
    if (2 * p) % n == 0:
        return 0.0
    s = abs(math.sin(math.pi * p / n))
    K = math.ceil(math.sqrt(n / (tol * s)))
    if K > _MAX_TERMS:
        raise InvalidTolerance(f"tolerance {tol} needs more than {_MAX_TERMS} terms")
    table = [math.sin(2 * math.pi * r / n) for r in range(n)]
    total = math.fsum(table[(p * k) % n] / (k * k) for k in range(1, K + 1))
    return n * total


# serialization


def _coeff_strings(x: Cyclotomic):
    width = totient(x.order)
    cs = list(x.coeffs) + [Fraction(0)] * (width - len(x.coeffs))
    return [str(Fraction(c)) for c in cs]


def report_to_dict(r: TorsionReport) -> dict:
    return {
        "n": r.n,
        "epsilon": r.epsilon,
        "w": r.w,
        "tau": str(r.tau_class.representative),
        "tau_coeffs": _coeff_strings(r.tau_class.representative),
        "reidemeister_rep": _coeff_strings(r.reidemeister.representative),
        "inconclusive": r.inconclusive,
    }


def labeling_to_dict(lab: EdgeLabeling) -> dict:
    return {
        "n": lab.n,
        "epsilon": lab.v_exp,
        "labels": [
            {"vertex": vl.vertex, "half_edges": list(vl.half_edges), "a": list(vl.a), "b": list(vl.b), "c": list(vl.c)}
            for vl in lab.labels
        ],
        "cut_edge": f"{lab.cut_edge[0]}-{lab.cut_edge[1]}",
        "closure": {"w": lab.w, "n": lab.closure_exponent, "relation": lab.closure},
    }


__all__ = [
    "EdgeLabeling",
    "JKSReport",
    "TorsionReport",
    "Verdict",
    "VertexLabels",
    "check_jks_subset",
    "check_labeling",
    "distinguish",
    "fibre_complex",
    "higher_torsion_r1",
    "labeling_to_dict",
    "legendrian_turaev_torsion",
    "report_to_dict",
    "solve_edge_labels",
    "tree_perimeter",
    "valid_cut_edges",
    "verify_jks",
]
