import math
import random

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meshtorsion.cocycle import euler_number_cocycle
from meshtorsion.cyclotomic import Cyclotomic, cyc_equal_up_to_sign
from meshtorsion.errors import (
    InconsistentSystem,
    InvalidTolerance,
    NotASpanningTree,
    NoValidCutEdge,
    UndefinedTorsion,
)
from meshtorsion.library import CLUSTER_CUT_EDGE, cluster_graph, cluster_tree, prism, theta, theta_torus
from meshtorsion.mesh import (
    Verdict,
    check_jks_subset,
    check_labeling,
    distinguish,
    higher_torsion_r1,
    labeling_to_dict,
    legendrian_turaev_torsion,
    report_to_dict,
    solve_edge_labels,
    tree_perimeter,
    valid_cut_edges,
    verify_jks,
)
from meshtorsion.ribbon import NEG, POS, mirror, random_graph, recolor, validate, winding_number


def graph_with_w(target, seed=0):
    rng = random.Random(seed)
    while True:
        g = random_graph(2 * abs(target), seed=rng.randrange(2**32), colors="+" if target > 0 else "-")
        if not validate(g):
            return g


def test_cluster_graph_report():
    r = legendrian_turaev_torsion(cluster_graph())
    assert (r.n, r.epsilon, r.w) == (3, 1, 3)
    z = Cyclotomic.zeta(3)
    assert cyc_equal_up_to_sign(r.tau, 1 - z)
    assert not r.inconclusive


def test_prism_pair():
    plus = legendrian_turaev_torsion(prism(POS))
    minus = legendrian_turaev_torsion(recolor(mirror(prism(POS)), NEG))
    z = Cyclotomic.zeta(3)
    assert (plus.n, plus.epsilon) == (3, 1)
    assert (minus.n, minus.epsilon) == (3, -1)
    assert cyc_equal_up_to_sign(plus.tau, 1 - z)
    assert cyc_equal_up_to_sign(minus.tau, 1 - z.inverse())
    assert plus.reidemeister == minus.reidemeister
    assert plus.tau_class != minus.tau_class


@pytest.mark.parametrize("g", [theta(), theta(NEG, NEG), theta(POS, NEG), theta_torus()])
def test_undefined_for_small_w(g):
    with pytest.raises(UndefinedTorsion, match=r"\|w\|="):
        legendrian_turaev_torsion(g)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 6), st.integers(0, 10**6))
def test_mirrored_recoloring_flips_epsilon(n, seed):
    g = random_graph(2 * n, seed=seed)
    a = legendrian_turaev_torsion(recolor(g, POS))
    b = legendrian_turaev_torsion(recolor(mirror(g), NEG))
    assert (b.n, b.epsilon) == (a.n, -a.epsilon)
    assert a.reidemeister == b.reidemeister
    assert cyc_equal_up_to_sign(a.tau, b.tau) == (n == 2)
    assert a.n == abs(euler_number_cocycle(recolor(g, POS)))


def test_distinguish():
    p = prism(POS)
    m = recolor(mirror(p), NEG)
    assert distinguish(p, m) == Verdict.DISTINCT_BY_TURAEV
    assert distinguish(p, p) == Verdict.INDISTINGUISHABLE
    assert distinguish(p, theta()) == Verdict.DISTINCT_BY_REIDEMEISTER
    g2 = graph_with_w(2)
    assert distinguish(g2, recolor(mirror(g2), NEG)) == Verdict.INCONCLUSIVE
    assert distinguish(theta(), theta(NEG, NEG)) == Verdict.INCONCLUSIVE
    assert str(Verdict.INCONCLUSIVE) == "Inconclusive"


def test_n_two_is_reported_but_inconclusive():
    r = legendrian_turaev_torsion(graph_with_w(2))
    assert r.n == 2 and r.inconclusive
    s = legendrian_turaev_torsion(graph_with_w(-2))
    assert cyc_equal_up_to_sign(r.tau, s.tau)


def test_closure_on_cluster_graph():
    lab = solve_edge_labels(cluster_graph(), cut=CLUSTER_CUT_EDGE)
    assert lab.closure == "v^3 = u^3"
    assert lab.v_exp == 1 and lab.n == 3 and lab.closure_exponent == 3
    assert check_labeling(cluster_graph(), lab) == []
    assert lab.cut_edge == CLUSTER_CUT_EDGE
    m2 = lab.of("M2")
    assert m2.sign == NEG and sum(m2.b) == 2


@pytest.mark.parametrize("cut", ["a-d", "b-f", "c-e"])
def test_theta_any_cut(cut):
    lab = solve_edge_labels(theta(), cut=cut)
    assert lab.closure == "v^1 = u^1"
    assert check_labeling(theta(), lab) == []


def test_no_valid_cut_edge():
    assert valid_cut_edges(theta_torus()) == []
    with pytest.raises(NoValidCutEdge, match="2-fold covering"):
        solve_edge_labels(theta_torus())


def test_wrong_euler_number_is_inconsistent():
    with pytest.raises(InconsistentSystem):
        solve_edge_labels(cluster_graph(), euler_number=5)


def test_check_labeling_catches_tampering():
    g = cluster_graph()
    lab = solve_edge_labels(g)
    vl = lab.labels[0]
    bad = type(vl)(vl.vertex, vl.sign, vl.half_edges, vl.a, (vl.b[0] + 1,) + vl.b[1:], vl.c)
    tampered = type(lab)((bad,) + lab.labels[1:], lab.cut_edge, lab.v_exp, lab.n, lab.w, lab.closure_exponent)
    assert check_labeling(g, tampered)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10**6))
def test_labels_on_random_graphs(k, seed):
    g = random_graph(2 * k, seed=seed)
    w = winding_number(g)
    if w == 0 or not valid_cut_edges(g):
        return
    for e in valid_cut_edges(g)[:3]:
        lab = solve_edge_labels(g, cut=e)
        assert check_labeling(g, lab) == []
        assert lab.n == abs(w) and lab.v_exp * w == lab.n


def test_json_shapes():
    r = report_to_dict(legendrian_turaev_torsion(cluster_graph()))
    assert set(r) >= {"n", "epsilon", "tau_coeffs", "reidemeister_rep"}
    assert r["tau_coeffs"] == ["1", "-1"]
    lab = labeling_to_dict(solve_edge_labels(cluster_graph(), cut=CLUSTER_CUT_EDGE))
    assert set(lab) >= {"n", "epsilon", "labels", "cut_edge", "closure"}
    assert set(lab["labels"][0]) == {"vertex", "half_edges", "a", "b", "c"}
    assert lab["cut_edge"] == "E56.N1-E56.N2"


def test_jks_cluster_graph():
    rep = verify_jks(cluster_graph(), cluster_tree(), samples=20)
    assert rep.holds
    assert (rep.m, rep.k) == (10, 8)
    assert rep.subsets_checked == 20
    assert sum(rep.alpha) == 8


def test_jks_theta():
    rep = verify_jks(theta(), [("a", "d")])
    assert rep and (rep.m, rep.k) == (4, 3)
    assert rep.subsets_checked == 4


def test_jks_perimeter_walk():
    g = cluster_graph()
    per = tree_perimeter(g, set(cluster_tree()))
    assert len(per) == len(set(per)) == 10


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_jks_on_random_trees(seed):
    rng = random.Random(seed)
    g = random_graph(2 * rng.randint(1, 5), seed=seed)
    # random spanning tree by randomized union-find
    comp = {v.name: v.name for v in g.vertices}

    def find(a):
        while comp[a] != a:
            a = comp[a]
        return a

    edges = list(g.edges)
    rng.shuffle(edges)
    tree = []
    for h, k in edges:
        a, b = find(g.vertex_of(h)), find(g.vertex_of(k))
        if a != b:
            comp[a] = b
            tree.append((h, k))
    assert verify_jks(g, tree, seed=seed).holds


def test_jks_rejects_non_trees():
    with pytest.raises(NotASpanningTree):
        verify_jks(theta(), [])
    with pytest.raises(NotASpanningTree):
        verify_jks(theta(), [("a", "d"), ("b", "f")])


def test_jks_subset_empty_products():
    assert check_jks_subset((1, 2), (0, 0), {0, 1})
    assert not check_jks_subset((1, 2), (1, 0), {0, 1})
    assert check_jks_subset((0, 0), (5, 5), set())


def direct_r1(n, K=10**6):
    table = [math.sin(2 * math.pi * r / n) for r in range(n)]
    return n * math.fsum(table[k % n] / (k * k) for k in range(1, K + 1))


def test_r1_trivial_cases():
    assert higher_torsion_r1(1, 1, 1e-9) == 0
    assert abs(higher_torsion_r1(2, 1, 1e-9)) <= 1e-9


@pytest.mark.parametrize("tol", [1e-6, 1e-9])
def test_r1_against_direct_sum(tol):
    assert abs(higher_torsion_r1(3, 1, tol) - direct_r1(3)) <= 2 * tol


@pytest.mark.parametrize("n, p", [(3, 1), (3, 2), (5, 2), (7, 3), (12, 5)])
def test_r1_against_clausen(n, p):
    exact = n * mpmath.clsin(2, 2 * mpmath.pi * p / n)
    assert abs(higher_torsion_r1(n, p, 1e-9) - float(exact)) <= 1e-9


def test_r1_is_odd_in_power():
    assert higher_torsion_r1(5, 4, 1e-9) == pytest.approx(-higher_torsion_r1(5, 1, 1e-9), abs=2e-9)


@pytest.mark.parametrize("tol", [0, -1.0, float("nan"), float("inf")])
def test_r1_bad_tolerance(tol):
    with pytest.raises(InvalidTolerance):
        higher_torsion_r1(3, 1, tol)


def test_r1_needs_primitive_root():
    with pytest.raises(ValueError):
        higher_torsion_r1(6, 2, 1e-6)
