import itertools
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from per4.exactfield import INF
from per4.strata import (
    A1,
    A2,
    CORNER,
    DOMAIN_LABELS,
    RANGE_LABELS,
    DegenerateParameterError,
    MarkedTree,
    NotATreeError,
    classify_type2,
    cross_ratio,
    double_covers,
    enumerate_boundary_strata,
    equalizer_strata,
    is_stable,
    kappa_maps,
    mobius,
    p_lower,
    p_upper_images,
    stabilize,
    tree_from_splits,
)

from oracles import brute_force_strata


def tree_split_set(t: MarkedTree):
    labels = t.labels
    return frozenset(frozenset((s, labels - s)) for s in t.splits())


@pytest.mark.parametrize("labels, count", [(RANGE_LABELS, 25), (DOMAIN_LABELS, 3)])
def test_enumeration_matches_brute_force(labels, count):
    recs = enumerate_boundary_strata(labels)
    oracle = brute_force_strata(labels)
    assert len(recs) == len(oracle) == count
    assert {tree_split_set(r.tree) for r in recs} == oracle
    assert all(r.stable for r in recs)


def test_enumeration_rejects_other_sizes():
    with pytest.raises(ValueError):
        enumerate_boundary_strata(("a", "b", "c"))


def test_codimension_counts():
    recs = enumerate_boundary_strata(RANGE_LABELS)
    assert sum(r.codimension == 1 for r in recs) == 10
    assert sum(r.codimension == 2 for r in recs) == 15


def test_type2_subtypes():
    recs = [r for r in enumerate_boundary_strata(RANGE_LABELS) if r.codimension == 1]
    sizes = {}
    for r in recs:
        sizes[r.subtype] = sizes.get(r.subtype, 0) + 1
    assert sizes == {"2a": 3, "2b": 3, "2c": 1, "2d": 3}
    assert classify_type2(A1) == "2b"
    assert classify_type2(A2) == "2a"
    with pytest.raises(ValueError):
        classify_type2(CORNER)


# --- trees and stabilization ----------------------------------------------------

def test_marked_tree_validation():
    with pytest.raises(NotATreeError):
        MarkedTree(({"0"}, {"1"}), [])
    with pytest.raises(ValueError):
        MarkedTree(({"0"}, {"0"}), [(0, 1)])


def test_tree_equality_is_up_to_isomorphism():
    a = MarkedTree.chain({"0", "1"}, {"z"}, {"y", "inf"})
    b = MarkedTree.chain({"y", "inf"}, {"z"}, {"1", "0"})
    assert a == b and hash(a) == hash(b)
    assert a == CORNER
    assert a != A1


def stable_splits(t: MarkedTree):
    """Oracle: stabilization keeps exactly the nodes with two or more labels on each side."""
    labels = t.labels
    return frozenset(s for s in tree_split_set(t) if all(len(side) >= 2 for side in s))


def small_marked_trees(labels, max_vertices=6):
    for k in range(1, max_vertices + 1):
        for shape in nx.nonisomorphic_trees(k) if k > 1 else [nx.empty_graph(1)]:
            edges = list(shape.edges())
            for assign in itertools.product(range(k), repeat=len(labels)):
                marks = [set() for _ in range(k)]
                for lab, v in zip(labels, assign):
                    marks[v].add(lab)
                yield MarkedTree(tuple(frozenset(m) for m in marks), edges)


def test_stabilization_exhaustive_small_trees():
    n = 0
    for t in small_marked_trees(DOMAIN_LABELS):
        s = stabilize(t)
        assert is_stable(s)
        assert stabilize(s) == s
        assert s.labels == t.labels
        assert tree_split_set(s) == stable_splits(t)
        if is_stable(t):
            assert s == t
        n += 1
    assert n > 1000


def test_tree_from_splits_round_trip():
    for r in enumerate_boundary_strata(RANGE_LABELS):
        t = tree_from_splits(RANGE_LABELS, r.tree.splits())
        assert t == r.tree


# --- cross ratios ---------------------------------------------------------------

points = st.one_of(st.just(INF), st.builds(Fraction, st.integers(-50, 50), st.integers(1, 30)))
coeffs = st.integers(-9, 9)


def _key(p):
    return ("inf",) if p is INF else (p,)


four_points = st.lists(points, min_size=4, max_size=4, unique_by=_key)


@settings(max_examples=1000, deadline=None)
@given(four_points, coeffs, coeffs, coeffs, coeffs)
def test_mobius_invariance(pts, p, q, r, s):
    assume(p * s - q * r != 0)
    a, b, c, d = pts
    before = cross_ratio(a, b, c, d)
    after = cross_ratio(*(mobius(p, q, r, s, t) for t in (a, b, c, d)))
    assert before == after


@settings(max_examples=300, deadline=None)
@given(four_points)
def test_cross_ratio_reciprocity(pts):
    a, b, c, d = pts
    assert cross_ratio(a, b, c, d) * cross_ratio(a, b, d, c) == 1


@settings(max_examples=300, deadline=None)
@given(st.fractions(min_value=-50, max_value=50, max_denominator=30))
def test_cross_ratio_normal_form(x):
    # with the first three points at inf, 0, 1 the cross ratio recovers the fourth
    assume(x not in (0, 1))
    lam = cross_ratio(INF, Fraction(0), Fraction(1), x)
    assert lam == cross_ratio(Fraction(0), INF, x, Fraction(1))
    assert lam not in (0, 1) and lam is not INF


def test_cross_ratio_degenerations():
    assert cross_ratio(0, 1, 0, 2) == 0
    assert cross_ratio(0, 1, 1, 2) is INF
    value, flag = cross_ratio(1, 1, 0, 2, with_flag=True)
    assert value == 1 and flag
    with pytest.raises(ValueError):
        cross_ratio(1, 1, 1, 2)


# --- covers and the equalizer -----------------------------------------------------

def test_every_cover_is_admissible():
    for r in enumerate_boundary_strata(RANGE_LABELS):
        covers = double_covers(r.tree)
        assert covers
        for cover in covers:
            assert cover.check()
            d = cover.domain_tree()
            assert d.labels == frozenset(DOMAIN_LABELS)
            # Riemann-Hurwitz for a connected double cover of a tree by a tree
            assert len(d.marks) == 2 * len(r.tree.marks) - len(cover.ramified)


def test_forgetful_maps_on_a1_and_a2():
    assert p_lower(A1) == MarkedTree.chain({"inf", "x"}, {"0", "1"})
    assert p_lower(A1) in p_upper_images(A1)
    assert p_lower(A2) in p_upper_images(A2)
    assert p_lower(CORNER) in p_upper_images(CORNER)


def test_equalizer_output():
    eq = equalizer_strata()
    assert eq.names() == {"A1", "A2", "corner"}
    assert {r.tree for r in eq.admitted} == {A1, A2, CORNER}
    assert CORNER.partition_str() == "{0,1}∪{z}∪{inf,y}"
    assert len(eq.records) == 25
    two_c = [r for r in eq.records if r.subtype == "2c"]
    assert len(two_c) == 1 and two_c[0].status == "conditional"
    assert two_c[0].witness["solutions"] == ["1/2"]


def test_two_c_witness_by_hand():
    # [0,inf;1,x] = 1/x and [inf,1;x,0] = 1/(1-x) agree only at x = 1/2
    for x in (Fraction(1, 3), Fraction(2), Fraction(-5)):
        assert (cross_ratio(0, INF, 1, x) == cross_ratio(INF, 1, x, 0)) == (x == Fraction(1, 2))
    assert cross_ratio(0, INF, 1, Fraction(1, 2)) == cross_ratio(INF, 1, Fraction(1, 2), 0)


def test_excluded_strata_are_justified():
    for r in equalizer_strata().records:
        assert r.status in ("in AV", "excluded", "conditional")
        assert r.reason


# --- kappa maps ---------------------------------------------------------------------

def test_kappa_inf():
    pt = kappa_maps("E_inf", 1)
    assert pt.stratum == "A1"
    assert pt.configuration["z"] == Fraction(-1, 8)
    assert pt.cross_ratio == -8


def test_kappa_inf_degenerate_parameters():
    for u in (0, -1, Fraction(-1, 2), INF):
        with pytest.raises(DegenerateParameterError):
            kappa_maps("E_inf", u)


def test_kappa_q():
    assert kappa_maps("E_q", 1).datum == "alpha_0"
    pt = kappa_maps("E_q", 3)
    assert pt.stratum == "A2"
    assert pt.datum == "[0,1;inf,1/3]"
    assert pt.configuration["z"] == Fraction(9, 8)


def test_kappa_q_degenerate_at_two():
    with pytest.raises(DegenerateParameterError, match="z=1"):
        kappa_maps("E_q", 2)


def test_kappa_unknown_curve():
    with pytest.raises(ValueError):
        kappa_maps("E_7", 1)


# --- worked examples ------------------------------------------------------------

def test_stability_examples():
    assert is_stable(MarkedTree.single(RANGE_LABELS))
    assert is_stable(MarkedTree.chain({"0", "1"}, {"inf", "y", "z"}))
    t = MarkedTree.chain({"0", "1", "inf"}, {"x"})
    assert not is_stable(t) and t.case(1) == 3


def test_stabilize_examples():
    chain = MarkedTree(({"0", "1"}, set(), {"inf", "x"}), [(0, 1), (1, 2)])
    assert stabilize(chain) == MarkedTree.chain({"0", "1"}, {"inf", "x"})
    leaf = MarkedTree.chain({"0", "1", "inf"}, {"x"})
    assert stabilize(leaf) == MarkedTree.single(DOMAIN_LABELS)
    assert stabilize(A1) == A1


def test_type_2c_pattern():
    assert classify_type2(MarkedTree.chain({"0", "1", "y"}, {"inf", "z"})) == "2c"


def test_cross_ratio_examples():
    w = Fraction(7, 3)
    assert cross_ratio(0, INF, 1, w) == 1 / w
    inv = [mobius(0, 1, 1, 0, t) for t in (Fraction(2), Fraction(5), INF, Fraction(-1))]
    assert cross_ratio(*inv) == cross_ratio(Fraction(2), Fraction(5), INF, Fraction(-1))
    assert cross_ratio(Fraction(2), Fraction(5), Fraction(1), Fraction(1), with_flag=True) == (1, True)
