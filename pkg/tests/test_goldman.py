import math
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from goldman_angles import goldman as Gd, group as G, surface as S
from goldman_angles.errors import InvalidInput, NoStabilization, TangentDegenerate, TriplePoint
from goldman_angles.hypgeom import (
    BoundaryPoint, Geodesic, HPoint, INFINITY, ZERO, axis_of_product, dist, dist_to_geodesic, intersect,
)

TORUS = S.holed_torus(2.0, 0.0)
PAIRS = [("a", "b"), ("a", "bab"), ("ab", "aB"), ("a", "abb"), ("b", "aab"), ("a", "bAbb"), ("ab", "abb")]


def records(rep, x, y, **kw):
    return Gd.goldman_bracket(rep, x, y, **kw).records


def signed_classes(bs):
    return Counter((r.term_class, r.sign) for r in bs.records)


# ---------------------------------------------------------------- examples


def test_pants_boundaries_do_not_meet():
    rep = S.pants(2.0, 2.0, 2.0)
    assert Gd.enumerate_intersections(rep, "a", "b", 6) == []
    bs = Gd.goldman_bracket(rep, "a", "b")
    assert bs.terms == {} and bs.records == []
    assert Gd.geometric_intersection_number(rep, "a", "b") == 0


def test_torus_generators_meet_once():
    recs = Gd.enumerate_intersections(TORUS, "a", "b", 6)
    assert len(recs) == 1
    bs = Gd.goldman_bracket(TORUS, "a", "b")
    assert len(bs.terms) == 1
    (cls, coeff), = bs.terms.items()
    assert cls == G.conj_class("ab") and abs(coeff) == 1
    assert Gd.geometric_intersection_number(TORUS, "a", "b") == 1


def test_literal_conjugate_of_x_takes_shortcut():
    # b a b^-1 is conjugate to a itself, so the bracket is the empty sum
    bs = Gd.goldman_bracket(TORUS, "a", "baB")
    assert bs.shortcut and bs.terms == {}


def test_single_crossing_term_is_the_product():
    for y in ["b", "bbaB", "aab"]:
        rec, = records(TORUS, "a", y)
        assert rec.term_class == G.conj_class(G.free_reduce("a" + rec.conjugate_word))


def test_bracket_with_itself_is_empty_shortcut():
    bs = Gd.goldman_bracket(TORUS, "abb", "bab")
    assert bs.shortcut and bs.terms == {} and Gd.term_count(bs) == 0


def test_term_count_examples():
    assert Gd.term_count(Gd.BracketSum({}, [])) == 0
    assert Gd.term_count(Gd.goldman_bracket(TORUS, "a", "b")) == 1
    bs = Gd.goldman_bracket(TORUS, "a", "bab")
    assert len(bs.records) == 2 and {r.sign for r in bs.records} == {-1}
    assert Gd.term_count(bs) == 2


def test_powers_of_a_common_root_give_zero():
    for x, y in [("a", "aa"), ("ab", "abab"), ("a", "AAA")]:
        bs = Gd.goldman_bracket(TORUS, x, y)
        assert bs.terms == {} and bs.records == []
        assert Gd.geometric_intersection_number(TORUS, x, y) == 0


def test_errors():
    with pytest.raises(InvalidInput):
        Gd.enumerate_intersections(TORUS, "a", "b", 0)
    with pytest.raises(InvalidInput):
        Gd.goldman_bracket(TORUS, "aA", "b")
    with pytest.raises(NoStabilization):
        Gd.goldman_bracket(TORUS, "abab", "bbab", cap=8)


def test_triple_point_raises_unless_split():
    # the holed torus's elliptic involution forces two branches of aabb through one point of a
    with pytest.raises(TriplePoint):
        Gd.goldman_bracket(TORUS, "a", "aabb")
    recs = records(TORUS, "a", "aabb", split_triple=True)
    assert len(recs) == 2
    assert recs[0].conjugate_word != recs[1].conjugate_word
    assert abs(recs[0].param - recs[1].param) < 1e-7


# ---------------------------------------------------------------- signs


def test_sign_of_perpendicular_crossing():
    up = Geodesic(ZERO, INFINITY)
    right = Geodesic(BoundaryPoint.from_real(-1.0), BoundaryPoint.from_real(1.0))
    p = HPoint(0.0, 1.0)
    assert Gd.crossing_sign(up, right, p) == -1
    assert Gd.crossing_sign(right, up, p) == 1


def test_tangential_crossing_is_rejected():
    up = Geodesic(ZERO, INFINITY)
    with pytest.raises(TangentDegenerate):
        Gd.crossing_sign(up, up, HPoint(0.0, 1.0))


def test_sign_of_matches_records():
    for x, y in PAIRS:
        for r in records(TORUS, x, y):
            assert Gd.sign_of(r, TORUS, x, y) == r.sign


@pytest.mark.parametrize("x,y", PAIRS)
def test_swapping_roles_negates_signs(x, y):
    xy = Gd.goldman_bracket(TORUS, x, y)
    yx = Gd.goldman_bracket(TORUS, y, x)
    assert Gd.term_count(xy) == Gd.term_count(yx)
    assert sum(xy.terms.values()) == -sum(yx.terms.values())
    assert sorted(r.sign for r in xy.records) == sorted(-r.sign for r in yx.records)


@pytest.mark.parametrize("x,y", PAIRS)
def test_reversing_y_flips_each_sign(x, y):
    fwd = records(TORUS, x, y)
    back = records(TORUS, x, G.inverse(y))
    assert len(fwd) == len(back)
    for r in fwd:
        match = [q for q in back if abs(q.param - r.param) < 1e-9]
        assert len(match) == 1 and match[0].sign == -r.sign


# ---------------------------------------------------------------- records


@pytest.mark.parametrize("x,y", PAIRS)
def test_record_invariants(x, y):
    pair = Gd.geodesic_pair(TORUS, x, y)
    for r in records(TORUS, x, y):
        assert 0.0 <= r.param < pair.tau_x
        assert dist_to_geodesic(r.point, pair.x_axis) <= 1e-9
        assert dist_to_geodesic(r.point, r.conjugate_axis) <= 1e-9
        assert dist(r.point, intersect(pair.x_axis, r.conjugate_axis)) <= 1e-9
        assert r.term_class == G.conj_class(r.term_word)
        assert r.conjugate_word == G.free_reduce(r.conjugator + pair.y + G.inverse(r.conjugator))


@pytest.mark.parametrize("x,y", PAIRS)
def test_term_length_is_twice_qr(x, y):
    # oracle: rebuild the axis of x * y^g from the crossing and compare with the term's length
    xm = G.word_to_map(TORUS, x)
    for r in records(TORUS, x, y):
        _, q, rr = axis_of_product(xm, G.word_to_map(TORUS, r.conjugate_word))
        assert S.class_length(TORUS, r.term_word) / 2.0 == pytest.approx(dist(q, rr), abs=1e-8)


@pytest.mark.parametrize("x,y", PAIRS)
def test_larger_radius_finds_nothing_new(x, y):
    bs = Gd.goldman_bracket(TORUS, x, y)
    wider = Gd.enumerate_intersections(TORUS, x, y, bs.radius_used + 2)
    key = lambda recs: sorted((str(r.term_class), round(r.param, 9)) for r in recs)
    assert key(wider) == key(bs.records)


@pytest.mark.parametrize("x,y", PAIRS)
def test_raising_the_cap_keeps_the_answer(x, y):
    assert Gd.goldman_bracket(TORUS, x, y, cap=14) == Gd.goldman_bracket(TORUS, x, y, cap=17)


def test_empty_case_stabilizes_at_first_step():
    rep = S.pants(2.0, 2.0, 2.0)
    _, radius = Gd.stabilize(rep, "a", "b")
    assert radius == len("a") + len("b") + 3


@pytest.mark.parametrize("x,y", PAIRS)
def test_combinatorics_do_not_depend_on_metric(x, y):
    sampler = S.MetricSampler(3, length_range=(0.8, 3.0))
    base = signed_classes(Gd.goldman_bracket(TORUS, x, y))
    for i in range(4):
        assert signed_classes(Gd.goldman_bracket(S.sample_metric(sampler, i), x, y)) == base


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(PAIRS), st.text(alphabet="aAbB", max_size=3), st.integers(0, 5))
def test_bracket_depends_only_on_classes(xy, g, k):
    x, y = xy
    moved_x = G.free_reduce(g + x + G.inverse(g))
    k %= len(y)
    rotated_y = y[k:] + y[:k]
    assert Gd.goldman_bracket(TORUS, moved_x, rotated_y) == Gd.goldman_bracket(TORUS, x, y)


def test_records_are_sorted_by_param():
    recs = records(TORUS, "ab", "abb")
    assert [r.param for r in recs] == sorted(r.param for r in recs)


# ---------------------------------------------------------------- lift path


def test_lift_path_with_no_extra_arcs():
    rec, = records(TORUS, "a", "b")
    arc, = Gd.lift_path(TORUS, "a", "b", rec, 0)
    chart = Gd.lift_chart(TORUS, "a", rec)
    assert dist(arc.start, chart(rec.point)) <= 1e-12
    assert dist(arc.start, arc.end) == pytest.approx(2.0, abs=1e-9)


@pytest.mark.parametrize("x,y", PAIRS)
def test_lift_path_is_a_chain_of_alternating_arcs(x, y):
    pair = Gd.geodesic_pair(TORUS, x, y)
    for r in records(TORUS, x, y):
        arcs = Gd.lift_path(TORUS, x, y, r, 3)
        assert len(arcs) == 7
        for i, a in zip(range(-3, 4), arcs):
            want = pair.tau_y if i % 2 else pair.tau_x
            assert dist(a.start, a.end) == pytest.approx(want, abs=1e-9)
            assert dist_to_geodesic(a.start, a.carrier) <= 1e-9
            assert dist_to_geodesic(a.end, a.carrier) <= 1e-9
        for a, b in zip(arcs, arcs[1:]):
            assert dist(a.end, b.start) <= 1e-9


@pytest.mark.parametrize("x,y", PAIRS)
def test_term_axis_bisects_every_arc(x, y):
    for r in records(TORUS, x, y):
        assert max(Gd.midpoint_offsets(TORUS, x, y, r, 3)) <= 1e-8


def test_lift_path_rejects_negative_n():
    rec, = records(TORUS, "a", "b")
    with pytest.raises(InvalidInput):
        Gd.lift_path(TORUS, "a", "b", rec, -1)


def test_arc_midpoint_is_halfway():
    for r in records(TORUS, "ab", "aB"):
        for a in Gd.lift_path(TORUS, "ab", "aB", r, 2):
            length = dist(a.start, a.end)
            m = a.midpoint(length)
            assert dist(a.start, m) == pytest.approx(length / 2, abs=1e-9)
            assert dist(m, a.end) == pytest.approx(length / 2, abs=1e-9)
            assert math.isfinite(m.x)
