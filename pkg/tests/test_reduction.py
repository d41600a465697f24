from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import LABELS, datum, datum_rep_tuple, reps, tuples
from ecsring.reduction import (
    adjoint_rep,
    centralizer_dim,
    check_normal_difference,
    check_y_assoc,
    check_y_degree,
    correction_rank,
    cr_correction,
    group_comparison,
    shift_discrepancy,
    y_assoc_sides,
)
from ecsring.root_datum import build_root_datum, weyl_orbit
from ecsring.torus import CommutingTuple, TorusElement


def T(*xs):
    return TorusElement(xs)


def brute_centralizer_dim(rd, elements):
    """rank plus the roots on which every element pairs to an integer."""
    def integral(a, t):
        return sum(F(x) * y for x, y in zip(a, t.xi)).denominator == 1

    return rd.rank + sum(all(integral(a, t) for t in elements) for a in rd.roots)


def test_adjoint_rep():
    rd = datum("A2")
    ad = adjoint_rep(rd)
    assert ad.dim == rd.dim == 8
    assert dict(ad.lines)[(0, 0)] == 2
    assert ad.rank == 2
    assert adjoint_rep(build_root_datum("T0")).dim == 0


def test_a1_quarter_pair():
    rd = datum("A1")
    pair = CommutingTuple.of(T(F(1, 4)), T(F(1, 4)))
    assert correction_rank(rd, pair).rank == 2
    assert check_normal_difference(rd, pair)
    assert shift_discrepancy(rd, T(F(1, 4))) == 1
    cr = cr_correction(rd, pair)
    assert cr.weights.is_zero() and cr.trivial == 2
    assert cr.shifts == (1, 1, 0) and cr.net_shift == 2


def test_a2_center_pair():
    # an order-3 central element times its inverse: the whole group reappears
    rd = datum("A2")
    pair = CommutingTuple.of(T(F(1, 3), F(1, 3)), T(F(2, 3), F(2, 3)))
    assert correction_rank(rd, pair).rank == brute_centralizer_dim(rd, [T(0, 0)]) - brute_centralizer_dim(rd, pair) == 6
    assert correction_rank(rd, pair).parity == 0


@pytest.mark.parametrize("label", ["T1", "T2", "T3"])
def test_abelian_corrections_vanish(label):
    rd = build_root_datum(label)
    pair = CommutingTuple.of(TorusElement((F(1, 3),) * rd.rank), TorusElement((F(1, 2),) * rd.rank))
    assert cr_correction(rd, pair).is_zero()
    assert correction_rank(rd, pair).rank == 0


def test_correction_rank_needs_pair():
    rd = datum("A1")
    with pytest.raises(ValueError):
        correction_rank(rd, CommutingTuple.of(T(0)))


def test_y_assoc_conventions_differ_by_jump():
    rd = datum("A1")
    rep = adjoint_rep(rd)
    triple = CommutingTuple.of(T(F(1, 4)), T(F(1, 4)), T(F(1, 2)))
    shown = y_assoc_sides(rep, rd, triple, "displayed")
    geo = y_assoc_sides(rep, rd, triple, "geometric")
    assert shown.holds() and geo.holds()
    assert shown.left.trivial == 0
    assert geo.left.trivial == centralizer_dim(rd, T(0)) - centralizer_dim(rd, triple) == 2
    with pytest.raises(ValueError):
        y_assoc_sides(rep, rd, triple, "other")


def test_group_comparison_trivial_h_part():
    g = datum("A1")
    h = build_root_datum("A1xA2")
    pair = CommutingTuple.of(T(F(1, 4)), T(F(1, 4)))
    res = group_comparison(g, h, pair)
    assert res["GxH"].trivial == res["G"].trivial == 2
    assert res["GxH"].net_shift == res["G"].net_shift


@st.composite
def datum_pair(draw):
    rd = datum(draw(st.sampled_from(LABELS)))
    return rd, draw(tuples(rd.rank, 2))


@given(datum_pair())
def test_correction_rank_matches_brute_force(dp):
    rd, pair = dp
    r = correction_rank(rd, pair).rank
    assert r == brute_centralizer_dim(rd, [pair.product()]) - brute_centralizer_dim(rd, list(pair))
    assert r >= 0


@given(datum_pair(), st.data())
def test_correction_rank_weyl_invariant(dp, data):
    rd, pair = dp
    # simultaneous conjugation by a Weyl element
    w = data.draw(st.sampled_from(rd.weyl_group))
    moved = CommutingTuple(rd.act(w, t) for t in pair)
    assert correction_rank(rd, moved).rank == correction_rank(rd, pair).rank
    assert rd.act(w, pair[0]) in weyl_orbit(rd, pair[0])


@given(datum_pair())
def test_normal_difference_property(dp):
    assert check_normal_difference(*dp)


@given(datum_rep_tuple(3))
def test_y_assoc_property(drt):
    rd, rep, triple = drt
    assert check_y_assoc(rep, rd, triple)


@given(datum_rep_tuple(2), st.integers(0, 6), st.integers(0, 6))
def test_y_degree_property(drt, d1, d2):
    rd, rep, pair = drt
    assert check_y_degree(rep, rd, pair, 2 * d1, 2 * d2)


@given(st.integers(1, 3).flatmap(lambda r: st.tuples(reps(r), tuples(r, 3))))
def test_abelian_y_assoc(rt):
    rep, triple = rt
    rd = build_root_datum(f"T{rep.rank}")
    assert check_y_assoc(rep, rd, triple)
    assert cr_correction(rd, CommutingTuple(list(triple)[:2])).is_zero()
