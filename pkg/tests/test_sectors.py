from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import datum
from ecsring.root_datum import build_root_datum
from ecsring.sectors import weight_sectors
from ecsring.torus import TorusElement
from ecsring.weights import WeightRep


def test_a1_rows():
    rows = weight_sectors(datum("A1"), WeightRep.of((1,), (-1,)), 4)
    # the Weyl group is t -> -t, so classes are the points of [0, 1/2]
    assert [r.t.xi for r in rows] == [(0,), (F(1, 4),), (F(1, 3),), (F(1, 2),)]
    by_t = {r.t.xi: r for r in rows}
    assert by_t[(0,)].fixed_dim == 2 and by_t[(0,)].centralizer_dim == 3
    assert by_t[(F(1, 3),)].shift == 1 and by_t[(F(1, 3),)].orbit_size == 2
    assert by_t[(F(1, 2),)].orbit_size == 1


def test_trivial_group_single_row():
    rows = weight_sectors(build_root_datum("T0"), WeightRep([], rank=0), 5)
    assert len(rows) == 1 and rows[0].t == TorusElement(())


def test_bad_inputs():
    with pytest.raises(ValueError):
        weight_sectors(datum("A1"), WeightRep.of((1,)), 0)
    with pytest.raises(ValueError):
        weight_sectors(datum("A2"), WeightRep.of((1,)), 2)


@given(st.sampled_from(["T1", "T2"]), st.integers(1, 5))
def test_torus_rows_count_all_points(label, n):
    # for a torus every element is its own class
    rd = build_root_datum(label)
    rows = weight_sectors(rd, WeightRep.of((1,) * rd.rank), n)
    pts = {TorusElement.from_numerators(
        [(k // q**i) % q for i in reversed(range(rd.rank))], q) for q in range(1, n + 1) for k in range(q**rd.rank)}
    assert len(rows) == len(pts)
    for r in rows:
        s = sum(r.t.xi) % 1
        assert r.shift == s
        assert r.order == max(x.denominator for x in r.t.xi)
