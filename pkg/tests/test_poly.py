from fractions import Fraction as F

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from ecsring.poly import Poly


@st.composite
def polys(draw, n=2, max_deg=3):
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, max_deg)] * n),
            st.fractions(min_value=-5, max_value=5, max_denominator=4),
            max_size=5,
        )
    )
    return Poly(n, terms)


def to_sp(p, xs):
    return sum((sp.Rational(c.numerator, c.denominator) * sp.prod([x**e for x, e in zip(xs, m)]) for m, c in p.terms.items()), sp.Integer(0))


XS = sp.symbols("x1 x2")


@given(polys(), polys())
def test_ring_ops_match_sympy(a, b):
    assert sp.expand(to_sp(a * b, XS) - to_sp(a, XS) * to_sp(b, XS)) == 0
    assert sp.expand(to_sp(a + b, XS) - to_sp(a, XS) - to_sp(b, XS)) == 0
    assert a - a == Poly.zero(2)


@given(polys(), st.tuples(st.integers(-3, 3), st.integers(-3, 3)).filter(any))
def test_divisibility_matches_sympy(p, lam):
    form = Poly.linear(lam)
    assert (p * form).divisible_by_linear(lam)
    _, rem = sp.div(sp.Poly(to_sp(p, XS), *XS, domain="QQ"), sp.Poly(lam[0] * XS[0] + lam[1] * XS[1], *XS, domain="QQ"))
    assert p.divisible_by_linear(lam) == rem.is_zero


def test_basics():
    x, y = Poly.var(2, 0), Poly.var(2, 1)
    p = (x - y) ** 2
    assert p.degree() == 2 and p.is_homogeneous()
    assert p.divisible_by_linear((1, -1))
    assert not (x * y).divisible_by_linear((1, -1))
    assert (x + 1).is_homogeneous() is False
    assert Poly.zero(2).degree() == -1
    assert p.evaluate([2, 1]) == 1
    assert p == Poly.from_json(2, p.to_json())
    assert Poly.from_json(2, "3/2") == Poly.const(2, F(3, 2))
    assert repr(x - y) == "-x2 + x1"
    with pytest.raises(ValueError):
        x + Poly.var(3, 0)
    with pytest.raises(ValueError):
        x ** -1
    with pytest.raises(ValueError):
        Poly.from_json(2, {"1": "1"})
