"""Independent localization oracle for torus-action products.

This module deliberately avoids :mod:`ecsring.weights`: eigenvalues, fixed
directions and the obstruction bundle are recomputed here from the raw
tangent weights, and all arithmetic is done with sympy rational functions.

For a pair ``(g1, g2)`` with ``g3 = (g1 g2)^-1`` a line of weight ``lam``
contributes ``a1 + a2 + a3 - 1`` copies of ``lam`` to the obstruction bundle
when it is moved by some ``g_i`` (``a_i`` the fractional parts), and nothing
otherwise. Pushing forward along ``X^(g1,g2) -> X^(g1 g2)`` multiplies the
vertex value by ``e(T X^(g1 g2)) / e(T X^(g1,g2))``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import sympy as sp

from .gkm import EquivariantClass, GKMGraph
from .poly import Poly


def symbols(rank: int) -> tuple[sp.Symbol, ...]:
    return tuple(sp.Symbol(f"x{i + 1}") for i in range(rank))


def _frac(lam: Sequence[int], xi: Sequence[Fraction]) -> Fraction:
    s = sum((Fraction(a) * b for a, b in zip(lam, xi)), Fraction(0))
    return s - (s.numerator // s.denominator)


def _form(lam, xs) -> sp.Expr:
    return sum((int(a) * x for a, x in zip(lam, xs)), sp.Integer(0))


def to_sympy(p: Poly, xs) -> sp.Expr:
    out = sp.Integer(0)
    for mono, c in p.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for x, e in zip(xs, mono):
            term *= x**e
        out += term
    return out


def _lines(graph: GKMGraph, v: int):
    for lam, mult in graph.tangent[v].lines:
        for _ in range(mult):
            yield lam


def fixed_euler(graph: GKMGraph, v: int, elements, xs) -> sp.Expr:
    """Euler class of the directions at ``v`` fixed by all ``elements``."""
    out = sp.Integer(1)
    for lam in _lines(graph, v):
        if all(_frac(lam, g) == 0 for g in elements):
            out *= _form(lam, xs)
    return out


def obstruction_euler(graph: GKMGraph, v: int, g1, g2, xs) -> sp.Expr:
    g3 = tuple(-(a + b) for a, b in zip(g1, g2))
    out = sp.Integer(1)
    for lam in _lines(graph, v):
        a = [_frac(lam, g) for g in (g1, g2, g3)]
        if any(a):
            k = sum(a) - 1
            assert k.denominator == 1 and k in (0, 1), "fractional parts of a closed triple sum to 1 or 2"
            out *= _form(lam, xs) ** int(k)
    return out


def oracle_product(a: EquivariantClass, b: EquivariantClass, graph: GKMGraph) -> list[sp.Expr]:
    """Vertex values of ``a * b``, as cancelled sympy expressions."""
    xs = symbols(graph.rank)
    g1, g2 = a.sector.t.xi, b.sector.t.xi
    h = tuple(x + y for x, y in zip(g1, g2))
    out = []
    for v in range(graph.nvertices):
        beta = to_sympy(a.values[v], xs) * to_sympy(b.values[v], xs) * obstruction_euler(graph, v, g1, g2, xs)
        val = beta * fixed_euler(graph, v, [h], xs) / fixed_euler(graph, v, [g1, g2], xs)
        out.append(sp.cancel(val))
    return out


def matches(expected: Sequence[sp.Expr], result: EquivariantClass) -> bool:
    xs = symbols(result.sector.graph.rank)
    return all(sp.expand(e - to_sympy(p, xs)) == 0 for e, p in zip(expected, result.values))


def integrate(graph: GKMGraph, values: Sequence[sp.Expr], elements, xs=None) -> sp.Expr:
    """Localization sum ``sum_v beta_v / e(T_v X^elements)`` over all vertices."""
    xs = xs or symbols(graph.rank)
    total = sp.Integer(0)
    for v, beta in enumerate(values):
        total += beta / fixed_euler(graph, v, elements, xs)
    return sp.cancel(sp.together(total))


def abbv_identity(a: EquivariantClass, b: EquivariantClass, result: EquivariantClass, graph: GKMGraph, delta: Poly) -> bool:
    """``int_{X^h} (a*b) delta == int_{X^(g1,g2)} a b e(Ob) delta``."""
    xs = symbols(graph.rank)
    g1, g2 = a.sector.t.xi, b.sector.t.xi
    h = result.sector.t.xi
    d = to_sympy(delta, xs)
    lhs = integrate(graph, [to_sympy(p, xs) * d for p in result.values], [h], xs)
    rhs_vals = [
        to_sympy(a.values[v], xs) * to_sympy(b.values[v], xs) * obstruction_euler(graph, v, g1, g2, xs) * d
        for v in range(graph.nvertices)
    ]
    rhs = integrate(graph, rhs_vals, [g1, g2], xs)
    return sp.simplify(lhs - rhs) == 0
