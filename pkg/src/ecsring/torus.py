"""Finite-order points of a torus and commuting tuples of them.

A point of T = R^r / Z^r is stored as a tuple of :class:`fractions.Fraction`
reduced to ``[0, 1)``. The group law is coordinatewise addition mod 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

DEFAULT_MAX_ORDER = 10**6


def parse_fraction(value) -> Fraction:
    """Parse ``"p/q"`` strings, integers or Fractions into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact fraction: {value!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def format_fraction(x: Fraction) -> str:
    """Serialise a Fraction as ``"p/q"`` (or ``"p"`` for integers)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def frac_part(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True, order=True)
class TorusElement:
    """A finite-order element of the maximal torus, in coroot coordinates."""

    xi: tuple[Fraction, ...]

    def __init__(self, xi: Iterable, max_order: int | None = None):
        vals = tuple(frac_part(parse_fraction(v)) for v in xi)
        object.__setattr__(self, "xi", vals)
        bound = DEFAULT_MAX_ORDER if max_order is None else max_order
        if self.order > bound:
            raise ValueError(f"element order {self.order} exceeds the bound {bound}")

    @classmethod
    def identity(cls, rank: int) -> "TorusElement":
        return cls((0,) * rank)

    @classmethod
    def from_numerators(cls, nums: Sequence[int], modulus: int) -> "TorusElement":
        return cls(Fraction(int(n), modulus) for n in nums)

    @property
    def rank(self) -> int:
        return len(self.xi)

    @property
    def order(self) -> int:
        return lcm(1, *(x.denominator for x in self.xi))

    def is_identity(self) -> bool:
        return all(x == 0 for x in self.xi)

    def inverse(self) -> "TorusElement":
        return TorusElement(-x for x in self.xi)

    def __mul__(self, other: "TorusElement") -> "TorusElement":
        if not isinstance(other, TorusElement):
            return NotImplemented
        if other.rank != self.rank:
            raise ValueError("torus elements of different rank")
        return TorusElement(a + b for a, b in zip(self.xi, other.xi))

    def numerators(self, modulus: int | None = None) -> tuple[int, ...]:
        """Integer numerators over ``modulus`` (defaults to the order)."""
        n = self.order if modulus is None else modulus
        if n % self.order:
            raise ValueError(f"modulus {n} is not a multiple of the order {self.order}")
        return tuple(int(x * n) for x in self.xi)

    def pair(self, weight: Sequence[int]) -> Fraction:
        """Fractional part of the pairing with an integral weight."""
        if len(weight) != self.rank:
            raise ValueError(
                f"weight of length {len(weight)} paired with a rank-{self.rank} element"
            )
        return frac_part(sum((w * x for w, x in zip(weight, self.xi)), Fraction(0)))

    def to_strings(self) -> list[str]:
        return [format_fraction(x) for x in self.xi]

    def __repr__(self) -> str:
        return "TorusElement(" + ", ".join(self.to_strings()) + ")"


@dataclass(frozen=True)
class CommutingTuple:
    """An ordered tuple ``(g_1, ..., g_m)`` of points of one torus.

    Points of a torus always commute and generate a finite group, so the only
    checks needed are a common rank and at least one element.
    """

    elements: tuple[TorusElement, ...]

    def __init__(self, elements: Iterable[TorusElement]):
        elems = tuple(elements)
        if not elems:
            raise ValueError("a commuting tuple needs at least one element")
        if len({e.rank for e in elems}) != 1:
            raise ValueError("tuple elements live in tori of different rank")
        object.__setattr__(self, "elements", elems)
        # |<g>| divides the lcm of the orders, which is at most their product
        bound = 1
        for e in elems:
            bound *= e.order
        if self.group_exponent > bound:
            raise AssertionError("generated group larger than the product of orders")

    @classmethod
    def of(cls, *elements: TorusElement) -> "CommutingTuple":
        return cls(elements)

    @classmethod
    def parse(cls, rows: Iterable[Iterable]) -> "CommutingTuple":
        return cls(TorusElement(r) for r in rows)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    @property
    def rank(self) -> int:
        return self.elements[0].rank

    @property
    def m(self) -> int:
        return len(self.elements)

    @property
    def group_exponent(self) -> int:
        return lcm(*(e.order for e in self.elements))

    def product(self) -> TorusElement:
        """The product ``g_1 ... g_m``."""
        out = TorusElement.identity(self.rank)
        for e in self.elements:
            out = out * e
        return out

    def closure(self) -> TorusElement:
        """``g_0 = (g_1 ... g_m)^{-1}``, so that ``g_0 g_1 ... g_m = 1``."""
        return self.product().inverse()

    def with_closure(self) -> tuple[TorusElement, ...]:
        """``(g_0, g_1, ..., g_m)``."""
        return (self.closure(),) + self.elements

    def is_identity(self) -> bool:
        return all(e.is_identity() for e in self.elements)

    def to_strings(self) -> list[list[str]]:
        return [e.to_strings() for e in self.elements]

    def __repr__(self) -> str:
        return "CommutingTuple(" + ", ".join(repr(e) for e in self.elements) + ")"
