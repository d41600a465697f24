"""Weight-line bookkeeping for tangent representations at a fixed point.

Everything is fiberwise: a :class:`WeightRep` is the restriction of ``T_xX``
to the maximal torus, split into weight lines. Since every element of a
commuting tuple lies in the torus, weight lines are simultaneous eigenlines
for the whole tuple, so the eigen-weights ``w_{lambda,i}`` are read off line
by line.

Virtual classes (``S_g``, ``N_g``, obstruction and excess classes) are
:class:`VirtualRep` objects: finitely supported maps from weights to exact
rationals.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from . import kernels
from .torus import CommutingTuple, TorusElement

Weight = tuple[int, ...]


@dataclass(frozen=True)
class WeightRep:
    """A multiset of integral weights, stored as sorted ``(weight, mult)`` pairs."""

    lines: tuple[tuple[Weight, int], ...]
    rank: int

    def __init__(self, lines: Iterable, rank: int | None = None):
        counts: Counter = Counter()
        for item in lines:
            if isinstance(item, tuple) and len(item) == 2 and isinstance(item[1], int) and not isinstance(item[0], int):
                lam, mult = item
            else:
                lam, mult = item, 1
            lam = tuple(int(x) for x in lam)
            if int(mult) <= 0:
                raise ValueError("multiplicities must be positive integers")
            counts[lam] += int(mult)
        ranks = {len(lam) for lam in counts}
        if len(ranks) > 1:
            raise ValueError("weights of different lengths")
        r = ranks.pop() if ranks else rank
        if r is None:
            raise ValueError("rank is required for an empty representation")
        if rank is not None and r != rank:
            raise ValueError(f"weights have length {r}, expected {rank}")
        object.__setattr__(self, "lines", tuple(sorted(counts.items())))
        object.__setattr__(self, "rank", r)

    @classmethod
    def of(cls, *weights: Sequence[int], rank: int | None = None) -> "WeightRep":
        return cls([tuple(w) for w in weights], rank=rank)

    @property
    def dim(self) -> int:
        """Complex dimension."""
        return sum(m for _, m in self.lines)

    def __iter__(self) -> Iterator[tuple[Weight, int]]:
        return iter(self.lines)

    def __len__(self) -> int:
        return len(self.lines)

    def weights(self) -> list[Weight]:
        """Weights with multiplicity."""
        return [lam for lam, m in self.lines for _ in range(m)]

    def to_virtual(self) -> "VirtualRep":
        return VirtualRep({lam: m for lam, m in self.lines})

    def __add__(self, other: "WeightRep") -> "WeightRep":
        return WeightRep(list(self.lines) + list(other.lines), rank=self.rank)


class VirtualRep(Mapping):
    """Formal Q-linear combination of weight lines; zero coefficients are pruned."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[Weight, Fraction] = {}
        for lam, c in items:
            lam = tuple(int(x) for x in lam)
            acc[lam] = acc.get(lam, Fraction(0)) + Fraction(c)
        self._c = {k: v for k, v in sorted(acc.items()) if v != 0}
        self._hash = None

    def __getitem__(self, lam) -> Fraction:
        return self._c[tuple(lam)]

    def get(self, lam, default=Fraction(0)):
        return self._c.get(tuple(lam), default)

    def __iter__(self):
        return iter(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, VirtualRep):
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._c.items()))
        return self._hash

    def __add__(self, other: "VirtualRep") -> "VirtualRep":
        return VirtualRep(list(self._c.items()) + list(other._c.items()))

    def __sub__(self, other: "VirtualRep") -> "VirtualRep":
        return self + (-other)

    def __neg__(self) -> "VirtualRep":
        return VirtualRep({k: -v for k, v in self._c.items()})

    def __mul__(self, scalar) -> "VirtualRep":
        s = Fraction(scalar)
        return VirtualRep({k: s * v for k, v in self._c.items()})

    __rmul__ = __mul__

    @property
    def rank(self) -> Fraction:
        return sum(self._c.values(), Fraction(0))

    def is_zero(self) -> bool:
        return not self._c

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self._c.values())

    def is_honest(self) -> bool:
        """Nonnegative integer coefficients, i.e. an actual representation."""
        return all(v.denominator == 1 and v > 0 for v in self._c.values())

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {v}" for k, v in self._c.items())
        return f"VirtualRep({{{body}}})"


ZERO = VirtualRep()


@dataclass(frozen=True)
class ShiftRecord:
    class_rep: TorusElement
    shift: Fraction
    ambient_dim: int

    def __post_init__(self):
        if self.shift < 0 or (self.ambient_dim > 0 and self.shift >= self.ambient_dim):
            raise AssertionError(f"degree shift {self.shift} out of range for dim {self.ambient_dim}")
        if self.class_rep.is_identity() and self.shift != 0:
            raise AssertionError("identity sector must have zero shift")


# --- eigen-weights -----------------------------------------------------------


def eigen_weight(lam: Sequence[int], t: TorusElement) -> Fraction:
    """Eigen-weight ``w`` in ``[0, 1)``: ``t`` acts on the line by ``exp(2 pi i w)``."""
    if len(lam) != t.rank:
        raise ValueError(f"weight length {len(lam)} does not match torus rank {t.rank}")
    return t.pair(lam)


def eigen_table(rep: WeightRep, elements: Sequence[TorusElement]) -> list[list[Fraction]]:
    """``table[l][i]`` is the eigen-weight of line ``l`` under ``elements[i]``."""
    if not rep.lines or not elements:
        return [[] for _ in rep.lines] if not elements else []
    for e in elements:
        if e.rank != rep.rank:
            raise ValueError("torus element rank does not match the weights")
    n = lcm(1, *(e.order for e in elements))
    w = np.array([lam for lam, _ in rep.lines], dtype=np.int64).reshape(len(rep.lines), rep.rank)
    p = np.array([e.numerators(n) for e in elements], dtype=np.int64).reshape(len(elements), rep.rank)
    res = kernels.residues(w, p, n).tolist()
    return [[Fraction(res[i][l], n) for i in range(len(elements))] for l in range(len(rep.lines))]


def degree_shift(rep: WeightRep, t: TorusElement) -> Fraction:
    """Age of ``t`` on the representation: sum of eigen-weights with multiplicity."""
    table = eigen_table(rep, [t])
    return sum((row[0] * m for row, (_, m) in zip(table, rep.lines)), Fraction(0))


def shift_record(rep: WeightRep, t: TorusElement) -> ShiftRecord:
    return ShiftRecord(class_rep=t, shift=degree_shift(rep, t), ambient_dim=rep.dim)


def s_class(rep: WeightRep, t: TorusElement) -> VirtualRep:
    """The fractional class ``sum_lambda w_lambda T_lambda``."""
    table = eigen_table(rep, [t])
    return VirtualRep({lam: row[0] * m for row, (lam, m) in zip(table, rep.lines)})


def _as_tuple(tup) -> CommutingTuple:
    if isinstance(tup, TorusElement):
        return CommutingTuple.of(tup)
    if isinstance(tup, CommutingTuple):
        return tup
    return CommutingTuple(tup)


def line_sums(rep: WeightRep, tup: CommutingTuple) -> list[Fraction]:
    """Per line, ``sum_{i=0}^m w_{lambda,i}`` including ``g_0``."""
    table = eigen_table(rep, list(tup.with_closure()))
    return [sum(row, Fraction(0)) for row in table]


def n_class(rep: WeightRep, tup) -> VirtualRep:
    """Normal space of the fixed locus.

    For a single element: lines with positive eigen-weight. For a tuple: lines
    whose eigen-weights (including ``g_0``) sum to at least 1.
    """
    if isinstance(tup, TorusElement):
        table = eigen_table(rep, [tup])
        return VirtualRep({lam: m for row, (lam, m) in zip(table, rep.lines) if row[0] > 0})
    tup = _as_tuple(tup)
    sums = line_sums(rep, tup)
    return VirtualRep({lam: m for s, (lam, m) in zip(sums, rep.lines) if s >= 1})


def weight_sum_check(rep: WeightRep, tup) -> list[int]:
    """Integer ``sum_{i=0}^m w_{lambda,i}`` per line, verified to lie in ``[0, m]``."""
    tup = _as_tuple(tup)
    out = []
    for s in line_sums(rep, tup):
        if s.denominator != 1 or not 0 <= s <= tup.m:
            raise ArithmeticError(f"weight sum {s} is not an integer in [0, {tup.m}]")
        out.append(int(s))
    return out


def obstruction_class(rep: WeightRep, tup) -> VirtualRep:
    """Closed form ``sum_{S >= 2} (S - 1) T_lambda`` with ``S`` the line's weight sum."""
    tup = _as_tuple(tup)
    if tup.m < 2:
        raise ValueError("the obstruction class needs a tuple of length at least 2")
    sums = weight_sum_check(rep, tup)
    return VirtualRep({lam: (s - 1) * m for s, (lam, m) in zip(sums, rep.lines) if s >= 2})


def obstruction_from_s_and_n(rep: WeightRep, tup) -> VirtualRep:
    """``S_{g_0} + S_{g_1} + ... + S_{g_m} - N_g``, the other side of the fiber formula."""
    tup = _as_tuple(tup)
    total = ZERO
    for g in tup.with_closure():
        total = total + s_class(rep, g)
    return total - n_class(rep, tup)


def excess_class(rep: WeightRep, triple, grouping: str = "left") -> VirtualRep:
    """Excess class of the two ways of bracketing a triple.

    ``left``:  ``N_{(h1,h2)} + N_{(h1h2,h3)} - N_{h1h2} - N_{(h1,h2,h3)}``
    ``right``: ``N_{(h2,h3)} + N_{(h1,h2h3)} - N_{h2h3} - N_{(h1,h2,h3)}``
    """
    triple = _as_tuple(triple)
    if triple.m != 3:
        raise ValueError("excess classes are defined for triples")
    h1, h2, h3 = triple
    if grouping == "left":
        inner = CommutingTuple.of(h1, h2)
        prod = h1 * h2
        outer = CommutingTuple.of(prod, h3)
    elif grouping == "right":
        inner = CommutingTuple.of(h2, h3)
        prod = h2 * h3
        outer = CommutingTuple.of(h1, prod)
    else:
        raise ValueError("grouping must be 'left' or 'right'")
    e = n_class(rep, inner) + n_class(rep, outer) - n_class(rep, prod) - n_class(rep, triple)
    if not e.is_integral():
        raise ArithmeticError("excess class has fractional coefficients")
    if e.rank < 0:
        raise ArithmeticError("excess class has negative rank")
    return e


def check_ssn(rep: WeightRep, t: TorusElement) -> bool:
    """``S_g + S_{g^-1} == N_g`` coefficientwise."""
    return s_class(rep, t) + s_class(rep, t.inverse()) == n_class(rep, t)


@dataclass(frozen=True)
class AssocSides:
    left: VirtualRep
    right: VirtualRep
    from_s_and_n: VirtualRep
    closed_form: VirtualRep

    def holds(self) -> bool:
        return self.left == self.right == self.from_s_and_n == self.closed_form


def assoc_sides(rep: WeightRep, triple) -> AssocSides:
    triple = _as_tuple(triple)
    h1, h2, h3 = triple
    left = (
        obstruction_class(rep, CommutingTuple.of(h1, h2))
        + obstruction_class(rep, CommutingTuple.of(h1 * h2, h3))
        + excess_class(rep, triple, "left")
    )
    right = (
        obstruction_class(rep, CommutingTuple.of(h2, h3))
        + obstruction_class(rep, CommutingTuple.of(h1, h2 * h3))
        + excess_class(rep, triple, "right")
    )
    return AssocSides(
        left=left,
        right=right,
        from_s_and_n=obstruction_from_s_and_n(rep, triple),
        closed_form=obstruction_class(rep, triple),
    )


def check_assoc_identity(rep: WeightRep, triple) -> bool:
    """Both bracketings give the same class, equal to the triple's obstruction."""
    return assoc_sides(rep, triple).holds()


def product_degree(rep: WeightRep, pair, deg1, deg2) -> Fraction:
    """Real degree of the product component from rank bookkeeping."""
    pair = _as_tuple(pair)
    if pair.m != 2:
        raise ValueError("product degrees are defined for pairs")
    o = obstruction_class(rep, pair)
    normal = n_class(rep, pair) - n_class(rep, pair.product())
    return Fraction(deg1) + Fraction(deg2) + 2 * o.rank + 2 * normal.rank


def check_degree_arith(rep: WeightRep, pair, deg1, deg2) -> bool:
    """``deg(a*b) + 2 age(g1 g2) == deg a + 2 age(g1) + deg b + 2 age(g2)``."""
    pair = _as_tuple(pair)
    g1, g2 = pair
    lhs = product_degree(rep, pair, deg1, deg2) + 2 * degree_shift(rep, g1 * g2)
    rhs = Fraction(deg1) + 2 * degree_shift(rep, g1) + Fraction(deg2) + 2 * degree_shift(rep, g2)
    return lhs == rhs
