"""Bookkeeping for the level-set ring after symplectic reduction.

Nothing geometric is constructed here. ``Y`` enters only through two facts:
its normal bundle in ``X`` is the trivial bundle with fiber ``g*`` (with the
coadjoint action), and the stabiliser data of a tuple is its centralizer.
Both are computable from the root datum, so each identity below is checked
as equality of virtual weight classes plus an integer rank of trivial
summands.

Ranks of the centralizer corrections are real dimensions of Lie algebras.
The complex rank of a piece of ``g_C`` agrees with the real dimension of the
corresponding piece of ``g``, which is what makes the comparisons with the
adjoint representation meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .root_datum import RootDatum, centralizer, product_datum
from .torus import CommutingTuple, TorusElement
from .weights import (
    VirtualRep,
    WeightRep,
    assoc_sides,
    check_degree_arith,
    degree_shift,
    excess_class,
    n_class,
    obstruction_class,
)


def adjoint_rep(rd: RootDatum) -> WeightRep:
    """``g_C`` as a torus representation: ``rank`` zero weights and every root."""
    zero = (0,) * rd.rank
    lines = [(zero, rd.rank)] if rd.rank else []
    lines += [(a, 1) for a in rd.roots]
    return WeightRep(lines, rank=rd.rank)


def centralizer_dim(rd: RootDatum, elements) -> int:
    if isinstance(elements, TorusElement):
        elements = CommutingTuple.of(elements)
    return centralizer(rd, elements).dim


@dataclass(frozen=True)
class CorrectionClass:
    rank: int
    source: CommutingTuple

    def __post_init__(self):
        if self.rank < 0:
            raise AssertionError(f"negative correction rank {self.rank}")

    @property
    def parity(self) -> int:
        return self.rank % 2


def correction_rank(rd: RootDatum, pair: CommutingTuple) -> CorrectionClass:
    """``dim c(h1 h2) - dim c(h1, h2)``."""
    if len(pair) != 2:
        raise ValueError("correction_rank takes a pair")
    r = centralizer_dim(rd, pair.product()) - centralizer_dim(rd, pair)
    return CorrectionClass(r, pair)


@dataclass(frozen=True)
class Corrected:
    """A weight class together with a number of trivial summands."""

    weights: VirtualRep
    trivial: int

    def __add__(self, other: "Corrected") -> "Corrected":
        return Corrected(self.weights + other.weights, self.trivial + other.trivial)

    @property
    def rank(self) -> Fraction:
        return self.weights.rank + self.trivial


def corrected_obstruction(rep: WeightRep, rd: RootDatum, pair: CommutingTuple) -> Corrected:
    return Corrected(obstruction_class(rep, pair), correction_rank(rd, pair).rank)


def check_normal_difference(rd: RootDatum, pair: CommutingTuple) -> bool:
    """Rank of the adjoint normal difference equals the correction rank."""
    ad = adjoint_rep(rd)
    diff = n_class(ad, pair) - n_class(ad, pair.product())
    return diff.is_honest() and diff.rank == correction_rank(rd, pair).rank


def _sub(triple: CommutingTuple):
    h1, h2, h3 = triple
    return {
        "1,2": CommutingTuple.of(h1, h2),
        "12,3": CommutingTuple.of(h1 * h2, h3),
        "2,3": CommutingTuple.of(h2, h3),
        "1,23": CommutingTuple.of(h1, h2 * h3),
        "12": h1 * h2,
        "23": h2 * h3,
        "0": triple.product(),
    }


def y_excess(rep: WeightRep, rd: RootDatum, triple: CommutingTuple, grouping: str = "left", convention: str = "displayed") -> Corrected:
    """Excess class on ``Y`` for one grouping of the triple.

    ``convention="displayed"`` subtracts ``c*`` of the product element;
    ``convention="geometric"`` subtracts ``c*`` of the whole triple, which is
    what the normal-bundle computation inside ``Y`` produces.
    """
    s = _sub(triple)
    a, b, mid = ("1,2", "12,3", "12") if grouping == "left" else ("2,3", "1,23", "23")
    last = s["0"] if convention == "displayed" else triple
    if convention not in ("displayed", "geometric"):
        raise ValueError(f"unknown convention {convention!r}")
    c = (
        centralizer_dim(rd, s[a])
        + centralizer_dim(rd, s[b])
        - centralizer_dim(rd, s[mid])
        - centralizer_dim(rd, last)
    )
    return Corrected(excess_class(rep, triple, grouping), c)


@dataclass(frozen=True)
class YAssocSides:
    left: Corrected
    right: Corrected

    def holds(self) -> bool:
        return self.left == self.right


def y_assoc_sides(rep: WeightRep, rd: RootDatum, triple: CommutingTuple, convention: str = "displayed") -> YAssocSides:
    s = _sub(triple)
    left = (
        y_excess(rep, rd, triple, "left", convention)
        + corrected_obstruction(rep, rd, s["1,2"])
        + corrected_obstruction(rep, rd, s["12,3"])
    )
    right = (
        y_excess(rep, rd, triple, "right", convention)
        + corrected_obstruction(rep, rd, s["2,3"])
        + corrected_obstruction(rep, rd, s["1,23"])
    )
    return YAssocSides(left, right)


def check_y_assoc(rep: WeightRep, rd: RootDatum, triple: CommutingTuple) -> bool:
    """Y-level associativity identity.

    With the displayed expansion the trivial ranks cancel to zero on both
    sides; with the geometric one both sides carry ``dim c(h1h2h3) - dim c(h)``.
    Both are checked, together with the X-level identity.
    """
    shown = y_assoc_sides(rep, rd, triple, "displayed")
    geo = y_assoc_sides(rep, rd, triple, "geometric")
    jump = centralizer_dim(rd, triple.product()) - centralizer_dim(rd, triple)
    x_level = assoc_sides(rep, triple)
    return (
        shown.holds()
        and shown.left.trivial == 0
        and geo.holds()
        and geo.left.trivial == jump
        and x_level.holds()
        and shown.left.weights == x_level.left
    )


def check_y_degree(rep: WeightRep, rd: RootDatum, pair: CommutingTuple, deg1, deg2) -> bool:
    """Shifted-degree bookkeeping on ``Y``, in real degrees.

    ``rep`` is the slice representation; the tangent space of ``X`` along
    ``Y`` is ``rep + g_C``. The product on ``Y`` raises degree by
    ``2 rank O + rank C + rank N_Y``, and ``rank N_Y = rank N_X - rank C``.
    """
    deg1, deg2 = Fraction(deg1), Fraction(deg2)
    rep = rep + adjoint_rep(rd)
    c = correction_rank(rd, pair).rank
    n_x = 2 * (n_class(rep, pair) - n_class(rep, pair.product())).rank
    n_y = n_x - c
    if n_y < 0:
        return False
    o = 2 * obstruction_class(rep, pair).rank
    deg_y = deg1 + deg2 + o + c + n_y
    deg_x = deg1 + deg2 + o + n_x
    g1, g2 = pair
    lhs = deg_y + 2 * degree_shift(rep, pair.product())
    rhs = deg1 + 2 * degree_shift(rep, g1) + deg2 + 2 * degree_shift(rep, g2)
    return deg_y == deg_x and lhs == rhs and check_degree_arith(rep, pair, deg1, deg2)


def shift_discrepancy(rd: RootDatum, g: TorusElement) -> Fraction:
    """Age of ``g`` on ``g_C``: the shift by which the two gradings differ."""
    return degree_shift(adjoint_rep(rd), g)


@dataclass(frozen=True)
class CRCorrection:
    weights: VirtualRep
    trivial: int
    shifts: tuple[Fraction, Fraction, Fraction]

    @property
    def net_shift(self) -> Fraction:
        """``iota(h1) + iota(h2) - iota(h1 h2)`` on the adjoint part."""
        a, b, c = self.shifts
        return a + b - c

    def is_zero(self) -> bool:
        return self.weights.is_zero() and self.trivial == 0 and not any(self.shifts)


def cr_correction(rd: RootDatum, pair: CommutingTuple) -> CRCorrection:
    """The class ``V`` separating the two products, with adjoint shift data."""
    h1, h2 = pair
    return CRCorrection(
        weights=obstruction_class(adjoint_rep(rd), pair),
        trivial=correction_rank(rd, pair).rank,
        shifts=(shift_discrepancy(rd, h1), shift_discrepancy(rd, h2), shift_discrepancy(rd, pair.product())),
    )


def group_comparison(rd_g: RootDatum, rd_h: RootDatum, pair_g: CommutingTuple, pair_h: CommutingTuple | None = None) -> dict:
    """Same sector data seen through ``G`` and through ``G x H``.

    The ``H`` components default to the identity. Returns the correction for
    both groups.
    """
    if pair_h is None:
        pair_h = CommutingTuple.of(TorusElement.identity(rd_h.rank), TorusElement.identity(rd_h.rank))
    big = product_datum(rd_g, rd_h)
    joined = CommutingTuple(
        TorusElement(a.xi + b.xi) for a, b in zip(pair_g, pair_h)
    )
    return {"G": cr_correction(rd_g, pair_g), "GxH": cr_correction(big, joined)}
