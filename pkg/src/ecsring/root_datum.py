"""Compact connected Lie groups presented by root data.

Conventions
-----------
* Weights and roots are integer row vectors in ``Z^r``; torus elements are
  points of ``(Q/Z)^r``; the pairing is the dot product. For the Cartan-type
  labels the coordinates are fundamental-weight coordinates for weights and
  coroot coordinates for the torus, i.e. the simply connected form.
* A simple reflection ``s_i`` acts on a torus point ``xi`` (column vector) by
  the integer matrix ``M_i = I - coroot_i root_i^T`` and on a weight (row
  vector) by ``lam -> lam @ M_i``. Since ``M_i^2 = I`` the pairing is
  invariant.
* Conjugacy of commuting torus tuples is modelled as equivalence under the
  diagonal Weyl action. For tuples this agrees with simultaneous
  G-conjugacy in the simply connected case; the module does not claim more.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .torus import CommutingTuple, TorusElement

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

MAX_ROOTS = 2000
MAX_WEYL_ORDER = 200_000


class RootDatumError(ValueError):
    """Raised for inconsistent or unsupported group presentations."""


class NotLeviError(ValueError):
    """No point of the Lie algebra has the same centralizer as the tuple.

    This happens exactly when some non-integral root lies in the rational span
    of the integral roots, i.e. the centralizer is a pseudo-Levi subgroup that
    is not a Levi subgroup (for instance the order-2 element of B2 with
    centralizer of type A1xA1).
    """


# --- Cartan types -----------------------------------------------------------


def _euclidean_simple_roots(kind: str, n: int) -> list[list[Fraction]]:
    def e(i, dim):
        v = [Fraction(0)] * dim
        v[i] = Fraction(1)
        return v

    def sub(a, b):
        return [x - y for x, y in zip(a, b)]

    def add(a, b):
        return [x + y for x, y in zip(a, b)]

    if kind == "A":
        if n < 1:
            raise RootDatumError("A_n needs n >= 1")
        return [sub(e(i, n + 1), e(i + 1, n + 1)) for i in range(n)]
    if kind == "B":
        if n < 2:
            raise RootDatumError("B_n needs n >= 2")
        return [sub(e(i, n), e(i + 1, n)) for i in range(n - 1)] + [e(n - 1, n)]
    if kind == "C":
        if n < 2:
            raise RootDatumError("C_n needs n >= 2")
        return [sub(e(i, n), e(i + 1, n)) for i in range(n - 1)] + [
            [2 * x for x in e(n - 1, n)]
        ]
    if kind == "D":
        if n < 3:
            raise RootDatumError("D_n needs n >= 3")
        return [sub(e(i, n), e(i + 1, n)) for i in range(n - 1)] + [
            add(e(n - 2, n), e(n - 1, n))
        ]
    if kind == "G":
        if n != 2:
            raise RootDatumError("only G2 is supported among exceptional types")
        return [
            [Fraction(1), Fraction(-1), Fraction(0)],
            [Fraction(-2), Fraction(1), Fraction(1)],
        ]
    raise RootDatumError(f"unsupported Cartan type {kind}{n}")


def cartan_rows(kind: str, n: int) -> list[list[int]]:
    """Simple roots of a simple type in fundamental-weight coordinates.

    Row ``i`` is ``(<alpha_i, alpha_j^vee>)_j``.
    """
    simple = _euclidean_simple_roots(kind, n)

    def dot(a, b):
        return sum((x * y for x, y in zip(a, b)), Fraction(0))

    rows = []
    for a in simple:
        row = []
        for b in simple:
            v = 2 * dot(a, b) / dot(b, b)
            if v.denominator != 1:
                raise RootDatumError("non-integral Cartan entry")
            row.append(int(v))
        rows.append(row)
    return rows


_FACTOR = re.compile(r"^([ABCDGT])_?(\d+)$")


def _parse_label(label: str) -> list[tuple[str, int]]:
    parts = re.split(r"\s*[x×*]\s*", label.strip())
    out = []
    for part in parts:
        m = _FACTOR.match(part.strip().upper())
        if not m:
            raise RootDatumError(f"unsupported group label {label!r}")
        out.append((m.group(1), int(m.group(2))))
    return out


# --- the root datum ---------------------------------------------------------


@dataclass(frozen=True)
class RootDatum:
    rank: int
    simple_roots: tuple[Vector, ...]
    simple_coroots: tuple[Vector, ...]
    positive_roots: tuple[Vector, ...]
    weyl_generators: tuple[Matrix, ...]
    label: str | None = None
    max_weyl_order: int = field(default=MAX_WEYL_ORDER, compare=False, repr=False)

    @property
    def roots(self) -> tuple[Vector, ...]:
        """All roots: the positive ones followed by their negatives."""
        return self.positive_roots + tuple(tuple(-x for x in a) for a in self.positive_roots)

    @property
    def dim(self) -> int:
        """Real dimension of G."""
        return self.rank + 2 * len(self.positive_roots)

    @property
    def is_abelian(self) -> bool:
        return not self.positive_roots

    @cached_property
    def weyl_group(self) -> tuple[Matrix, ...]:
        """All Weyl group elements as torus-action matrices, identity first."""
        ident = tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))
        gens = [np.array(g, dtype=np.int64) for g in self.weyl_generators]
        seen = {ident}
        order = [ident]
        head = 0
        while head < len(order):
            cur = np.array(order[head], dtype=np.int64).reshape(self.rank, self.rank)
            head += 1
            for g in gens:
                nxt = tuple(map(tuple, (g @ cur).tolist()))
                if nxt not in seen:
                    seen.add(nxt)
                    order.append(nxt)
                    if len(order) > self.max_weyl_order:
                        raise RootDatumError("Weyl group exceeds the configured bound")
        return tuple(order)

    @property
    def weyl_order(self) -> int:
        return len(self.weyl_group)

    def pairing(self, root: Sequence[int], t: TorusElement) -> Fraction:
        """Exact (unreduced) pairing ``<root, xi>``."""
        return sum((a * x for a, x in zip(root, t.xi)), Fraction(0))

    def act(self, w: Matrix, t: TorusElement) -> TorusElement:
        """Apply a Weyl group matrix to a torus element."""
        return TorusElement(
            sum((c * x for c, x in zip(row, t.xi)), Fraction(0)) for row in w
        )

    def act_on_weight(self, w: Matrix, lam: Sequence[int]) -> Vector:
        """Contragredient action ``lam -> lam @ w^{-1}``; for reflections this is ``lam @ w``."""
        winv = _int_inverse(w)
        return tuple(sum(lam[i] * winv[i][j] for i in range(self.rank)) for j in range(self.rank))


def _int_inverse(w: Matrix) -> Matrix:
    a = np.array(w, dtype=float).reshape(len(w), len(w))
    inv = np.rint(np.linalg.inv(a)).astype(np.int64) if len(w) else a.astype(np.int64)
    return tuple(map(tuple, inv.tolist()))


def _block_sum(factors: list[tuple[list[Vector], list[Vector], int]]):
    rank = sum(f[2] for f in factors)
    roots, coroots = [], []
    offset = 0
    for simple, cos, r in factors:
        for a, c in zip(simple, cos):
            roots.append(tuple([0] * offset + list(a) + [0] * (rank - offset - r)))
            coroots.append(tuple([0] * offset + list(c) + [0] * (rank - offset - r)))
        offset += r
    return rank, roots, coroots


def _from_simple(
    rank: int,
    simple: Sequence[Vector],
    coroots: Sequence[Vector],
    label: str | None,
    max_roots: int = MAX_ROOTS,
) -> RootDatum:
    simple = [tuple(int(x) for x in a) for a in simple]
    coroots = [tuple(int(x) for x in c) for c in coroots]
    k = len(simple)
    if len(coroots) != k:
        raise RootDatumError("need exactly one coroot per simple root")
    for v in simple + coroots:
        if len(v) != rank:
            raise RootDatumError(f"vector {v} does not have length {rank}")
    for a, c in zip(simple, coroots):
        if not any(a):
            raise RootDatumError("a simple root is zero")
        if sum(x * y for x, y in zip(a, c)) != 2:
            raise RootDatumError(f"<{a}, coroot> must be 2")
    if k:
        mat = np.array(simple, dtype=float)
        if np.linalg.matrix_rank(mat) != k:
            raise RootDatumError("simple roots are not linearly independent")

    def reflect(beta: Vector, i: int) -> tuple[Vector, int]:
        n = sum(x * y for x, y in zip(beta, coroots[i]))
        return tuple(b - n * a for b, a in zip(beta, simple[i])), n

    # closure of the simple roots under simple reflections, tracking
    # coordinates in the simple-root basis
    start = {}
    for i, a in enumerate(simple):
        coeff = [0] * k
        coeff[i] = 1
        start[a] = tuple(coeff)
    coords = dict(start)
    queue = list(start)
    head = 0
    while head < len(queue):
        beta = queue[head]
        head += 1
        c = coords[beta]
        for i in range(k):
            img, n = reflect(beta, i)
            if img not in coords:
                cc = list(c)
                cc[i] -= n
                coords[img] = tuple(cc)
                queue.append(img)
                if len(coords) > max_roots:
                    raise RootDatumError(
                        "reflection closure exceeds the root bound; input is not a finite root system"
                    )
    positive = []
    for beta, c in coords.items():
        if all(x >= 0 for x in c):
            positive.append((c, beta))
        elif not all(x <= 0 for x in c):
            raise RootDatumError(f"root {beta} has mixed-sign simple coordinates")
        if not any(beta):
            raise RootDatumError("zero root produced")
    positive.sort(key=lambda cb: (sum(cb[0]), tuple(-x for x in cb[0])))
    pos_roots = tuple(beta for _, beta in positive)
    full = set(coords)
    for a in pos_roots:
        if tuple(-x for x in a) not in full:
            raise RootDatumError(f"negation of root {a} is not a root")

    gens = []
    for a, c in zip(simple, coroots):
        m = tuple(
            tuple(int(i == j) - c[i] * a[j] for j in range(rank)) for i in range(rank)
        )
        gens.append(m)
        # each generator must permute the root set (weights act by lam @ M)
        for beta in full:
            img = tuple(sum(beta[i] * m[i][j] for i in range(rank)) for j in range(rank))
            if img not in full:
                raise RootDatumError("a Weyl generator does not permute the roots")
    return RootDatum(
        rank=rank,
        simple_roots=tuple(simple),
        simple_coroots=tuple(coroots),
        positive_roots=pos_roots,
        weyl_generators=tuple(gens),
        label=label,
    )


def build_root_datum(desc, max_roots: int = MAX_ROOTS) -> RootDatum:
    """Build a root datum from a Cartan-type label or an explicit matrix.

    ``desc`` may be a label such as ``"A2"``, ``"B2"``, ``"G2"``, ``"A1xA1"``
    or ``"A1xT1"`` (``T_n`` is an n-dimensional torus factor), a square
    integer matrix whose rows are the simple roots in fundamental-weight
    coordinates, or a mapping ``{"simple_roots": ..., "coroots": ...}``.
    """
    if isinstance(desc, RootDatum):
        return desc
    if isinstance(desc, str):
        factors = []
        for kind, n in _parse_label(desc):
            if kind == "T":
                factors.append(([], [], n))
                continue
            rows = cartan_rows(kind, n)
            cos = [tuple(int(i == j) for j in range(n)) for i in range(n)]
            factors.append(([tuple(r) for r in rows], cos, n))
        rank, simple, coroots = _block_sum(factors)
        canon = "x".join(f"{k}{n}" for k, n in _parse_label(desc))
        return _from_simple(rank, simple, coroots, canon, max_roots)
    if isinstance(desc, dict):
        unknown = set(desc) - {"simple_roots", "coroots", "rank", "label"}
        if unknown:
            raise RootDatumError(f"unknown root datum keys {sorted(unknown)}")
        simple = [tuple(r) for r in desc.get("simple_roots", [])]
        rank = int(desc.get("rank", len(simple[0]) if simple else 0))
        if "coroots" in desc:
            coroots = [tuple(r) for r in desc["coroots"]]
        else:
            if len(simple) != rank:
                raise RootDatumError("coroots are required unless the matrix is square")
            coroots = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
        return _from_simple(rank, simple, coroots, desc.get("label"), max_roots)
    if isinstance(desc, (list, tuple)):
        simple = [tuple(r) for r in desc]
        rank = len(simple)
        if any(len(r) != rank for r in simple):
            raise RootDatumError("an explicit simple-root matrix must be square")
        coroots = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
        return _from_simple(rank, simple, coroots, None, max_roots)
    raise RootDatumError(f"cannot build a root datum from {type(desc).__name__}")


# --- orbits and centralizers ------------------------------------------------


def weyl_orbit(rd: RootDatum, t: TorusElement) -> tuple[TorusElement, ...]:
    """The Weyl orbit of ``t``, i.e. the torus points of its conjugacy class."""
    if t.rank != rd.rank:
        raise ValueError("torus element rank does not match the root datum")
    n = t.order
    gens = np.array(rd.weyl_generators, dtype=np.int64).reshape(len(rd.weyl_generators), rd.rank, rd.rank)
    pts = kernels.orbit_closure(gens, np.array(t.numerators(n), dtype=np.int64), n, rd.weyl_order)
    return tuple(sorted(TorusElement.from_numerators(p, n) for p in pts.tolist()))


def canonical_element(rd: RootDatum, t: TorusElement) -> TorusElement:
    """Lexicographically smallest member of the Weyl orbit."""
    return weyl_orbit(rd, t)[0]


@dataclass(frozen=True)
class CentralizerData:
    integral_roots: tuple[Vector, ...]
    dim: int
    rank_c: int


def integral_roots(rd: RootDatum, elements: Iterable[TorusElement]) -> tuple[Vector, ...]:
    elems = list(elements)
    for e in elems:
        if e.rank != rd.rank:
            raise ValueError("torus element rank does not match the root datum")
    if not rd.positive_roots:
        return ()
    n = lcm(1, *(e.order for e in elems))
    pts = np.array([e.numerators(n) for e in elems], dtype=np.int64).reshape(len(elems), rd.rank)
    res = kernels.residues(np.array(rd.positive_roots, dtype=np.int64), pts, n)
    mask = (res == 0).all(axis=0) if len(elems) else np.ones(len(rd.positive_roots), bool)
    return tuple(a for a, keep in zip(rd.positive_roots, mask.tolist()) if keep)


def centralizer(rd: RootDatum, tup: CommutingTuple | TorusElement) -> CentralizerData:
    """Common centralizer of a tuple, described by its integral positive roots."""
    elems = [tup] if isinstance(tup, TorusElement) else list(tup)
    ints = integral_roots(rd, elems)
    return CentralizerData(integral_roots=ints, dim=rd.rank + 2 * len(ints), rank_c=rd.rank)


def _nullspace(rows: Sequence[Sequence[int]], ncols: int) -> list[Vector]:
    """Integer basis of ``{v : row . v = 0 for all rows}``."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][f]
        den = lcm(1, *(x.denominator for x in v))
        basis.append(tuple(int(x * den) for x in v))
    return basis


def is_levi(rd: RootDatum, tup: CommutingTuple | TorusElement) -> bool:
    """Whether the integral roots are cut out by a linear subspace."""
    ints = set(centralizer(rd, tup).integral_roots)
    basis = _nullspace(list(ints), rd.rank)
    for beta in rd.positive_roots:
        if beta not in ints and all(sum(x * y for x, y in zip(beta, b)) == 0 for b in basis):
            return False
    return True


def _lattice_points(dim: int):
    """Integer vectors ordered by sup-norm, then lexicographically."""
    yield (0,) * dim
    if dim == 0:
        return
    h = 1
    while True:
        for v in product(range(-h, h + 1), repeat=dim):
            if max(abs(x) for x in v) == h:
                yield v
        h += 1


def regular_alpha(rd: RootDatum, tup: CommutingTuple | TorusElement) -> tuple[Fraction, ...]:
    """A point of the Lie algebra of T with the same centralizer as the tuple.

    The search runs over integer combinations of an integer basis of the
    annihilator of the integral roots, by sup-norm then lexicographically, and
    returns the first point off every other root hyperplane.

    Raises :class:`NotLeviError` when no such point exists.
    """
    ints = set(centralizer(rd, tup).integral_roots)
    others = [b for b in rd.positive_roots if b not in ints]
    basis = _nullspace(list(ints), rd.rank)
    for beta in others:
        if all(sum(x * y for x, y in zip(beta, b)) == 0 for b in basis):
            raise NotLeviError(
                f"root {beta} is non-integral yet vanishes on the annihilator of the integral roots"
            )
    for coeff in _lattice_points(len(basis)):
        alpha = [0] * rd.rank
        for c, b in zip(coeff, basis):
            for j in range(rd.rank):
                alpha[j] += c * b[j]
        if all(sum(x * y for x, y in zip(beta, alpha)) != 0 for beta in others):
            return tuple(Fraction(a) for a in alpha)
    raise AssertionError("unreachable: lattice enumeration is infinite")


def vanishing_roots(rd: RootDatum, alpha: Sequence[Fraction]) -> tuple[Vector, ...]:
    return tuple(
        b for b in rd.positive_roots if sum((x * y for x, y in zip(b, alpha)), Fraction(0)) == 0
    )


def tuple_canonical_form(rd: RootDatum, elems: Sequence[TorusElement]) -> tuple[TorusElement, ...]:
    """Smallest image of the tuple under the diagonal Weyl action."""
    return min(tuple(rd.act(w, e) for e in elems) for w in rd.weyl_group)


def tuple_classes(rd: RootDatum, class_reps: Sequence[TorusElement]) -> list[CommutingTuple]:
    """Tuples ``(h_1, ..., h_m)`` with ``[h_i] = [g_i]``, up to diagonal Weyl action.

    Each class is returned by its canonical form; the list is sorted.
    """
    orbits = [weyl_orbit(rd, g) for g in class_reps]
    seen = set()
    for combo in product(*orbits):
        seen.add(tuple_canonical_form(rd, combo))
    return [CommutingTuple(c) for c in sorted(seen)]


def fiber_dimension(rd: RootDatum, tup: CommutingTuple, sub: CommutingTuple | TorusElement) -> int:
    """Real dimension of the fiber ``C(sub)/C(tup)`` of ``G/C(tup) -> G/C(sub)``."""
    big = centralizer(rd, sub)
    small = centralizer(rd, tup)
    if not set(small.integral_roots) <= set(big.integral_roots):
        raise ValueError("C(tuple) is not contained in C(subtuple); not a subtuple")
    d = big.dim - small.dim
    if d < 0 or d % 2:
        raise AssertionError(f"fiber dimension {d} is not a nonnegative even integer")
    return d


def product_datum(a: RootDatum, b: RootDatum) -> RootDatum:
    """The root datum of ``G x H``."""
    rank, simple, coroots = _block_sum(
        [
            (list(a.simple_roots), list(a.simple_coroots), a.rank),
            (list(b.simple_roots), list(b.simple_coroots), b.rank),
        ]
    )
    label = f"{a.label}x{b.label}" if a.label and b.label else None
    return _from_simple(rank, simple, coroots, label)
