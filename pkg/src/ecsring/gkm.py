"""The stringy product for torus actions on GKM spaces.

A GKM space is encoded by its fixed points (vertices), the torus weights of
the tangent space at each vertex and the invariant 2-spheres (edges). For a
finite-order ``t`` the fixed locus ``X^t`` is again GKM: every vertex
survives, with the tangent weights pairing integrally with ``t``, and so do
the edges whose weight pairs integrally with ``t``.

An equivariant class on ``X^t`` is a polynomial per vertex such that across
every surviving edge the difference is divisible by the edge weight.

Since all vertices lie in every fixed locus, the Gysin map of
``X^(g1,g2) -> X^(g1 g2)`` restricts at a vertex to multiplication by the
Euler class of the normal weights, so the product is computed vertexwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .poly import Poly
from .torus import CommutingTuple, TorusElement
from .weights import (
    VirtualRep,
    WeightRep,
    degree_shift,
    eigen_table,
    n_class,
    obstruction_class,
)

Weight = tuple[int, ...]


class GKMError(ValueError):
    """Invalid graph or class data."""


class GKMConditionError(GKMError):
    """A vertex tuple violates edge divisibility."""


def _parallel(a: Weight, b: Weight) -> bool:
    n = len(a)
    return all(a[i] * b[j] == a[j] * b[i] for i in range(n) for j in range(n))


@dataclass(frozen=True)
class GKMGraph:
    rank: int
    names: tuple[str, ...]
    tangent: tuple[WeightRep, ...]
    edges: tuple[tuple[int, int, Weight], ...]

    def __post_init__(self):
        if len(self.names) != len(self.tangent):
            raise GKMError("one tangent representation per vertex is required")
        if len(set(self.names)) != len(self.names):
            raise GKMError("vertex names must be distinct")
        dims = {rep.dim for rep in self.tangent}
        if len(dims) > 1:
            raise GKMError(f"vertices have different tangent dimensions {sorted(dims)}")
        for name, rep in zip(self.names, self.tangent):
            if rep.rank != self.rank:
                raise GKMError(f"vertex {name}: weights have the wrong length")
            ws = rep.weights()
            for i, a in enumerate(ws):
                if not any(a):
                    raise GKMError(f"vertex {name}: zero tangent weight")
                for b in ws[i + 1:]:
                    if _parallel(a, b):
                        raise GKMError(f"vertex {name}: weights {a} and {b} are not independent")
        for u, v, lam in self.edges:
            if len(lam) != self.rank:
                raise GKMError("edge weight has the wrong length")
            neg = tuple(-x for x in lam)
            for end in (u, v):
                if not 0 <= end < len(self.names):
                    raise GKMError(f"edge endpoint {end} out of range")
                ws = self.tangent[end].weights()
                if lam not in ws and neg not in ws:
                    raise GKMError(f"edge weight {lam} is not tangent at {self.names[end]}")

    @property
    def dim(self) -> int:
        """Complex dimension of X."""
        return self.tangent[0].dim if self.tangent else 0

    @property
    def nvertices(self) -> int:
        return len(self.names)

    def vertex_index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise GKMError(f"unknown vertex {name!r}") from None


def projective_space(n: int) -> GKMGraph:
    """``CP^n`` with ``T^n`` acting by ``[z_0 : t_1 z_1 : ... : t_n z_n]``."""
    if n < 0:
        raise ValueError("n must be nonnegative")

    def x(i):
        return tuple(int(j + 1 == i) for j in range(n))

    names = tuple(f"p{i}" for i in range(n + 1))
    tangent = []
    for i in range(n + 1):
        tangent.append(
            WeightRep(
                [tuple(a - b for a, b in zip(x(j), x(i))) for j in range(n + 1) if j != i],
                rank=n,
            )
        )
    edges = tuple(
        (i, j, tuple(a - b for a, b in zip(x(j), x(i))))
        for i in range(n + 1)
        for j in range(i + 1, n + 1)
    )
    return GKMGraph(rank=n, names=names, tangent=tuple(tangent), edges=edges)


def point_graph(rank: int = 0) -> GKMGraph:
    """A single fixed point with no tangent directions."""
    return GKMGraph(rank=rank, names=("pt",), tangent=(WeightRep([], rank=rank),), edges=())


# --- sectors ----------------------------------------------------------------


def _components(n: int, links: Iterable[tuple[int, int]]) -> tuple[tuple[int, ...], ...]:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in links:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return tuple(tuple(g) for g in sorted(groups.values()))


def fixed_subrep(rep: WeightRep, elements: Sequence[TorusElement]) -> WeightRep:
    """Lines fixed by every element."""
    if not elements:
        return rep
    table = eigen_table(rep, list(elements))
    return WeightRep(
        [(lam, m) for row, (lam, m) in zip(table, rep.lines) if all(w == 0 for w in row)],
        rank=rep.rank,
    )


@dataclass(frozen=True)
class Sector:
    t: TorusElement
    fixed_tangent: tuple[WeightRep, ...]
    edges: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    shifts: tuple[Fraction, ...]
    graph: GKMGraph = field(compare=False, repr=False)

    @property
    def key(self) -> tuple[Fraction, ...]:
        return self.t.xi

    def vertex_shift(self, v: int) -> Fraction:
        for comp, s in zip(self.components, self.shifts):
            if v in comp:
                return s
        raise IndexError(v)

    def component_dims(self) -> tuple[int, ...]:
        return tuple(self.fixed_tangent[c[0]].dim for c in self.components)

    def support(self) -> tuple[int, ...]:
        return tuple(range(self.graph.nvertices))


def build_sector(graph: GKMGraph, t: TorusElement) -> Sector:
    """The fixed locus ``X^t`` with its components and degree shifts."""
    if t.rank != graph.rank:
        raise GKMError("torus element rank does not match the graph")
    fixed = tuple(fixed_subrep(rep, [t]) for rep in graph.tangent)
    surviving = tuple(i for i, (_, _, lam) in enumerate(graph.edges) if t.pair(lam) == 0)
    comps = _components(graph.nvertices, ((graph.edges[i][0], graph.edges[i][1]) for i in surviving))
    shifts = []
    for comp in comps:
        vals = {degree_shift(graph.tangent[v], t) for v in comp}
        if len(vals) != 1:
            raise GKMError(f"degree shift is not constant on component {comp}: {sorted(vals)}")
        dims = {fixed[v].dim for v in comp}
        if len(dims) != 1:
            raise GKMError(f"fixed dimension is not constant on component {comp}")
        shifts.append(vals.pop())
    return Sector(t=t, fixed_tangent=fixed, edges=surviving, components=comps, shifts=tuple(shifts), graph=graph)


# --- classes ----------------------------------------------------------------


def euler_class(v_rep: VirtualRep, nvars: int) -> Poly:
    """Equivariant Euler class at a fixed point: product of weight forms."""
    out = Poly.const(nvars, 1)
    for lam, c in v_rep.items():
        if c.denominator != 1 or c < 0:
            raise GKMError(f"Euler class of a non-bundle class (coefficient {c} on {lam})")
        out = out * Poly.linear(lam) ** int(c)
    return out


@dataclass(frozen=True)
class EquivariantClass:
    sector: Sector
    values: tuple[Poly, ...]

    def __post_init__(self):
        g = self.sector.graph
        if len(self.values) != g.nvertices:
            raise GKMError("one polynomial per vertex is required")
        for p in self.values:
            if p.nvars != g.rank:
                raise GKMError("polynomial has the wrong number of variables")
        bad = gkm_violations(self.sector, self.values)
        if bad:
            u, v, lam = bad[0]
            raise GKMConditionError(
                f"edge {g.names[u]}-{g.names[v]}: difference not divisible by weight {lam}"
            )

    @classmethod
    def constant(cls, sector: Sector, c=1) -> "EquivariantClass":
        n = sector.graph.rank
        return cls(sector, tuple(Poly.const(n, c) for _ in sector.graph.names))

    @property
    def degree(self) -> int | None:
        """Real degree when the class is homogeneous, else ``None``."""
        degs = {p.degree() for p in self.values if not p.is_zero()}
        if any(not p.is_homogeneous() for p in self.values):
            return None
        if not degs:
            return 0
        if len(degs) == 1:
            return 2 * degs.pop()
        return None

    def component_degrees(self) -> tuple[int | None, ...]:
        out = []
        for comp in self.sector.components:
            vals = [self.values[v] for v in comp if not self.values[v].is_zero()]
            degs = {p.degree() for p in vals}
            if vals and (len(degs) != 1 or not all(p.is_homogeneous() for p in vals)):
                out.append(None)
            else:
                out.append(2 * degs.pop() if degs else None)
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "sector": self.sector.t.to_strings(),
            "values": {n: p.to_json() for n, p in zip(self.sector.graph.names, self.values)},
        }


def gkm_violations(sector: Sector, values: Sequence[Poly]) -> list[tuple[int, int, Weight]]:
    g = sector.graph
    bad = []
    for i in sector.edges:
        u, v, lam = g.edges[i]
        if not (values[u] - values[v]).divisible_by_linear(lam):
            bad.append((u, v, lam))
    return bad


def _pair(a: EquivariantClass, b: EquivariantClass) -> CommutingTuple:
    return CommutingTuple.of(a.sector.t, b.sector.t)


def _check_on_graph(c: EquivariantClass, graph: GKMGraph) -> None:
    if c.sector.graph != graph:
        raise GKMError("class lives on a different graph")
    if build_sector(graph, c.sector.t) != c.sector:
        raise GKMError("class carries inconsistent sector data")


def ecs_product(a: EquivariantClass, b: EquivariantClass, graph: GKMGraph) -> EquivariantClass:
    """``a * b`` in the sector of ``g1 g2``.

    At each vertex: ``a_v b_v e(O_v) e(N_(g1,g2) - N_(g1 g2))_v``.
    """
    _check_on_graph(a, graph)
    _check_on_graph(b, graph)
    pair = _pair(a, b)
    target = build_sector(graph, pair.product())
    values = []
    for v, rep in enumerate(graph.tangent):
        obstruction = obstruction_class(rep, pair)
        normal = n_class(rep, pair) - n_class(rep, pair.product())
        if not normal.is_honest():
            raise GKMError(f"normal difference at {graph.names[v]} is not a bundle: {normal}")
        values.append(
            a.values[v] * b.values[v] * euler_class(obstruction, graph.rank) * euler_class(normal, graph.rank)
        )
    bad = gkm_violations(target, values)
    if bad:
        u, w, lam = bad[0]
        raise GKMConditionError(
            f"product violates divisibility on edge {graph.names[u]}-{graph.names[w]} ({lam})"
        )
    return EquivariantClass(target, tuple(values))


@dataclass(frozen=True)
class DegreeAudit:
    vertex: str
    product_degree: Fraction
    lhs: Fraction
    rhs: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def degree_audit(a: EquivariantClass, b: EquivariantClass, graph: GKMGraph, result: EquivariantClass | None = None) -> list[DegreeAudit]:
    """Per-vertex check of ``deg(ab) + 2 age(g1g2) = deg a + 2 age(g1) + deg b + 2 age(g2)``.

    The product degree is the rank count; when ``result`` is given its
    nonzero vertex values must be homogeneous of exactly that degree.
    """
    da, db = a.degree, b.degree
    if da is None or db is None:
        raise GKMError("degree audit needs homogeneous inputs")
    pair = _pair(a, b)
    g1, g2 = pair
    rows = []
    for v, rep in enumerate(graph.tangent):
        o = obstruction_class(rep, pair)
        normal = n_class(rep, pair) - n_class(rep, pair.product())
        deg = Fraction(da + db) + 2 * o.rank + 2 * normal.rank
        if result is not None:
            p = result.values[v]
            if not p.is_zero() and (not p.is_homogeneous() or 2 * p.degree() != deg):
                raise GKMError(f"product value at {graph.names[v]} has degree {2 * p.degree()}, expected {deg}")
        lhs = deg + 2 * degree_shift(rep, g1 * g2)
        rhs = da + 2 * degree_shift(rep, g1) + db + 2 * degree_shift(rep, g2)
        rows.append(DegreeAudit(graph.names[v], deg, lhs, rhs))
    return rows


def check_associativity(a: EquivariantClass, b: EquivariantClass, c: EquivariantClass, graph: GKMGraph) -> bool:
    left = ecs_product(ecs_product(a, b, graph), c, graph)
    right = ecs_product(a, ecs_product(b, c, graph), graph)
    return left.sector == right.sector and left.values == right.values


# --- sector enumeration -----------------------------------------------------


@dataclass(frozen=True)
class SectorRow:
    t: TorusElement
    order: int
    components: tuple[tuple[int, ...], ...]
    shifts: tuple[Fraction, ...]
    dims: tuple[int, ...]


@dataclass
class SectorTable:
    graph: GKMGraph
    max_order: int
    rows: list[SectorRow]
    ring_products: dict = field(default_factory=dict)

    def keys(self) -> list[TorusElement]:
        return [r.t for r in self.rows]

    def sector(self, t: TorusElement) -> Sector:
        return build_sector(self.graph, t)

    def product(self, a: EquivariantClass, b: EquivariantClass) -> EquivariantClass:
        """Cached product; the cache only ever gains entries."""
        key = (a, b)
        hit = self.ring_products.get(key)
        if hit is None:
            hit = ecs_product(a, b, self.graph)
            self.ring_products.setdefault(key, hit)
        return hit


def _grid_points(rank: int, q: int):
    for k in range(q**rank):
        pt = []
        for _ in range(rank):
            pt.append(k % q)
            k //= q
        yield tuple(reversed(pt))


def sector_report(graph: GKMGraph, max_order: int) -> SectorTable:
    """All sectors ``X^t`` with ``ord(t) <= max_order``, sorted by ``t``."""
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    if graph.nvertices == 0:
        return SectorTable(graph, max_order, [])
    lines, groups = [], []
    for v, rep in enumerate(graph.tangent):
        for lam, mult in rep.lines:
            for _ in range(mult):
                lines.append(lam)
                groups.append(v)
    w = np.array(lines, dtype=np.int64).reshape(len(lines), graph.rank)
    grp = np.array(groups, dtype=np.int64)
    edge_w = np.array([lam for _, _, lam in graph.edges], dtype=np.int64).reshape(len(graph.edges), graph.rank)
    rows = []
    for q in range(1, max_order + 1):
        shift_num, fixed, prim = kernels.scan_grid(w, grp, graph.nvertices, q)
        idx = np.nonzero(prim)[0]
        if not len(idx):
            continue
        pts = np.array(list(_grid_points(graph.rank, q)), dtype=np.int64).reshape(q**graph.rank, graph.rank)[idx]
        edge_res = kernels.residues(edge_w, pts, q) if len(graph.edges) else np.zeros((len(idx), 0), np.int64)
        for j, k in enumerate(idx.tolist()):
            t = TorusElement.from_numerators(pts[j].tolist(), q)
            links = [(u, v) for (u, v, _), r in zip(graph.edges, edge_res[j].tolist()) if r == 0]
            comps = _components(graph.nvertices, links)
            shifts, dims = [], []
            for comp in comps:
                vals = {Fraction(int(shift_num[k, v]), q) for v in comp}
                if len(vals) != 1:
                    raise GKMError(f"degree shift not constant on component {comp} of X^{t}")
                shifts.append(vals.pop())
                dims.append(int(fixed[k, comp[0]]))
            rows.append(SectorRow(t, q, comps, tuple(shifts), tuple(dims)))
    rows.sort(key=lambda r: r.t.xi)
    return SectorTable(graph, max_order, rows)


# --- random classes ---------------------------------------------------------


def hyperplane_values(n: int) -> tuple[Poly, ...]:
    """The class ``u`` on ``CP^n`` with ``u(p_0) = 0`` and ``u(p_i) = x_i``."""
    return (Poly.zero(n),) + tuple(Poly.var(n, i) for i in range(n))


def _monomials(nvars: int, degree: int):
    for combo in combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for i in combo:
            exps[i] += 1
        yield tuple(exps)


def random_class(sector: Sector, rng, degree: int, generators: Sequence[Sequence[Poly]] = (), coeff_range: int = 3) -> EquivariantClass:
    """A random homogeneous class of polynomial degree ``degree`` on a sector.

    Built from component indicators, global polynomials and products of the
    given global degree-1 ``generators``, all of which restrict to GKM
    classes on any sector.
    """
    g = sector.graph
    n = g.rank
    values = [Poly.zero(n) for _ in g.names]
    for comp in sector.components:
        pieces = []
        for k in range(degree + 1):
            gens_part = [tuple(Poly.const(n, 1) for _ in g.names)]
            for _ in range(k):
                if not generators:
                    gens_part = []
                    break
                pick = generators[rng.randrange(len(generators))]
                gens_part = [tuple(a * b for a, b in zip(gens_part[0], pick))]
            if not gens_part:
                continue
            monos = list(_monomials(n, degree - k))
            if not monos:
                continue
            mono = monos[rng.randrange(len(monos))]
            c = rng.randint(-coeff_range, coeff_range)
            pieces.append((c, Poly(n, {mono: 1}), gens_part[0]))
        for v in comp:
            total = Poly.zero(n)
            for c, mono, gvals in pieces:
                total = total + mono * gvals[v] * c
            values[v] = total
    return EquivariantClass(sector, tuple(values))
