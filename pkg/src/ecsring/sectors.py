"""Sector tables for a group acting with given weights at a fixed point.

Conjugacy classes of finite-order elements meet the maximal torus in Weyl
orbits, so each row is keyed by the smallest point of its orbit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .root_datum import RootDatum, centralizer, weyl_orbit
from .torus import TorusElement
from .weights import WeightRep


@dataclass(frozen=True)
class WeightSectorRow:
    t: TorusElement
    order: int
    shift: Fraction
    fixed_dim: int
    centralizer_dim: int
    orbit_size: int


def weight_sectors(rd: RootDatum, rep: WeightRep, max_order: int) -> list[WeightSectorRow]:
    """One row per conjugacy class of elements of order ``<= max_order``."""
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    if rep.rank != rd.rank:
        raise ValueError("weights and root datum have different rank")
    lines = [lam for lam, m in rep.lines for _ in range(m)]
    w = np.array(lines, dtype=np.int64).reshape(len(lines), rd.rank)
    grp = np.zeros(len(lines), dtype=np.int64)
    seen: set[TorusElement] = set()
    rows = []
    for q in range(1, max_order + 1):
        shift_num, fixed, prim = kernels.scan_grid(w, grp, 1, q)
        for k in np.nonzero(prim)[0].tolist():
            nums, rest = [], k
            for _ in range(rd.rank):
                nums.append(rest % q)
                rest //= q
            t = TorusElement.from_numerators(nums[::-1], q)
            if t in seen:
                continue
            orbit = weyl_orbit(rd, t)
            seen.update(orbit)
            rows.append(
                WeightSectorRow(
                    t=orbit[0],
                    order=q,
                    shift=Fraction(int(shift_num[k, 0]), q),
                    fixed_dim=int(fixed[k, 0]),
                    centralizer_dim=centralizer(rd, orbit[0]).dim,
                    orbit_size=len(orbit),
                )
            )
    rows.sort(key=lambda r: r.t.xi)
    return rows
