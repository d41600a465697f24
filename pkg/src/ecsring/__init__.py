"""Exact computations for the equivariant commutative stringy product.

Finite-order torus points, weight-line bookkeeping of sectors and
obstruction classes, GKM models of torus actions, and rank identities for
symplectic reductions, all in exact rational arithmetic.
"""

from .gkm import (
    EquivariantClass,
    GKMGraph,
    Sector,
    build_sector,
    check_associativity,
    ecs_product,
    euler_class,
    projective_space,
    sector_report,
)
from .kernels import BACKEND
from .poly import Poly
from .reduction import correction_rank, cr_correction
from .root_datum import NotLeviError, RootDatum, build_root_datum, centralizer, weyl_orbit
from .torus import CommutingTuple, TorusElement
from .weights import VirtualRep, WeightRep

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CommutingTuple",
    "EquivariantClass",
    "GKMGraph",
    "NotLeviError",
    "Poly",
    "RootDatum",
    "Sector",
    "TorusElement",
    "VirtualRep",
    "WeightRep",
    "__version__",
    "build_root_datum",
    "build_sector",
    "centralizer",
    "check_associativity",
    "correction_rank",
    "cr_correction",
    "ecs_product",
    "euler_class",
    "projective_space",
    "sector_report",
    "weyl_orbit",
]
