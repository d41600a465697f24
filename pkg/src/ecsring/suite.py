"""Seeded randomized verification suites.

A suite is described by a dict::

    {
      "root_data": ["A1", "A2", "B2", "G2", "A1xA1"],
      "max_order": 12,        # orders of random torus elements
      "max_lines": 8,         # weight lines per random representation
      "weight_range": 3,      # entries of random weights lie in [-3, 3]
      "gkm_spaces": ["CP1", "CP2"],
      "gkm_max_order": 3,
      "gkm_max_degree": 2,
      "checks": {"ssn": 100, "assoc": 100, "levi": 6, ...}
    }

Counts in ``checks`` are per root datum (or per GKM space); ``levi`` takes
the maximal element order of its exhaustive scan instead. Every instance is
generated from ``random.Random`` seeded by the suite seed, the check name and
the datum, so results do not depend on evaluation order.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from typing import Any, Callable

from .gkm import (
    EquivariantClass,
    GKMGraph,
    build_sector,
    check_associativity,
    degree_audit,
    ecs_product,
    hyperplane_values,
    projective_space,
    random_class,
    sector_report,
)
from .localization import abbv_identity, matches, oracle_product
from .poly import Poly
from .reduction import check_normal_difference, check_y_assoc, check_y_degree, cr_correction
from .root_datum import (
    NotLeviError,
    RootDatum,
    build_root_datum,
    fiber_dimension,
    integral_roots,
    regular_alpha,
    vanishing_roots,
)
from .torus import CommutingTuple, TorusElement
from .weights import (
    WeightRep,
    check_assoc_identity,
    check_degree_arith,
    check_ssn,
    weight_sum_check,
)

BOUNDS = {"max_order": 12, "max_lines": 8, "rank": 4}
WEIGHT_CHECKS = ("ssn", "weight_sum", "assoc", "degree", "parity", "normal_difference", "y_assoc", "y_degree", "abelian")
GKM_CHECKS = ("gkm_oracle", "gkm_assoc", "gkm_laws", "gkm_degree")
ALL_CHECKS = WEIGHT_CHECKS + ("levi",) + GKM_CHECKS

DEFAULT_SUITE: dict[str, Any] = {
    "root_data": ["A1", "A2", "B2", "G2", "A1xA1"],
    "max_order": 12,
    "max_lines": 8,
    "weight_range": 3,
    "gkm_spaces": ["CP1", "CP2"],
    "gkm_max_order": 3,
    "gkm_max_degree": 2,
    "checks": {
        "ssn": 100,
        "weight_sum": 100,
        "assoc": 100,
        "degree": 100,
        "parity": 100,
        "normal_difference": 100,
        "y_assoc": 100,
        "y_degree": 100,
        "abelian": 20,
        "levi": 6,
        "gkm_oracle": 20,
        "gkm_assoc": 10,
        "gkm_laws": 20,
        "gkm_degree": 20,
    },
}


class SuiteError(ValueError):
    pass


@dataclass
class Instance:
    check: str
    target: str
    rd: RootDatum | None = None
    rep: WeightRep | None = None
    elements: tuple[TorusElement, ...] = ()
    degrees: tuple[int, ...] = ()
    graph: GKMGraph | None = None
    classes: tuple[EquivariantClass, ...] = ()
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"check": self.check, "target": self.target}
        if self.rep is not None:
            out["weights"] = [list(lam) for lam in self.rep.weights()]
        if self.elements:
            out["elements"] = [e.to_strings() for e in self.elements]
        if self.degrees:
            out["degrees"] = list(self.degrees)
        if self.classes:
            out["classes"] = [c.to_json() for c in self.classes]
        return out


@dataclass
class CheckResult:
    check: str
    target: str
    instances: int = 0
    passed: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def failed(self) -> int:
        return self.instances - self.passed

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "target": self.target,
            "instances": self.instances,
            "passed": self.passed,
            "failed": self.failed,
            "counterexamples": self.counterexamples,
        }


# --- configuration ----------------------------------------------------------


def resolve_suite(suite: dict | None, group: RootDatum | None = None, graph: GKMGraph | None = None) -> dict:
    """Fill defaults. ``None`` means the default suite; ``{}`` runs nothing."""
    if suite is None:
        out = dict(DEFAULT_SUITE)
        out["checks"] = dict(DEFAULT_SUITE["checks"])
        if group is not None and not (graph is not None and group.is_abelian):
            out["root_data"] = [group]
        if graph is not None:
            out["gkm_spaces"] = [graph]
    else:
        out = {k: v for k, v in DEFAULT_SUITE.items() if k != "checks"}
        out.update(suite)
        out.setdefault("checks", {})
    for key in ("max_order", "max_lines"):
        v = out[key]
        if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= BOUNDS[key]:
            raise SuiteError(f"suite.{key} must be an integer in [1, {BOUNDS[key]}]")
    if not isinstance(out["checks"], dict):
        raise SuiteError("suite.checks must be an object")
    for name, n in out["checks"].items():
        if name not in ALL_CHECKS:
            raise SuiteError(f"unknown check {name!r}")
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise SuiteError(f"suite.checks.{name} must be a nonnegative integer")
    data = []
    for desc in out["root_data"]:
        rd = build_root_datum(desc)
        if rd.rank > BOUNDS["rank"]:
            raise SuiteError(f"root datum {rd.label or desc} exceeds rank {BOUNDS['rank']}")
        data.append(rd)
    out["root_data"] = data
    spaces = []
    for sp in out["gkm_spaces"]:
        if isinstance(sp, GKMGraph):
            spaces.append(("config", sp, ()))
        elif isinstance(sp, str) and sp.startswith("CP") and sp[2:].isdigit():
            n = int(sp[2:])
            spaces.append((sp, projective_space(n), (hyperplane_values(n),)))
        else:
            raise SuiteError(f"unknown GKM space {sp!r}")
    out["gkm_spaces"] = spaces
    return out


def _label(rd: RootDatum) -> str:
    return rd.label or f"rank{rd.rank}:" + ",".join("".join(map(str, a)) for a in rd.simple_roots)


# --- generation -------------------------------------------------------------


def random_element(rng: random.Random, rank: int, max_order: int) -> TorusElement:
    q = rng.randint(1, max_order)
    return TorusElement.from_numerators([rng.randrange(q) for _ in range(rank)], q)


def random_rep(rng: random.Random, rank: int, max_lines: int, bound: int) -> WeightRep:
    n = rng.randint(1, max_lines)
    return WeightRep([tuple(rng.randint(-bound, bound) for _ in range(rank)) for _ in range(n)], rank=rank)


def elements_up_to(rank: int, max_order: int):
    """Every torus element of order at most ``max_order``, each once."""
    for q in range(1, max_order + 1):
        for k in range(q**rank):
            nums, rest = [], k
            for _ in range(rank):
                nums.append(rest % q)
                rest //= q
            if gcd(q, *nums) == 1:
                yield TorusElement.from_numerators(nums[::-1], q)


_ARITY = {
    "ssn": 1, "weight_sum": 3, "assoc": 3, "degree": 2, "parity": 2,
    "normal_difference": 2, "y_assoc": 3, "y_degree": 2, "abelian": 2,
}


def weight_instances(check: str, rd: RootDatum, count: int, seed: int, suite: dict) -> list[Instance]:
    rng = random.Random(f"{seed}:{check}:{_label(rd)}")
    out = []
    for _ in range(count):
        m = _ARITY[check]
        if check == "weight_sum":
            m = rng.randint(1, 3)
        elems = tuple(random_element(rng, rd.rank, suite["max_order"]) for _ in range(m))
        rep = random_rep(rng, rd.rank, suite["max_lines"], suite["weight_range"])
        degrees = tuple(2 * rng.randint(0, 3) for _ in range(2))
        target = _label(rd)
        if check == "abelian":
            rd_t = build_root_datum(f"T{rd.rank}")
            out.append(Instance(check, f"T{rd.rank}", rd_t, rep, elems, degrees))
        else:
            out.append(Instance(check, target, rd, rep, elems, degrees))
    return out


def levi_instances(rd: RootDatum, max_order: int) -> list[Instance]:
    return [Instance("levi", _label(rd), rd, None, (t,)) for t in elements_up_to(rd.rank, max_order)]


def gkm_instances(check: str, name: str, graph: GKMGraph, generators, count: int, seed: int, suite: dict) -> list[Instance]:
    rng = random.Random(f"{seed}:{check}:{name}")
    keys = sector_report(graph, suite["gkm_max_order"]).keys()
    arity = 3 if check == "gkm_assoc" else 2
    out = []
    for _ in range(count):
        classes = []
        for _ in range(arity):
            t = keys[rng.randrange(len(keys))]
            deg = rng.randint(0, suite["gkm_max_degree"])
            classes.append(random_class(build_sector(graph, t), rng, deg, generators))
        out.append(Instance(check, name, graph=graph, classes=tuple(classes), extra={"delta": rng.randrange(graph.rank + 1)}))
    return out


# --- evaluation -------------------------------------------------------------


def _pair(inst: Instance) -> CommutingTuple:
    return CommutingTuple(inst.elements[:2])


def _eval_levi(inst: Instance) -> tuple[bool, str | None]:
    t = inst.elements[0]
    try:
        alpha = regular_alpha(inst.rd, t)
    except NotLeviError as exc:
        return False, f"no regular point: {exc}"
    got = set(vanishing_roots(inst.rd, alpha))
    want = set(integral_roots(inst.rd, [t]))
    return got == want, None if got == want else f"vanishing roots {sorted(got)} vs integral roots {sorted(want)}"


def _eval_parity(inst: Instance) -> bool:
    pair = _pair(inst)
    return all(
        fiber_dimension(inst.rd, pair, sub) % 2 == 0
        for sub in (pair.product(), pair[0], pair[1])
    )


def _eval_abelian(inst: Instance) -> bool:
    pair = _pair(inst)
    v = cr_correction(inst.rd, pair)
    return v.is_zero() and check_normal_difference(inst.rd, pair)


def _gkm_oracle(inst: Instance) -> bool:
    a, b = inst.classes
    g = inst.graph
    prod = ecs_product(a, b, g)
    if not matches(oracle_product(a, b, g), prod):
        return False
    k = inst.extra.get("delta", 0)
    delta = Poly.const(g.rank, 1) if k == 0 else Poly.var(g.rank, k - 1)
    return abbv_identity(a, b, prod, g, delta)


def _gkm_laws(inst: Instance) -> bool:
    a, b = inst.classes
    g = inst.graph
    one = EquivariantClass.constant(build_sector(g, TorusElement.identity(g.rank)))
    ab = ecs_product(a, b, g)
    ba = ecs_product(b, a, g)
    return (
        ecs_product(one, a, g) == a
        and ecs_product(a, one, g) == a
        and ab == ba
    )


def _gkm_degree(inst: Instance) -> bool:
    a, b = inst.classes
    prod = ecs_product(a, b, inst.graph)
    return all(row.ok for row in degree_audit(a, b, inst.graph, prod))


EVALUATORS: dict[str, Callable[[Instance], Any]] = {
    "ssn": lambda i: check_ssn(i.rep, i.elements[0]),
    "weight_sum": lambda i: weight_sum_check(i.rep, CommutingTuple(i.elements)) is not None,
    "assoc": lambda i: check_assoc_identity(i.rep, CommutingTuple(i.elements)),
    "degree": lambda i: check_degree_arith(i.rep, _pair(i), *i.degrees),
    "parity": _eval_parity,
    "normal_difference": lambda i: check_normal_difference(i.rd, _pair(i)),
    "y_assoc": lambda i: check_y_assoc(i.rep, i.rd, CommutingTuple(i.elements)),
    "y_degree": lambda i: check_y_degree(i.rep, i.rd, _pair(i), *i.degrees),
    "abelian": _eval_abelian,
    "levi": _eval_levi,
    "gkm_oracle": _gkm_oracle,
    "gkm_assoc": lambda i: check_associativity(*i.classes, i.graph),
    "gkm_laws": _gkm_laws,
    "gkm_degree": _gkm_degree,
}


def evaluate(inst: Instance) -> tuple[bool, str | None]:
    try:
        res = EVALUATORS[inst.check](inst)
    except (ArithmeticError, AssertionError, ValueError) as exc:
        return False, f"{type(exc).__name__}: {exc}"
    if isinstance(res, tuple):
        return res
    return bool(res), None


def shrink(inst: Instance) -> Instance:
    """Greedily drop weight lines and trivialize elements while still failing."""
    if inst.rep is None:
        return inst
    current = inst
    changed = True
    while changed:
        changed = False
        lines = current.rep.weights()
        for i in range(len(lines)):
            if len(lines) <= 1:
                break
            cand_rep = WeightRep(lines[:i] + lines[i + 1:], rank=current.rep.rank)
            cand = Instance(**{**current.__dict__, "rep": cand_rep})
            if not evaluate(cand)[0]:
                current, changed = cand, True
                break
        if changed:
            continue
        for i, e in enumerate(current.elements):
            if e.is_identity():
                continue
            elems = list(current.elements)
            elems[i] = TorusElement.identity(e.rank)
            cand = Instance(**{**current.__dict__, "elements": tuple(elems)})
            if not evaluate(cand)[0]:
                current, changed = cand, True
                break
    return current


def build_instances(suite: dict, seed: int) -> list[Instance]:
    checks = suite["checks"]
    out: list[Instance] = []
    for name in ALL_CHECKS:
        n = checks.get(name, 0)
        if not n:
            continue
        if name in WEIGHT_CHECKS:
            for rd in suite["root_data"]:
                out.extend(weight_instances(name, rd, n, seed, suite))
        elif name == "levi":
            for rd in suite["root_data"]:
                if rd.rank <= 2:
                    out.extend(levi_instances(rd, n))
        else:
            for sp_name, graph, gens in suite["gkm_spaces"]:
                out.extend(gkm_instances(name, sp_name, graph, gens, n, seed, suite))
    return out


def run_suite(suite: dict, seed: int, jobs: int = 1, max_counterexamples: int = 3) -> list[CheckResult]:
    """Run every instance; results are ordered by check then target."""
    instances = build_instances(suite, seed)
    if jobs > 1 and len(instances) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(evaluate, instances, chunksize=max(1, len(instances) // (4 * jobs))))
    else:
        outcomes = [evaluate(i) for i in instances]
    results: dict[tuple[str, str], CheckResult] = {}
    for inst, (ok, detail) in zip(instances, outcomes):
        key = (inst.check, inst.target)
        res = results.setdefault(key, CheckResult(inst.check, inst.target))
        res.instances += 1
        if ok:
            res.passed += 1
        elif len(res.counterexamples) < max_counterexamples:
            small = shrink(inst)
            dump = small.to_json()
            dump["error"] = evaluate(small)[1] or detail
            res.counterexamples.append(dump)
    return list(results.values())


def summarize(results: list[CheckResult]) -> dict:
    total = sum(r.instances for r in results)
    passed = sum(r.passed for r in results)
    return {"instances": total, "passed": passed, "failed": total - passed, "checks": len(results)}


__all__ = [
    "ALL_CHECKS",
    "DEFAULT_SUITE",
    "CheckResult",
    "Instance",
    "SuiteError",
    "build_instances",
    "evaluate",
    "resolve_suite",
    "run_suite",
    "shrink",
    "summarize",
]
