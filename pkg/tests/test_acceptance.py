"""Acceptance criteria, each at its stated size and time budget.

Each test records one PASS/FAIL line, printed in the terminal summary.
"""

import random
import time


from conftest import ACCEPTANCE, LABELS, datum
from ecsring.cli import main
from ecsring.gkm import (
    EquivariantClass,
    build_sector,
    check_associativity,
    ecs_product,
    hyperplane_values,
    projective_space,
    random_class,
    sector_report,
)
from ecsring.localization import matches, oracle_product
from ecsring.reduction import check_normal_difference, check_y_assoc, cr_correction, correction_rank
from ecsring.root_datum import NotLeviError, build_root_datum, fiber_dimension, integral_roots, regular_alpha, vanishing_roots
from ecsring.suite import elements_up_to, random_element, random_rep
from ecsring.torus import CommutingTuple, TorusElement
from ecsring.weights import assoc_sides, check_assoc_identity, check_degree_arith, check_ssn
from oracles import oracle_n, oracle_obstruction

SEED = 20240601
MAX_ORDER, MAX_LINES, WEIGHT_RANGE = 12, 8, 3


def record(n, title, ok, detail):
    line = f"criterion {n} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
    ACCEPTANCE[n] = line
    print(line)
    assert ok, line


def random_instances(tag, count, m):
    """``count`` (datum, rep, tuple) instances spread evenly over the five data."""
    rng = random.Random(f"{SEED}:{tag}")
    out = []
    for i in range(count):
        rd = datum(LABELS[i % len(LABELS)])
        elems = [random_element(rng, rd.rank, MAX_ORDER) for _ in range(m)]
        out.append((rd, random_rep(rng, rd.rank, MAX_LINES, WEIGHT_RANGE), CommutingTuple(elems)))
    return out


def test_criterion_1_ssn():
    start = time.perf_counter()
    inst = random_instances("ssn", 1000, 1)
    bad = 0
    for _, rep, (t,) in inst:
        ok = check_ssn(rep, t) and oracle_n(rep, [t]) == oracle_n(rep, [t.inverse()])
        bad += not ok
    dt = time.perf_counter() - start
    record(1, "S + S = N", bad == 0 and dt < 10, f"{len(inst) - bad}/{len(inst)} exact, {dt:.2f}s (budget 10s)")


TRIPLES = random_instances("assoc", 1000, 3)


def test_criterion_2_associativity_identity():
    start = time.perf_counter()
    bad = 0
    for _, rep, triple in TRIPLES:
        sides = assoc_sides(rep, triple)
        ok = check_assoc_identity(rep, triple) and sides.left == sides.right == oracle_obstruction(rep, list(triple))
        bad += not ok
    dt = time.perf_counter() - start
    record(2, "associativity bundle identity", bad == 0 and dt < 30, f"{len(TRIPLES) - bad}/{len(TRIPLES)} exact, {dt:.2f}s (budget 30s)")


def test_criterion_3_degree():
    rng = random.Random(f"{SEED}:degree")
    bad = total = 0
    for _, rep, (h1, h2, h3) in TRIPLES:
        for pair in ((h1, h2), (h1 * h2, h3), (h2, h3), (h1, h2 * h3)):
            d1, d2 = 2 * rng.randint(0, 4), 2 * rng.randint(0, 4)
            total += 1
            bad += not check_degree_arith(rep, CommutingTuple(pair), d1, d2)
    record(3, "degree preservation", bad == 0, f"{total - bad}/{total} pairs from the suite-2 triples")


RANK_LE_2 = ("A1", "A2", "B2", "G2", "A1xA1", "T1", "T2")


def test_criterion_4_regular_point():
    start = time.perf_counter()
    total, failures = 0, {}
    for label in RANK_LE_2:
        rd = build_root_datum(label)
        for t in elements_up_to(rd.rank, 6):
            total += 1
            try:
                ok = set(vanishing_roots(rd, regular_alpha(rd, t))) == set(integral_roots(rd, [t]))
            except NotLeviError:
                ok = False
            if not ok:
                failures.setdefault(label, []).append("(" + ", ".join(t.to_strings()) + ")")
    dt = time.perf_counter() - start
    nbad = sum(map(len, failures.values()))
    detail = f"{total - nbad}/{total} elements, {dt:.2f}s (budget 10s)"
    if failures:
        detail += "; no regular point for " + "; ".join(f"{k}: {' '.join(v)}" for k, v in failures.items())
    record(4, "regular point realizes the integral roots", nbad == 0 and dt < 10, detail)


def test_criterion_5_parity():
    inst = random_instances("parity", 500, 2)
    bad = 0
    for rd, _, pair in inst:
        bad += not all(fiber_dimension(rd, pair, sub) % 2 == 0 for sub in (pair.product(), pair[0], pair[1]))
    record(5, "fiber dimension parity", bad == 0, f"{len(inst) - bad}/{len(inst)} pairs")


def test_criterion_6_gkm():
    start = time.perf_counter()
    rng = random.Random(f"{SEED}:gkm")
    n_oracle = n_assoc = n_law = 0
    bad = []
    for n in (1, 2):
        graph = projective_space(n)
        keys = sector_report(graph, 3).keys()
        gens = (hyperplane_values(n),)

        def draw():
            return random_class(build_sector(graph, keys[rng.randrange(len(keys))]), rng, rng.randint(0, 2), gens)

        unit = EquivariantClass.constant(build_sector(graph, TorusElement.identity(n)))
        for _ in range(60):
            a, b = draw(), draw()
            prod = ecs_product(a, b, graph)
            n_oracle += 1
            if not matches(oracle_product(a, b, graph), prod):
                bad.append(f"CP{n} oracle")
            n_law += 1
            if ecs_product(b, a, graph) != prod or ecs_product(unit, a, graph) != a or ecs_product(a, unit, graph) != a:
                bad.append(f"CP{n} laws")
        for _ in range(30):
            n_assoc += 1
            if not check_associativity(draw(), draw(), draw(), graph):
                bad.append(f"CP{n} assoc")
    dt = time.perf_counter() - start
    ok = not bad and n_oracle >= 100 and n_assoc >= 50 and dt < 60
    record(6, "GKM ring on CP1 and CP2", ok,
           f"oracle {n_oracle}, associativity {n_assoc}, laws {n_law}, {len(bad)} mismatches, {dt:.2f}s (budget 60s)")


def test_criterion_7_reduction():
    bad = total = 0
    for label in LABELS:
        rd = datum(label)
        rng = random.Random(f"{SEED}:reduction:{label}")
        for _ in range(500):
            elems = [random_element(rng, rd.rank, MAX_ORDER) for _ in range(3)]
            rep = random_rep(rng, rd.rank, MAX_LINES, WEIGHT_RANGE)
            total += 1
            bad += not (check_normal_difference(rd, CommutingTuple(elems[:2])) and check_y_assoc(rep, rd, CommutingTuple(elems)))
    nonzero = 0
    for rank in (1, 2, 3):
        rd = build_root_datum(f"T{rank}")
        rng = random.Random(f"{SEED}:abelian:{rank}")
        for _ in range(100):
            pair = CommutingTuple([random_element(rng, rank, MAX_ORDER) for _ in range(2)])
            nonzero += not (cr_correction(rd, pair).is_zero() and correction_rank(rd, pair).rank == 0)
    record(7, "level-set identities", bad == 0 and nonzero == 0,
           f"{total - bad}/{total} pairs and triples over {len(LABELS)} data, {nonzero} nonzero abelian corrections")


def test_criterion_8_determinism(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    codes = [main(["verify", "--seed", "7", "--out", str(p)]) for p in paths]
    capsys.readouterr()
    same = paths[0].read_bytes() == paths[1].read_bytes()
    record(8, "deterministic verify reports", same and codes[0] == codes[1],
           f"{'identical' if same else 'different'} bytes ({paths[0].stat().st_size} each), exit codes {codes}")
