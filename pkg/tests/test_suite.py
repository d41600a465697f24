from fractions import Fraction as F

import pytest

from conftest import datum
from ecsring.suite import (
    DEFAULT_SUITE,
    Instance,
    SuiteError,
    build_instances,
    elements_up_to,
    evaluate,
    resolve_suite,
    run_suite,
    shrink,
    summarize,
)
from ecsring.torus import TorusElement
from ecsring.weights import WeightRep


def test_empty_suite_runs_nothing():
    assert run_suite(resolve_suite({}), seed=0) == []
    assert summarize([]) == {"instances": 0, "passed": 0, "failed": 0, "checks": 0}


def test_default_suite_shape():
    suite = resolve_suite(None)
    assert [rd.label for rd in suite["root_data"]] == list(DEFAULT_SUITE["root_data"])
    assert [name for name, _, _ in suite["gkm_spaces"]] == ["CP1", "CP2"]


@pytest.mark.parametrize(
    "suite",
    [
        {"checks": {"nope": 1}},
        {"checks": {"ssn": -1}},
        {"checks": []},
        {"max_order": 0},
        {"max_order": 13},
        {"root_data": ["A5"]},
        {"gkm_spaces": ["S2"]},
    ],
)
def test_bad_suites(suite):
    with pytest.raises((SuiteError, ValueError)):
        resolve_suite(suite)


def test_elements_up_to_counts():
    # number of points of exact order q in (Q/Z)^2 is J_2(q) = q^2 prod (1 - p^-2)
    pts = list(elements_up_to(2, 4))
    assert len(pts) == 1 + 3 + 8 + 12
    assert len(set(pts)) == len(pts)


def test_instances_are_seeded():
    suite = resolve_suite({"root_data": ["A2"], "checks": {"assoc": 5, "ssn": 5}})
    a = [i.to_json() for i in build_instances(suite, 3)]
    b = [i.to_json() for i in build_instances(suite, 3)]
    c = [i.to_json() for i in build_instances(suite, 4)]
    assert a == b and a != c


def test_levi_counterexample_is_reported():
    suite = resolve_suite({"root_data": ["B2"], "checks": {"levi": 2}})
    (res,) = run_suite(suite, seed=0)
    assert (res.instances, res.failed) == (4, 2)
    assert {tuple(c["elements"][0]) for c in res.counterexamples} == {("1/2", "0"), ("1/2", "1/2")}
    assert all(c["error"].startswith("no regular point") for c in res.counterexamples)


def test_evaluate_catches_errors():
    inst = Instance("ssn", "A1", datum("A1"), WeightRep.of((1,)), (TorusElement((F(1, 2),)),))
    assert evaluate(inst) == (True, None)
    broken = Instance("ssn", "A1", datum("A1"), WeightRep.of((1, 2)), (TorusElement((F(1, 2),)),))
    ok, detail = evaluate(broken)
    assert not ok and detail


def test_shrink_keeps_failure_and_reduces():
    # rank-2 weights against a rank-1 element fail whatever lines remain
    inst = Instance("ssn", "A1", datum("A1"), WeightRep.of((1, 2), (2, 1), (0, 3)), (TorusElement((F(1, 2),)),))
    assert not evaluate(inst)[0]
    small = shrink(inst)
    assert not evaluate(small)[0]
    assert small.rep.dim < inst.rep.dim


def test_parallel_matches_serial():
    suite = resolve_suite({"root_data": ["A1", "B2"], "checks": {"assoc": 10, "parity": 10, "levi": 3}})
    ser = [r.to_json() for r in run_suite(suite, 1)]
    par = [r.to_json() for r in run_suite(suite, 1, jobs=3)]
    assert ser == par
