from functools import lru_cache

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ecsring.root_datum import build_root_datum
from ecsring.torus import CommutingTuple, TorusElement
from ecsring.weights import WeightRep

settings.register_profile(
    "default",
    deadline=None,
    max_examples=80,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

LABELS = ("A1", "A2", "B2", "G2", "A1xA1")


@lru_cache(maxsize=None)
def datum(label):
    return build_root_datum(label)


@st.composite
def elements(draw, rank, max_order=12):
    q = draw(st.integers(1, max_order))
    nums = draw(st.lists(st.integers(0, q - 1), min_size=rank, max_size=rank))
    return TorusElement.from_numerators(nums, q)


@st.composite
def tuples(draw, rank, m, max_order=12):
    return CommutingTuple([draw(elements(rank, max_order)) for _ in range(m)])


@st.composite
def reps(draw, rank, max_lines=8, bound=3):
    vec = st.tuples(*[st.integers(-bound, bound)] * rank) if rank else st.just(())
    lines = draw(st.lists(vec, min_size=1, max_size=max_lines))
    return WeightRep(lines, rank=rank)


@st.composite
def datum_rep_tuple(draw, m, labels=LABELS):
    rd = datum(draw(st.sampled_from(labels)))
    return rd, draw(reps(rd.rank)), draw(tuples(rd.rank, m))


# one line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
