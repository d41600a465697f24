import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from ecsring import kernels
from ecsring.kernels import available_backends

BACKENDS = available_backends()


def _pairs():
    return [(n, m) for n, m in BACKENDS.items() if n != "python"]


def test_backend_selected():
    assert kernels.BACKEND in BACKENDS
    assert "python" in BACKENDS


@pytest.mark.skipif(not _pairs(), reason="compiled extension not built")
@given(
    arrays(np.int64, st.tuples(st.integers(0, 6), st.integers(1, 3)), elements=st.integers(-9, 9)),
    st.integers(1, 13),
    st.data(),
)
def test_residues_parity(weights, q, data):
    r = weights.shape[1]
    points = data.draw(arrays(np.int64, st.tuples(st.integers(0, 5), st.just(r)), elements=st.integers(0, q - 1)))
    want = np.asarray(BACKENDS["python"].residues(weights, points, q))
    for _, mod in _pairs():
        assert np.array_equal(np.asarray(mod.residues(weights, points, q)), want)
    if len(weights) and len(points):
        assert np.array_equal(want, (points @ weights.T) % q)


@pytest.mark.skipif(not _pairs(), reason="compiled extension not built")
@given(
    arrays(np.int64, st.tuples(st.integers(0, 6), st.integers(0, 2)), elements=st.integers(-4, 4)),
    st.integers(1, 7),
    st.data(),
)
def test_scan_grid_parity(weights, q, data):
    n = len(weights)
    groups = np.array(data.draw(st.lists(st.integers(0, 2), min_size=n, max_size=n)), dtype=np.int64)
    ref = [np.asarray(x) for x in BACKENDS["python"].scan_grid(weights, groups, 3, q)]
    for _, mod in _pairs():
        got = [np.asarray(x) for x in mod.scan_grid(weights, groups, 3, q)]
        for a, b in zip(got, ref):
            assert np.array_equal(a, b)


def test_scan_grid_values():
    w = np.array([[1], [-1]], dtype=np.int64)
    grp = np.array([0, 1], dtype=np.int64)
    shift, fixed, prim = (np.asarray(x) for x in kernels.scan_grid(w, grp, 2, 4))
    assert shift[:, 0].tolist() == [0, 1, 2, 3]
    assert shift[:, 1].tolist() == [0, 3, 2, 1]
    assert fixed[:, 0].tolist() == [1, 0, 0, 0]
    assert prim.tolist() == [0, 1, 0, 1]


def test_orbit_closure_parity():
    gens = np.array([[[-1, 0], [1, 1]], [[1, 1], [0, -1]]], dtype=np.int64)
    start = np.array([1, 0], dtype=np.int64)
    ref = np.asarray(BACKENDS["python"].orbit_closure(gens, start, 3, 6))
    assert len(ref) == 3
    for _, mod in _pairs():
        assert np.array_equal(np.asarray(mod.orbit_closure(gens, start, 3, 6)), ref)
    with pytest.raises(OverflowError):
        kernels.orbit_closure(gens, start, 3, 2)


def test_env_forces_pure_python():
    import os
    import subprocess
    import sys

    env = dict(os.environ, ECSRING_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from ecsring import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
