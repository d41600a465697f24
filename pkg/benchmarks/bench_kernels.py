"""Time the compiled and pure-Python kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from ecsring.kernels import available_backends
from ecsring.gkm import projective_space
from ecsring.root_datum import build_root_datum


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases():
    g = projective_space(3)
    lines, groups = [], []
    for v, rep in enumerate(g.tangent):
        for lam, m in rep.lines:
            lines += [lam] * m
            groups += [v] * m
    w = np.array(lines, dtype=np.int64)
    grp = np.array(groups, dtype=np.int64)
    yield "scan_grid CP3 q=24", lambda k: k.scan_grid(w, grp, g.nvertices, 24)

    rng = np.random.default_rng(0)
    weights = rng.integers(-5, 6, size=(64, 4)).astype(np.int64)
    points = rng.integers(0, 60, size=(5000, 4)).astype(np.int64)
    yield "residues 64x5000", lambda k: k.residues(weights, points, 60)

    rd = build_root_datum("B4")
    gens = np.array(rd.weyl_generators, dtype=np.int64)
    start = np.array([1, 2, 3, 5], dtype=np.int64)
    yield "orbit_closure B4", lambda k: k.orbit_closure(gens, start, 60, rd.weyl_order)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = available_backends()
    print(f"{'case':<22}" + "".join(f"{name:>12}" for name in backends) + f"{'speedup':>10}")
    for name, fn in cases():
        times = {b: _best(lambda: fn(mod), args.repeat) for b, mod in backends.items()}
        row = f"{name:<22}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times.values())
        if "cython" in times:
            row += f"{times['python'] / times['cython']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
