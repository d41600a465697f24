"""Pure-Python twin of the compiled kernels in ``_kernels.pyx``."""

from collections import deque
from math import gcd

import numpy as np


def residues(weights, points, modulus):
    w = np.asarray(weights, dtype=np.int64).tolist()
    p = np.asarray(points, dtype=np.int64).tolist()
    if modulus <= 0:
        raise ValueError("modulus must be positive")
    if w and p and len(w[0]) != len(p[0]):
        raise ValueError("weights and points have different ranks")
    out = [[sum(a * b for a, b in zip(lam, pt)) % modulus for lam in w] for pt in p]
    return np.array(out, dtype=np.int64).reshape(len(p), len(w))


def scan_grid(weights, groups, n_groups, q):
    w_arr = np.asarray(weights, dtype=np.int64)
    w = w_arr.tolist()
    grp = np.asarray(groups, dtype=np.int64).tolist()
    r = w_arr.shape[1] if w_arr.ndim == 2 else 0
    if len(grp) != len(w):
        raise ValueError("one group index per weight line is required")
    if q <= 0:
        raise ValueError("q must be positive")
    K = q**r
    if K > 50_000_000:
        raise ValueError("grid too large")
    shift = [[0] * n_groups for _ in range(K)]
    fixed = [[0] * n_groups for _ in range(K)]
    prim = [0] * K
    for k in range(K):
        pt = []
        rem = k
        for _ in range(r):
            pt.append(rem % q)
            rem //= q
        pt.reverse()
        g = q
        for c in pt:
            g = gcd(g, c)
        prim[k] = 1 if g == 1 else 0
        row_s, row_f = shift[k], fixed[k]
        for lam, gi in zip(w, grp):
            acc = sum(a * b for a, b in zip(lam, pt)) % q
            row_s[gi] += acc
            if acc == 0:
                row_f[gi] += 1
    return (
        np.array(shift, dtype=np.int64).reshape(K, n_groups),
        np.array(fixed, dtype=np.int64).reshape(K, n_groups),
        np.array(prim, dtype=np.uint8),
    )


def orbit_closure(gens, start, modulus, bound):
    mats = np.asarray(gens, dtype=np.int64).tolist()
    first = tuple(int(c) % modulus for c in np.asarray(start, dtype=np.int64).tolist())
    r = len(first)
    for m in mats:
        if len(m) != r or any(len(row) != r for row in m):
            raise ValueError("generator shape does not match the point rank")
    order = [first]
    seen = {first}
    queue = deque([first])
    while queue:
        pt = queue.popleft()
        for m in mats:
            key = tuple(sum(a * b for a, b in zip(row, pt)) % modulus for row in m)
            if key not in seen:
                seen.add(key)
                order.append(key)
                queue.append(key)
                if len(order) > bound:
                    raise OverflowError("orbit exceeds bound %d" % bound)
    return np.array(order, dtype=np.int64).reshape(len(order), r)
