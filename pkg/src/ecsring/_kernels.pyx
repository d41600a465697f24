# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer kernels.

All torus points are passed as integer numerators over a shared modulus, so
every pairing is exact integer arithmetic. The pure-Python twin lives in
``_kernels_py.py`` and must stay output-identical.
"""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


cdef inline i64 _mod(i64 a, i64 n) nogil:
    cdef i64 r = a % n
    if r < 0:
        r += n
    return r


cdef i64 _gcd(i64 a, i64 b) nogil:
    cdef i64 t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


def residues(weights, points, long long modulus):
    """``out[k, l] = <weights[l], points[k]> mod modulus``."""
    cdef i64[:, ::1] w = np.ascontiguousarray(weights, dtype=np.int64)
    cdef i64[:, ::1] p = np.ascontiguousarray(points, dtype=np.int64)
    cdef Py_ssize_t L = w.shape[0], K = p.shape[0], r = w.shape[1]
    if p.shape[1] != r:
        raise ValueError("weights and points have different ranks")
    if modulus <= 0:
        raise ValueError("modulus must be positive")
    out_arr = np.empty((K, L), dtype=np.int64)
    cdef i64[:, ::1] out = out_arr
    cdef Py_ssize_t k, l, j
    cdef i64 acc
    with nogil:
        for k in range(K):
            for l in range(L):
                acc = 0
                for j in range(r):
                    acc += _mod(w[l, j] * p[k, j], modulus)
                out[k, l] = acc % modulus
    return out_arr


def scan_grid(weights, groups, long long n_groups, long long q):
    """Scan every point of (Z/q)^r in lexicographic order.

    Returns ``(shift_num, fixed, primitive)`` where ``shift_num[k, g]`` sums
    the residues of the lines in group ``g``, ``fixed[k, g]`` counts the lines
    of group ``g`` with residue zero and ``primitive[k]`` is 1 iff the point
    has order exactly ``q``.
    """
    cdef i64[:, ::1] w = np.ascontiguousarray(weights, dtype=np.int64)
    cdef i64[::1] grp = np.ascontiguousarray(groups, dtype=np.int64)
    cdef Py_ssize_t L = w.shape[0], r = w.shape[1]
    if grp.shape[0] != L:
        raise ValueError("one group index per weight line is required")
    if q <= 0:
        raise ValueError("q must be positive")
    cdef Py_ssize_t K = 1, j
    for j in range(r):
        K *= q
        if K > 50_000_000:
            raise ValueError("grid too large")
    shift_arr = np.zeros((K, n_groups), dtype=np.int64)
    fixed_arr = np.zeros((K, n_groups), dtype=np.int64)
    prim_arr = np.zeros(K, dtype=np.uint8)
    cdef i64[:, ::1] shift = shift_arr
    cdef i64[:, ::1] fixed = fixed_arr
    cdef cnp.uint8_t[::1] prim = prim_arr
    cdef i64[::1] pt = np.zeros(max(r, 1), dtype=np.int64)
    cdef Py_ssize_t k, l
    cdef i64 acc, g, rem
    with nogil:
        for k in range(K):
            rem = k
            for j in range(r - 1, -1, -1):
                pt[j] = rem % q
                rem = rem // q
            g = q
            for j in range(r):
                g = _gcd(g, pt[j])
            prim[k] = 1 if g == 1 else 0
            for l in range(L):
                acc = 0
                for j in range(r):
                    acc += w[l, j] * pt[j]
                acc = _mod(acc, q)
                shift[k, grp[l]] += acc
                if acc == 0:
                    fixed[k, grp[l]] += 1
    return shift_arr, fixed_arr, prim_arr


def orbit_closure(gens, start, long long modulus, long long bound):
    """Orbit of ``start`` under integer matrices acting on (Z/modulus)^r.

    Points are returned in breadth-first discovery order. Raises
    ``OverflowError`` once more than ``bound`` points have been found.
    """
    cdef i64[:, :, ::1] m = np.ascontiguousarray(gens, dtype=np.int64)
    cdef i64[::1] s = np.ascontiguousarray(start, dtype=np.int64)
    cdef Py_ssize_t G = m.shape[0], r = s.shape[0]
    if G and (m.shape[1] != r or m.shape[2] != r):
        raise ValueError("generator shape does not match the point rank")
    cdef list order = []
    cdef set seen = set()
    cdef Py_ssize_t head = 0, a, i, j
    cdef i64 acc
    cdef i64[::1] cur
    cdef i64[::1] nxt = np.empty(r, dtype=np.int64)
    first = tuple(_mod(s[i], modulus) for i in range(r))
    seen.add(first)
    order.append(first)
    cur = np.empty(r, dtype=np.int64)
    while head < len(order):
        pt = order[head]
        head += 1
        for i in range(r):
            cur[i] = pt[i]
        for a in range(G):
            for i in range(r):
                acc = 0
                for j in range(r):
                    acc += m[a, i, j] * cur[j]
                nxt[i] = _mod(acc, modulus)
            key = tuple(nxt[i] for i in range(r))
            if key not in seen:
                seen.add(key)
                order.append(key)
                if len(order) > bound:
                    raise OverflowError("orbit exceeds bound %d" % bound)
    return np.array(order, dtype=np.int64).reshape(len(order), r)
