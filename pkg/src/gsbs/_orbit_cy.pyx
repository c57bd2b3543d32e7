# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: cdivision=True
"""Compiled twisted-conjugacy orbit kernel.

Same contract as _orbit_py.twisted_orbit_count; see that module for the node
layout and the conjugation formula. Callers guarantee mod < 2**31 and all
torsion inputs reduced into [0, mod), so every intermediate product fits in
a signed 64-bit integer.
"""

from libc.stdlib cimport calloc, free, malloc


cdef inline long long uf_find(long long* parent, long long v) noexcept nogil:
    while parent[v] != v:
        parent[v] = parent[parent[v]]
        v = parent[v]
    return v


def twisted_orbit_count(int r, long long mod, int be, int inner, long long mu,
                        pinv, dvecs, avals, tvals):
    cdef long long[::1] pinv_v = pinv
    cdef long long[::1] d_v = dvecs
    cdef long long[::1] a_v = avals
    cdef long long[::1] t_v = tvals

    cdef Py_ssize_t n_rows = a_v.shape[0]
    cdef long long side = 2 * be + 1
    cdef long long n_y = 1
    cdef int i
    for i in range(r):
        n_y *= side
    cdef long long n_nodes = n_y * mod

    cdef long long* parent = <long long*> malloc(n_nodes * sizeof(long long))
    cdef int* coords = <int*> malloc(n_y * r * sizeof(int))
    cdef long long* strides = <long long*> malloc(r * sizeof(long long))
    cdef long long* m2s = <long long*> malloc(mod * sizeof(long long))
    cdef int* cur = <int*> malloc(r * sizeof(int))
    cdef char* seen = <char*> calloc(n_nodes, 1)
    if (parent == NULL or coords == NULL or strides == NULL or m2s == NULL
            or cur == NULL or seen == NULL):
        free(parent); free(coords); free(strides); free(m2s); free(cur); free(seen)
        raise MemoryError()

    cdef long long idx, v, a, t, off, m2, base, tp, n1, n2, ra, rb, pv, l, theta
    cdef long long count = 0
    cdef Py_ssize_t row
    cdef int ok, di, inside

    with nogil:
        for v in range(n_nodes):
            parent[v] = v
        strides[0] = 1
        for i in range(1, r):
            strides[i] = strides[i - 1] * side
        for i in range(r):
            cur[i] = -be
        for idx in range(n_y):
            for i in range(r):
                coords[idx * r + i] = cur[i]
            for i in range(r):
                if cur[i] < be:
                    cur[i] += 1
                    break
                cur[i] = -be

        for row in range(n_rows):
            a = a_v[row]
            t = t_v[row]
            ok = 1
            off = 0
            for i in range(r):
                di = <int> d_v[row * r + i]
                if di > 2 * be or di < -2 * be:
                    ok = 0
                    break
                off += di * strides[i]
            if not ok:
                continue
            off *= mod
            for l in range(mod):
                m2s[l] = (t + mu * l) % mod
            for idx in range(n_y):
                inside = 1
                for i in range(r):
                    di = coords[idx * r + i] + <int> d_v[row * r + i]
                    if di > be or di < -be:
                        inside = 0
                        break
                if not inside:
                    continue
                pv = pinv_v[idx]
                n1 = idx * mod
                n2 = n1 + off
                for l in range(mod):
                    base = (a * ((pv * l + mod - m2s[l]) % mod)) % mod
                    tp = base
                    for theta in range(mod):
                        ra = uf_find(parent, n1 + theta)
                        rb = uf_find(parent, n2 + tp)
                        if ra != rb:
                            parent[rb] = ra
                        tp += a
                        if tp >= mod:
                            tp -= mod

        for idx in range(n_y):
            inside = 1
            for i in range(r):
                di = coords[idx * r + i]
                if di > inner or di < -inner:
                    inside = 0
                    break
            if not inside:
                continue
            n1 = idx * mod
            for theta in range(mod):
                ra = uf_find(parent, n1 + theta)
                if not seen[ra]:
                    seen[ra] = 1
                    count += 1

    free(parent); free(coords); free(strides); free(m2s); free(cur); free(seen)
    return count
