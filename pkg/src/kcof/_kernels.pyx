# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled int64 kernels; semantics identical to ``_kernels_py``.

Callers must pre-check that all values (and derived distances/cost sums) fit
in signed 64-bit integers; the ``_accel`` layer does this and falls back to
the pure-Python kernels otherwise.
"""

from libc.stdlib cimport free, malloc

ctypedef long long i64


cdef inline i64 _iabs(i64 x) noexcept nogil:
    return -x if x < 0 else x


cdef void _select_k(i64* d, i64* e, Py_ssize_t* idx, Py_ssize_t m, int k) noexcept nogil:
    # Partial selection sort: move the k smallest (d, e, idx) triples to the front.
    cdef Py_ssize_t t, q, mi
    cdef i64 td, te
    cdef Py_ssize_t ti
    for t in range(k):
        mi = t
        for q in range(t + 1, m):
            if d[q] < d[mi] or (
                d[q] == d[mi]
                and (e[q] < e[mi] or (e[q] == e[mi] and idx[q] < idx[mi]))
            ):
                mi = q
        if mi != t:
            td = d[t]; d[t] = d[mi]; d[mi] = td
            te = e[t]; e[t] = e[mi]; e[mi] = te
            ti = idx[t]; idx[t] = idx[mi]; idx[mi] = ti


cdef i64 _player_cost_c(
    i64* s, i64* zv, Py_ssize_t n, int k, Py_ssize_t i,
    i64* dbuf, i64* ebuf, Py_ssize_t* jbuf,
) noexcept nogil:
    cdef Py_ssize_t m = 0, j, t
    cdef i64 si = s[i], zi = zv[i], cost
    for j in range(n):
        if j == i:
            continue
        dbuf[m] = _iabs(zv[j] - si)
        ebuf[m] = _iabs(zv[j] - zi)
        jbuf[m] = j
        m += 1
    _select_k(dbuf, ebuf, jbuf, m, k)
    cost = _iabs(zi - si)
    for t in range(k):
        if ebuf[t] > cost:
            cost = ebuf[t]
    return cost


cdef i64 _social_cost_c(
    i64* s, i64* zv, Py_ssize_t n, int k,
    i64* dbuf, i64* ebuf, Py_ssize_t* jbuf,
) noexcept nogil:
    cdef Py_ssize_t i
    cdef i64 total = 0
    for i in range(n):
        total += _player_cost_c(s, zv, n, k, i, dbuf, ebuf, jbuf)
    return total


cdef struct _Scratch:
    i64* s
    i64* z
    i64* d
    i64* e
    Py_ssize_t* j


cdef int _alloc(Py_ssize_t n, _Scratch* sc) except -1:
    sc.s = <i64*> malloc(n * sizeof(i64))
    sc.z = <i64*> malloc(n * sizeof(i64))
    sc.d = <i64*> malloc(n * sizeof(i64))
    sc.e = <i64*> malloc(n * sizeof(i64))
    sc.j = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    if not (sc.s and sc.z and sc.d and sc.e and sc.j):
        _release(sc)
        raise MemoryError()
    return 0


cdef void _release(_Scratch* sc) noexcept:
    free(sc.s); free(sc.z); free(sc.d); free(sc.e); free(sc.j)


cdef void _load(object s, object z, Py_ssize_t n, _Scratch* sc):
    cdef Py_ssize_t i
    for i in range(n):
        sc.s[i] = s[i]
        sc.z[i] = z[i]


def player_cost(s, z, int k, Py_ssize_t i):
    cdef Py_ssize_t n = len(s)
    cdef _Scratch sc
    cdef i64 out
    _alloc(n, &sc)
    try:
        _load(s, z, n, &sc)
        out = _player_cost_c(sc.s, sc.z, n, k, i, sc.d, sc.e, sc.j)
    finally:
        _release(&sc)
    return out


def social_cost(s, z, int k):
    cdef Py_ssize_t n = len(s)
    cdef _Scratch sc
    cdef i64 out
    _alloc(n, &sc)
    try:
        _load(s, z, n, &sc)
        out = _social_cost_c(sc.s, sc.z, n, k, sc.d, sc.e, sc.j)
    finally:
        _release(&sc)
    return out


def first_unstable(s, z, int k):
    """-1 if every opinion is the exact midpoint best response, else the player."""
    cdef Py_ssize_t n = len(s)
    cdef _Scratch sc
    cdef Py_ssize_t i, m, j, t
    cdef i64 si, zi, lo, hi, v
    cdef Py_ssize_t out = -1
    _alloc(n, &sc)
    try:
        _load(s, z, n, &sc)
        for i in range(n):
            si = sc.s[i]
            zi = sc.z[i]
            m = 0
            for j in range(n):
                if j == i:
                    continue
                sc.d[m] = _iabs(sc.z[j] - si)
                sc.e[m] = _iabs(sc.z[j] - zi)
                sc.j[m] = j
                m += 1
            _select_k(sc.d, sc.e, sc.j, m, k)
            lo = si
            hi = si
            for t in range(k):
                v = sc.z[sc.j[t]]
                if v < lo:
                    lo = v
                if v > hi:
                    hi = v
            if 2 * zi != lo + hi:
                out = i
                break
    finally:
        _release(&sc)
    return out


def coordinate_best(s, z, int k, Py_ssize_t i, candidates):
    """Best (social cost, opinion) for player i over candidate opinions."""
    cdef Py_ssize_t n = len(s)
    cdef Py_ssize_t nc = len(candidates)
    cdef _Scratch sc
    cdef i64* cand = NULL
    cdef Py_ssize_t t
    cdef i64 best_cost = -1, best_y = 0, c
    _alloc(n, &sc)
    cand = <i64*> malloc(nc * sizeof(i64))
    if not cand:
        _release(&sc)
        raise MemoryError()
    try:
        _load(s, z, n, &sc)
        for t in range(nc):
            cand[t] = candidates[t]
        with nogil:
            for t in range(nc):
                sc.z[i] = cand[t]
                c = _social_cost_c(sc.s, sc.z, n, k, sc.d, sc.e, sc.j)
                if best_cost < 0 or c < best_cost or (c == best_cost and cand[t] < best_y):
                    best_cost = c
                    best_y = cand[t]
    finally:
        free(cand)
        _release(&sc)
    return best_cost, best_y
