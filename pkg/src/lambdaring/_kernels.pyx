# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled finite-map and table kernels; same API as _kernels_py."""

from libc.stdlib cimport malloc, free


cdef int* _carray(seq, Py_ssize_t n) except NULL:
    cdef int* out = <int*> malloc((n if n > 0 else 1) * sizeof(int))
    cdef Py_ssize_t i
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        out[i] = seq[i]
    return out


cdef int* _ctable(rows, Py_ssize_t n, Py_ssize_t m) except NULL:
    cdef int* out = <int*> malloc((n * m if n * m > 0 else 1) * sizeof(int))
    cdef Py_ssize_t i, j
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        row = rows[i]
        for j in range(m):
            out[i * m + j] = row[j]
    return out


def identity_map(Py_ssize_t n):
    return list(range(n))


def compose(f, g):
    cdef Py_ssize_t n = len(g), i
    cdef int* cf = _carray(f, len(f))
    cdef int* cg = _carray(g, n)
    try:
        return [cf[cg[i]] for i in range(n)]
    finally:
        free(cf)
        free(cg)


def commutes(f, g):
    cdef Py_ssize_t n = len(f), i
    cdef int* cf = _carray(f, n)
    cdef int* cg = _carray(g, n)
    try:
        for i in range(n):
            if cf[cg[i]] != cg[cf[i]]:
                return False
        return True
    finally:
        free(cf)
        free(cg)


def image(f, subset):
    return sorted({f[s] for s in subset})


def stable_image(f):
    cdef Py_ssize_t n = len(f), i
    cdef int steps = 0, changed
    cdef int* cf = _carray(f, n)
    cdef char* cur = <char*> malloc(n if n > 0 else 1)
    cdef char* nxt = <char*> malloc(n if n > 0 else 1)
    try:
        for i in range(n):
            cur[i] = 1
        while True:
            for i in range(n):
                nxt[i] = 0
            for i in range(n):
                if cur[i]:
                    nxt[cf[i]] = 1
            changed = 0
            for i in range(n):
                if nxt[i] != cur[i]:
                    changed = 1
                    break
            if not changed:
                return [i for i in range(n) if cur[i]], steps
            for i in range(n):
                cur[i] = nxt[i]
            steps += 1
    finally:
        free(cf)
        free(cur)
        free(nxt)


def map_power(f, long k):
    cdef Py_ssize_t n = len(f), i
    cdef long j
    cdef int* cf = _carray(f, n)
    cdef int* out = <int*> malloc((n if n > 0 else 1) * sizeof(int))
    try:
        for i in range(n):
            out[i] = i
        for j in range(k):
            for i in range(n):
                out[i] = cf[out[i]]
        return [out[i] for i in range(n)]
    finally:
        free(cf)
        free(out)


def action_hom_failure(table, rho):
    cdef Py_ssize_t n = len(table), x, y, s
    cdef Py_ssize_t m = len(rho[0]) if n else 0
    cdef int* t = _ctable(table, n, n)
    cdef int* r = _ctable(rho, n, m)
    cdef int* rx
    cdef int* ry
    cdef int* rxy
    try:
        for x in range(n):
            rx = r + x * m
            for y in range(n):
                ry = r + y * m
                rxy = r + t[x * n + y] * m
                for s in range(m):
                    if rxy[s] != rx[ry[s]]:
                        return (x, y)
        return None
    finally:
        free(t)
        free(r)


def table_hom_failure(t1, t2, phi):
    cdef Py_ssize_t n = len(t1), m = len(t2), x, y
    cdef int* a = _ctable(t1, n, n)
    cdef int* b = _ctable(t2, m, m)
    cdef int* p = _carray(phi, n)
    try:
        for x in range(n):
            for y in range(n):
                if p[a[x * n + y]] != b[p[x] * m + p[y]]:
                    return (x, y)
        return None
    finally:
        free(a)
        free(b)
        free(p)
