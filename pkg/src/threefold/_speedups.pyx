# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the kernels in ``_kernels_py``; same signatures and results."""

from libc.stdlib cimport free, malloc

from ._kernels_py import COMP as _COMP, IMG as _IMG, INV as _INV

cdef int COMP[24][24]
cdef int INV[24]
cdef int IMG[24][4]

cdef int _a, _b
for _a in range(24):
    INV[_a] = _INV[_a]
    for _b in range(24):
        COMP[_a][_b] = _COMP[_a][_b]
    for _b in range(4):
        IMG[_a][_b] = _IMG[_a][_b]


def canonical_key(J, S, int start, int pi, best):
    """Breadth-first relabeling of one component from ``(start, pi)``."""
    cdef int t = len(J) // 4
    cdef int m = 4 * t
    cdef int *cj = <int *> malloc(m * sizeof(int))
    cdef int *cs = <int *> malloc(m * sizeof(int))
    cdef int *idx = <int *> malloc(t * sizeof(int))
    cdef int *pidx = <int *> malloc(t * sizeof(int))
    cdef int *order = <int *> malloc(t * sizeof(int))
    cdef int *key = <int *> malloc(m * sizeof(int))
    cdef int *cb = NULL
    cdef int nbest = 0
    cdef int k, n, i, nf, f, j, s, v, pi_i, inv_i, count, pos
    cdef bint tight = best is not None
    if not (cj and cs and idx and pidx and order and key):
        free(cj); free(cs); free(idx); free(pidx); free(order); free(key)
        raise MemoryError()
    try:
        for k in range(m):
            cj[k] = J[k]
            cs[k] = S[k]
        if tight:
            nbest = len(best)
            cb = <int *> malloc(nbest * sizeof(int))
            if not cb:
                raise MemoryError()
            for k in range(nbest):
                cb[k] = best[k]
        for k in range(t):
            idx[k] = -1
            pidx[k] = 0
        idx[start] = 0
        pidx[start] = pi
        order[0] = start
        count = 1
        pos = 0
        n = 0
        while n < count:
            i = order[n]
            pi_i = pidx[i]
            inv_i = INV[pi_i]
            for nf in range(4):
                f = IMG[inv_i][nf]
                j = cj[4 * i + f]
                if j < 0:
                    v = -1
                else:
                    s = cs[4 * i + f]
                    if idx[j] < 0:
                        idx[j] = count
                        order[count] = j
                        count += 1
                        pidx[j] = COMP[pi_i][INV[s]]
                    v = 24 * idx[j] + COMP[pidx[j]][COMP[s][inv_i]]
                if tight and pos < nbest:
                    if v > cb[pos]:
                        return None
                    if v < cb[pos]:
                        tight = False
                key[pos] = v
                pos += 1
            n += 1
        return (
            [key[k] for k in range(pos)],
            [order[k] for k in range(count)],
            [pidx[order[k]] for k in range(count)],
        )
    finally:
        free(cj); free(cs); free(idx); free(pidx); free(order); free(key)
        if cb:
            free(cb)


def dominates(a, b):
    """True when a >= b coordinatewise."""
    cdef Py_ssize_t k, n = min(len(a), len(b))
    for k in range(n):
        if <long> a[k] < <long> b[k]:
            return False
    return True


def dominates_any(a, sols):
    """True when ``a`` is coordinatewise at least one of ``sols``."""
    cdef Py_ssize_t k, n = len(a)
    cdef long *ca = <long *> malloc(n * sizeof(long))
    cdef bint ok
    if not ca:
        raise MemoryError()
    try:
        for k in range(n):
            ca[k] = a[k]
        for b in sols:
            ok = True
            for k in range(min(n, len(b))):
                if ca[k] < <long> b[k]:
                    ok = False
                    break
            if ok:
                return True
        return False
    finally:
        free(ca)
