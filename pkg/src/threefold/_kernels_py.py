"""Pure-Python hot kernels.

``_speedups.pyx`` implements the same functions with the same signatures;
:mod:`threefold.kernels` picks one at import time.  Both operate on flat
integer lists so that neither needs to know about the public data types.
"""
from __future__ import annotations

from itertools import permutations

PERMS = list(permutations(range(4)))
_INDEX = {p: k for k, p in enumerate(PERMS)}
# COMP[a][b] is the index of PERMS[a] o PERMS[b]
COMP = [[_INDEX[tuple(pa[pb[k]] for k in range(4))] for pb in PERMS] for pa in PERMS]
INV = [_INDEX[tuple(p.index(k) for k in range(4))] for p in PERMS]
IMG = [list(p) for p in PERMS]


def canonical_key(J, S, start, pi, best):
    """Breadth-first relabeling of one component from ``(start, pi)``.

    ``J[4*i+f]`` is the neighbour across face f of tetrahedron i (or -1) and
    ``S[4*i+f]`` the index of the gluing permutation.  Entries of the key are
    ``24*j + perm`` in the new labels, or -1 for a boundary face.  When
    ``best`` is a key and the key being built becomes larger, the walk stops
    and ``None`` is returned.  Otherwise returns ``(key, order, perm_indices)``
    where ``order[n]`` is the old tetrahedron given label n.
    """
    t = len(J) // 4
    idx = [-1] * t
    pidx = [0] * t
    idx[start] = 0
    pidx[start] = pi
    order = [start]
    key = []
    pos = 0
    tight = best is not None
    n = 0
    while n < len(order):
        i = order[n]
        pi_i = pidx[i]
        inv_i = INV[pi_i]
        img_inv = IMG[inv_i]
        for nf in range(4):
            f = img_inv[nf]
            j = J[4 * i + f]
            if j < 0:
                v = -1
            else:
                s = S[4 * i + f]
                if idx[j] < 0:
                    idx[j] = len(order)
                    order.append(j)
                    pidx[j] = COMP[pi_i][INV[s]]
                v = 24 * idx[j] + COMP[pidx[j]][COMP[s][inv_i]]
            if tight:
                b = best[pos]
                if v > b:
                    return None
                if v < b:
                    tight = False
            key.append(v)
            pos += 1
        n += 1
    return key, order, [pidx[i] for i in order]


def dominates(a, b) -> bool:
    """True when a >= b coordinatewise."""
    for x, y in zip(a, b):
        if x < y:
            return False
    return True


def dominates_any(a, sols) -> bool:
    """True when ``a`` is coordinatewise at least one of ``sols``."""
    for b in sols:
        for x, y in zip(a, b):
            if x < y:
                break
        else:
            return True
    return False
