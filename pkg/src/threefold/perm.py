"""Permutations of {0, 1, 2, 3} stored as 4-tuples (image of 0, 1, 2, 3)."""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations

Perm = tuple

IDENTITY: Perm = (0, 1, 2, 3)
ALL_PERMS: list[Perm] = list(permutations(range(4)))
PERM_INDEX = {p: k for k, p in enumerate(ALL_PERMS)}


def compose(p: Perm, q: Perm) -> Perm:
    """Return p after q, i.e. k -> p[q[k]]."""
    return (p[q[0]], p[q[1]], p[q[2]], p[q[3]])


def inverse(p: Perm) -> Perm:
    inv = [0, 0, 0, 0]
    for k, v in enumerate(p):
        inv[v] = k
    return tuple(inv)


def sign(p) -> int:
    """Parity of an arbitrary permutation of range(len(p))."""
    return _sign(tuple(p))


@lru_cache(maxsize=None)
def _sign(p) -> int:
    p = list(p)
    s = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def transposition(a: int, b: int) -> Perm:
    p = list(IDENTITY)
    p[a], p[b] = b, a
    return tuple(p)


def to_string(p: Perm) -> str:
    return "".join(str(k) for k in p)


def from_string(s: str) -> Perm:
    if len(s) != 4 or sorted(s) != ["0", "1", "2", "3"]:
        raise ValueError(f"not a permutation of 0123: {s!r}")
    return tuple(int(c) for c in s)


@lru_cache(maxsize=None)
def sub_parity(p: Perm, face: int) -> int:
    """Parity of p restricted to the three vertices other than `face`.

    Both the source and target triples are read in increasing order, so the
    result is the sign of the induced bijection of positions {0, 1, 2}.
    """
    src = [v for v in range(4) if v != face]
    dst = sorted(p[v] for v in src)
    return sign([dst.index(p[v]) for v in src])
