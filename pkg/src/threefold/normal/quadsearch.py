"""Admissible fundamental solutions by enumerating quadrilateral vectors.

Fix the quadrilateral coordinates q of an admissible solution.  The matching
equations then read T(x) - T(y) = c(q) for pairs of triangle corners x, y
joined across a face, and the corners of one vertex class form a connected
graph, so the triangle coordinates are determined up to adding vertex links.
Write T0(q) for the completion whose minimum over every vertex class is zero.

Every fundamental solution is either a vertex link or of the form
(T0(q), q): if some vertex class had positive minimum, its link could be
split off.  A vector (T0(q), q) is fundamental exactly when no other such
vector (T0(q'), q') with q' <= q lies below it, because any solution below it
with the same quadrilaterals differs from it by vertex links, which would
push some class minimum below zero.  So it suffices to list all admissible q
whose completion has l1 norm within the bound, then keep the minimal vectors
together with the vertex links.

None of this uses the quadrilateral condition, so the same search run over
arbitrary quadrilateral triples per tetrahedron yields the fundamental
solutions of the whole cone.
"""
from __future__ import annotations

from ..errors import BoundTooLargeForDeskScale
from ..kernels import dominates_any
from .coords import MatchingSystem, quad_type, vertex_link_vectors

DEFAULT_NODE_BUDGET = 5_000_000


class _Potentials:
    """Weighted union-find with undo: value(x) = value(root) + pot(x)."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.pot = [0] * n
        self.size = [1] * n
        self.history = []

    def find(self, x):
        p = 0
        while self.parent[x] != x:
            p += self.pot[x]
            x = self.parent[x]
        return x, p

    def add(self, u, w, c) -> bool:
        """Impose value(u) - value(w) = c; False on contradiction."""
        ru, pu = self.find(u)
        rw, pw = self.find(w)
        if ru == rw:
            self.history.append(None)
            return pu - pw == c
        # value(ru) - value(rw) = c - pu + pw
        d = c - pu + pw
        if self.size[ru] < self.size[rw]:
            ru, rw, d = rw, ru, -d
        self.parent[rw] = ru
        self.pot[rw] = -d
        self.size[ru] += self.size[rw]
        self.history.append((ru, rw))
        return True

    def undo(self, k):
        for _ in range(k):
            h = self.history.pop()
            if h is not None:
                ru, rw = h
                self.parent[rw] = rw
                self.pot[rw] = 0
                self.size[ru] -= self.size[rw]

    def spread(self) -> int:
        """Sum over components of (value - component minimum)."""
        lo = {}
        vals = []
        for x in range(len(self.parent)):
            r, p = self.find(x)
            vals.append((r, p))
            if r not in lo or p < lo[r]:
                lo[r] = p
        return sum(p - lo[r] for r, p in vals)


def _triples(limit):
    """Nonzero quadrilateral triples with sum at most ``limit``, by sum."""
    out = []
    for total in range(1, limit + 1):
        for a in range(total, -1, -1):
            for b in range(total - a, -1, -1):
                out.append((a, b, total - a - b))
    return out


def quad_fundamental(
    sys: MatchingSystem,
    norm_bound: int,
    budget: int = DEFAULT_NODE_BUDGET,
    admissible_only: bool = True,
) -> list[tuple]:
    """Fundamental solutions with l1 norm at most ``norm_bound``.

    With ``admissible_only`` (the default) only vectors with at most one
    quadrilateral type per tetrahedron are searched, which gives the
    admissible fundamental solutions.
    """
    tri = sys.tri
    t = tri.tetra_count
    n = 7 * t
    if norm_bound < 1:
        return []
    # equations T(i,a) - T(j,sa) = Q_j(...) - Q_i(...), grouped by the later tetrahedron
    eqs = [[] for _ in range(t)]
    for i, row in enumerate(tri.gluings):
        for f, e in enumerate(row):
            if e is None:
                continue
            j, s = e
            if (j, s[f]) < (i, f):
                continue
            for a in range(4):
                if a == f:
                    continue
                eqs[max(i, j)].append((i, a, quad_type(a, f), j, s[a], quad_type(s[a], s[f])))
    links = [tuple(v) for v in vertex_link_vectors(tri)]
    uf = _Potentials(4 * t)
    quad = [None] * t  # quadrilateral triple per tetrahedron
    found = []
    nodes = [0]

    def qval(i, q):
        c = quad[i]
        return 0 if c is None else c[q]

    def emit():
        vals = [uf.find(x) for x in range(4 * t)]
        lo = {}
        for r, p in vals:
            if r not in lo or p < lo[r]:
                lo[r] = p
        v = [0] * n
        for x, (r, p) in enumerate(vals):
            i, a = divmod(x, 4)
            v[7 * i + a] = p - lo[r]
        for i, c in enumerate(quad):
            if c is not None:
                v[7 * i + 4 : 7 * i + 7] = c
        if sum(v) <= norm_bound:
            found.append(tuple(v))

    def dfs(k, qsum):
        nodes[0] += 1
        if nodes[0] > budget:
            raise BoundTooLargeForDeskScale(f"more than {budget} quadrilateral assignments explored")
        if k == t:
            if qsum:
                emit()
            return
        left = norm_bound - qsum
        if admissible_only:
            choices = [None] + [tuple(m if r == q else 0 for r in range(3)) for q in range(3) for m in range(1, left + 1)]
        else:
            choices = [None] + _triples(left)
        for ch in choices:
            quad[k] = ch
            added = 0
            ok = True
            for i, a, qa, j, b, qb in eqs[k]:
                added += 1
                if not uf.add(4 * i + a, 4 * j + b, qval(j, qb) - qval(i, qa)):
                    ok = False
                    break
            if ok:
                extra = sum(ch) if ch else 0
                if qsum + extra + uf.spread() <= norm_bound:
                    dfs(k + 1, qsum + extra)
            uf.undo(added)
        quad[k] = None

    dfs(0, 0)
    cands = sorted(set(found), key=lambda v: (sum(v), v))
    pool = [v for v in links if sum(v) <= norm_bound]
    out = list(pool)
    for v in cands:
        if not dominates_any(v, pool):
            out.append(v)
        pool.append(v)
    return sorted(set(out))


def admissible_fundamental(sys: MatchingSystem, norm_bound: int, budget: int = DEFAULT_NODE_BUDGET) -> list[tuple]:
    """All admissible fundamental solutions with l1 norm at most ``norm_bound``."""
    return quad_fundamental(sys, norm_bound, budget, admissible_only=True)
