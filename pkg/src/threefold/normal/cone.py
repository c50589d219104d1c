"""Extreme rays and the Hilbert basis of the normal solution cone.

The cone is C = {v >= 0 : A v = 0}.  Vertex solutions (extreme rays) come
from the double description method; fundamental solutions (the minimal
nonzero lattice points of C, i.e. those that are not the sum of two nonzero
solutions) come from the Contejean-Devie completion procedure.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from ..errors import BoundTooLargeForDeskScale
from ..kernels import dominates_any
from .coords import MatchingSystem
from .quadsearch import DEFAULT_NODE_BUDGET, quad_fundamental

DEFAULT_BUDGET = 2_000_000


def _primitive(v: list[int]) -> tuple:
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _kernel_basis(rows, n):
    """Integer basis of {x : rows x = 0}, one vector per free column.

    Returns ``(free, basis)``; ``basis[k]`` is 0 on every free column except
    ``free[k]``.
    """
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        p = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
    pivset = set(pivots)
    free = [c for c in range(n) if c not in pivset]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for k, pc in enumerate(pivots):
            v[pc] = -m[k][fc]
        den = 1
        for x in v:
            den = lcm(den, x.denominator)
        basis.append(_primitive([int(x * den) for x in v]))
    return free, basis


def vertex_solutions(sys: MatchingSystem) -> list[tuple]:
    """Extreme rays of C as primitive integer vectors, sorted.

    The matching equations are imposed first: the solution space is spanned
    by one basis vector per free coordinate, and requiring those coordinates
    to be non-negative gives a simplicial starting cone.  The remaining
    non-negativity constraints are then added in coordinate order.  A
    positive and a negative ray are combined only when they are adjacent,
    decided combinatorially: no third ray may vanish on every processed
    constraint where both vanish.
    """
    n = sys.columns
    free, rays = _kernel_basis(sys.rows, n)
    dim = len(free)
    if dim == 0:
        return []
    done = list(free)
    pending = [c for c in range(n) if c not in set(free)]
    for c in pending:
        vals = [r[c] for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        new = [rays[k] for k, v in enumerate(vals) if v >= 0]
        if neg and pos:
            # zero sets of rays over the processed constraints, both ways round
            masks = [0] * len(rays)
            zeros = []
            for b, cc in enumerate(done):
                bits = 0
                for k, r in enumerate(rays):
                    if r[cc] == 0:
                        masks[k] |= 1 << b
                        bits |= 1 << k
                zeros.append(bits)
            everyone = (1 << len(rays)) - 1
            for p in pos:
                for q in neg:
                    common = masks[p] & masks[q]
                    if common.bit_count() < dim - 2:
                        continue
                    pair = (1 << p) | (1 << q)
                    cand = everyone
                    b = 0
                    while common and cand != pair:
                        if common & 1:
                            cand &= zeros[b]
                        common >>= 1
                        b += 1
                    if cand != pair:
                        continue
                    a, bq = vals[p], -vals[q]
                    new.append(_primitive([a * x + bq * y for x, y in zip(rays[q], rays[p])]))
        elif neg:
            new = [rays[k] for k, v in enumerate(vals) if v == 0]
        rays = sorted(set(new))
        done.append(c)
    return sorted(rays)


def _quad_ok(x, n) -> bool:
    for i in range(0, n, 7):
        if (x[i + 4] > 0) + (x[i + 5] > 0) + (x[i + 6] > 0) > 1:
            return False
    return True


def fundamental_solutions(
    sys: MatchingSystem,
    norm_bound: int,
    budget: int | None = None,
    admissible_only: bool = False,
    method: str = "quad",
) -> list[tuple]:
    """All minimal nonzero lattice points of C with l1 norm at most ``norm_bound``.

    ``method`` is ``"quad"`` (enumerate quadrilateral coordinates and complete
    the triangles) or ``"cd"`` (Contejean-Devie).  Both are complete within
    the bound and raise BoundTooLargeForDeskScale once ``budget`` search
    nodes are exceeded.
    """
    if method == "quad":
        return quad_fundamental(sys, norm_bound, budget or DEFAULT_NODE_BUDGET, admissible_only)
    if method == "cd":
        return contejean_devie(sys, norm_bound, budget or DEFAULT_BUDGET, admissible_only)
    raise ValueError(f"unknown method {method!r}")


def contejean_devie(
    sys: MatchingSystem,
    norm_bound: int,
    budget: int = DEFAULT_BUDGET,
    admissible_only: bool = False,
) -> list[tuple]:
    """Minimal lattice points of C by the Contejean-Devie procedure.

    Breadth-first by norm: a non-solution node x grows to x + e_j whenever
    (A x).(A e_j) < 0, and nodes dominating a solution already found are
    discarded.  The search is complete for every minimal solution within the
    bound.  With ``admissible_only`` nodes that use two quadrilateral types
    in one tetrahedron are dropped too; since every node on the way to an
    admissible solution lies below it, this returns exactly the admissible
    fundamental solutions.  Raises BoundTooLargeForDeskScale once more than
    ``budget`` nodes have been generated.
    """
    if norm_bound < 1:
        return []
    n = sys.columns
    cols = [[row[j] for row in sys.rows] for j in range(n)]
    gram = [[sum(a * b for a, b in zip(cols[j], cols[k])) for k in range(n)] for j in range(n)]
    solutions: list[tuple] = []
    level = {}
    for j in range(n):
        x = tuple(1 if k == j else 0 for k in range(n))
        level[x] = tuple(gram[j])
    generated = n
    norm = 1
    while level:
        frontier = {}
        for x, d in level.items():
            sq = sum(a * b for a, b in zip(x, d))  # |A x|^2
            if sq == 0:
                solutions.append(x)
        if norm == norm_bound:
            break
        found_now = set(s for s in solutions if sum(s) == norm)
        for x, d in level.items():
            if x in found_now:
                continue
            for j in range(n):
                if d[j] >= 0:
                    continue
                y = list(x)
                y[j] += 1
                y = tuple(y)
                if y in frontier:
                    continue
                if admissible_only and not _quad_ok(y, n):
                    continue
                if dominates_any(y, solutions):
                    continue
                g = gram[j]
                frontier[y] = tuple(a + b for a, b in zip(d, g))
                generated += 1
                if generated > budget:
                    raise BoundTooLargeForDeskScale(
                        f"more than {budget} search nodes below norm {norm_bound}"
                    )
        level = frontier
        norm += 1
    return sorted(solutions)
