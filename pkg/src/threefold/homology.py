"""Integer chain complexes of triangulations and homology via Smith normal form."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import perm as P
from .errors import NotClosed
from .triangulation import (
    Triangulation,
    barycentric_subdivide,
    orientation,
    require_valid,
)


@dataclass
class ChainComplex:
    """Boundary maps ``d[1], d[2], d[3]`` as dense integer matrices.

    ``d[k]`` has one column per k-cell and one row per (k-1)-cell.
    ``cells[k]`` lists a representative ``(tet, vertices)`` for each k-cell,
    in the triangulation recorded as ``source`` (the input, or its barycentric
    subdivision when the input's cells are not embedded simplices or when
    ideal vertices must be truncated).
    """

    d: dict
    cells: dict
    source: Triangulation
    subdivided: bool
    truncated: bool

    def boundary(self, k: int) -> list[list[int]]:
        return self.d[k]

    def sizes(self) -> list[int]:
        return [len(self.cells[k]) for k in range(4)]


def _matmul(a, b):
    if not a or not b or not b[0]:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def is_chain_complex(cc: ChainComplex) -> bool:
    for k in (2, 3):
        prod = _matmul(cc.d[k - 1], cc.d[k])
        if any(v for row in prod for v in row):
            return False
    return True


def _delta_complex(tri: Triangulation, excluded: set) -> tuple[dict, dict]:
    sk = tri.skeleton
    keep = {}
    cells = {}
    for k in range(3):
        cells[k] = []
        keep[k] = {}
        for c, fc in enumerate(sk.classes[k]):
            i, S = fc.members[0]
            if any(sk.vertex_class(i, v) in excluded for v in S):
                continue
            keep[k][c] = len(cells[k])
            cells[k].append((i, S))
    cells[3] = []
    for i in range(tri.tetra_count):
        if any(sk.vertex_class(i, v) in excluded for v in range(4)):
            continue
        cells[3].append((i, (0, 1, 2, 3)))

    d = {}
    for k in (1, 2, 3):
        rows = len(cells[k - 1])
        mat = [[0] * len(cells[k]) for _ in range(rows)]
        for col, (i, S) in enumerate(cells[k]):
            for m in range(len(S)):
                face = S[:m] + S[m + 1:]
                c, rel = sk.index[k - 1][(i, face)]
                sgn = (-1) ** m * (P.sign(rel) if k > 1 else 1)
                mat[keep[k - 1][c]][col] += sgn
        d[k] = mat
    return d, cells


def chain_complex(tri: Triangulation, truncate: bool = True) -> ChainComplex:
    """Cellular chain complex of ``tri``.

    With ``truncate`` (the default) ideal vertices are removed: the complex is
    that of the barycentric subdivision minus the open stars of ideal vertex
    classes, which deformation retracts onto the compact manifold with torus
    boundary.  When some edge or triangle class is identified with itself by
    a non-identity map the input is not a Delta complex and the subdivision is
    used as well.
    """
    rep = require_valid(tri)
    sk = tri.skeleton
    ideal = [c for c, k in enumerate(rep.vertex_kinds) if k == "ideal"]
    twisted = any(fc.twisted for k in (1, 2) for fc in sk.classes[k])
    if (ideal and truncate) or twisted:
        sub = barycentric_subdivide(tri)
        excluded = set()
        if ideal and truncate:
            ssk = sub.skeleton
            # vertex 0 of every subdivided tetrahedron is an original vertex
            for n in range(sub.tetra_count):
                i, pi = divmod(n, 24)
                if sk.vertex_class(i, P.ALL_PERMS[pi][0]) in ideal:
                    excluded.add(ssk.vertex_class(n, 0))
        d, cells = _delta_complex(sub, excluded)
        return ChainComplex(d, cells, sub, True, bool(excluded))
    d, cells = _delta_complex(tri, set())
    return ChainComplex(d, cells, tri, False, False)


def _normalize_diagonal(diag: list[int]) -> list[int]:
    """Turn a list of nonzero diagonal entries into invariant factors."""
    ds = sorted(abs(x) for x in diag)
    n = len(ds)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(i + 1, n):
                a, b = ds[i], ds[j]
                if b % a:
                    g = gcd(a, b)
                    ds[i], ds[j] = g, a // g * b
                    changed = True
        ds.sort()
    return ds


def smith_diagonal(matrix) -> list[int]:
    """Nonzero invariant factors of an integer matrix, each dividing the next.

    Sparse elimination over Python integers.  The pivot is a nonzero entry
    of least absolute value; the first unit entry found is taken at once,
    since the invariant factors do not depend on the choice.
    """
    rows = {}
    cols = {}
    for r, row in enumerate(matrix):
        for c, v in enumerate(row):
            if v:
                rows.setdefault(r, {})[c] = int(v)
                cols.setdefault(c, set()).add(r)
    diag = []

    def set_entry(r, c, v):
        if v:
            rows.setdefault(r, {})[c] = v
            cols.setdefault(c, set()).add(r)
        else:
            rr = rows.get(r)
            if rr is not None and c in rr:
                del rr[c]
                if not rr:
                    del rows[r]
                cols[c].discard(r)
                if not cols[c]:
                    del cols[c]

    def pick():
        best = None
        for r in rows:
            for c, v in rows[r].items():
                key = (abs(v), r, c)
                if key[0] == 1:
                    return key
                if best is None or key < best:
                    best = key
        return best

    while rows:
        _, r, c = pick()
        while True:
            p = rows[r][c]
            dirty = False
            for r2 in sorted(cols[c] - {r}):
                q, rem = divmod(rows[r2][c], p)
                for c2, v in list(rows[r].items()):
                    set_entry(r2, c2, rows.get(r2, {}).get(c2, 0) - q * v)
                if rem:
                    dirty = True
            if not dirty:
                for c2, v in list(rows[r].items()):
                    if c2 != c and v % p:
                        q = v // p
                        set_entry(r, c2, v - q * p)
                        dirty = True
            if not dirty:
                break
            _, r, c = pick()
        diag.append(rows[r][c])
        for c2 in list(rows[r]):
            cols[c2].discard(r)
            if not cols[c2]:
                del cols[c2]
        del rows[r]
    return _normalize_diagonal(diag)


@dataclass
class HomologyGroups:
    betti: list
    torsion: list

    def group(self, k: int) -> tuple[int, list]:
        return self.betti[k], self.torsion[k]

    @staticmethod
    def format_group(b: int, tors) -> str:
        parts = []
        if b == 1:
            parts.append("Z")
        elif b > 1:
            parts.append(f"Z^{b}")
        parts += [f"Z/{d}" for d in tors]
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return "\n".join(
            f"H_{k} = {self.format_group(b, t)}" for k, (b, t) in enumerate(zip(self.betti, self.torsion))
        )

    def as_dict(self) -> dict:
        return {f"H_{k}": {"betti": b, "torsion": t} for k, (b, t) in enumerate(zip(self.betti, self.torsion))}


def homology_of_complex(cc: ChainComplex) -> HomologyGroups:
    n = cc.sizes()
    facs = {k: smith_diagonal(cc.d[k]) if cc.d[k] and cc.d[k][0] else [] for k in (1, 2, 3)}
    rank = {0: 0, 4: 0, **{k: len(v) for k, v in facs.items()}}
    betti = [n[k] - rank[k] - rank[k + 1] for k in range(4)]
    torsion = [[d for d in facs.get(k + 1, []) if d > 1] for k in range(4)]
    return HomologyGroups(betti, torsion)


def homology(tri: Triangulation) -> HomologyGroups:
    """Integral homology H_0..H_3 (of the truncated compact manifold if cusped)."""
    return homology_of_complex(chain_complex(tri))


@dataclass
class OrientationResult:
    orientable: bool
    signs: list | None
    closed: bool
    fundamental_class: list | None


def orientability_and_fundamental_class(tri: Triangulation) -> OrientationResult:
    """Orient by sign propagation; for closed inputs return a 3-cycle too."""
    rep = require_valid(tri)
    signs = orientation(tri)
    if signs is None or not rep.closed:
        return OrientationResult(signs is not None, signs, rep.closed, None)
    cc = chain_complex(tri)
    cyc = orientation(cc.source) if cc.subdivided else list(signs)
    return OrientationResult(True, signs, True, cyc)


def fundamental_class(tri: Triangulation) -> list:
    res = orientability_and_fundamental_class(tri)
    if not res.closed:
        raise NotClosed("fundamental class requires a closed triangulation")
    return res.fundamental_class
