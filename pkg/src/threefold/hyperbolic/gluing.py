"""Thurston gluing equations for ideal triangulations.

Shapes are attached to tetrahedra of the oriented relabeling of the input
(every gluing permutation odd).  In a tetrahedron with shape z the edges 01
and 23 carry z, the edges 02 and 13 carry z' = 1/(1-z), and the edges 03 and
12 carry z'' = 1 - 1/z.  For Im z > 0 the principal logarithms satisfy

    log z' = -log(1-z),      log z'' = log(1-z) - log z + i pi,

so every equation takes the form sum_j a_j log z_j + b_j log(1-z_j) = i pi c
with integer a, b, c.

The cusp cross-section at a vertex class is triangulated by the corners of
the tetrahedra.  A closed curve through that triangulation crossing one
triangle at a time turns around one corner per triangle, and its log
holonomy is the signed sum of the corner logs (plus when the corner is on
its left).  For a complete structure this sum vanishes exactly on every
simple closed curve.  The two curves used per cusp come from a tree-cotree
split of the cusp triangulation, so they form a basis of its first homology.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .. import perm as P
from ..errors import NotIdeal, NotOrientable, StructuralError
from ..triangulation import Triangulation, orientation, oriented_labeling, require_valid

# which of z, z', z'' sits on each edge of a positively labeled tetrahedron
EDGE_TYPE = {(0, 1): 0, (2, 3): 0, (0, 2): 1, (1, 3): 1, (0, 3): 2, (1, 2): 2}
# log of the shape of each type as (coefficient of log z, of log(1-z), of i pi)
TYPE_COEFFS = {0: (1, 0, 0), 1: (0, -1, 0), 2: (-1, 1, 1)}
REGULAR = cmath.exp(1j * math.pi / 3)


def edge_type(a: int, b: int) -> int:
    return EDGE_TYPE[(min(a, b), max(a, b))]


def corner_shape(z, a: int, b: int):
    """Shape on edge ab of a tetrahedron with shape z (complex or CInterval)."""
    k = edge_type(a, b)
    if k == 0:
        return z
    if k == 1:
        return 1 / (1 - z)
    return 1 - 1 / z


def ccw_corners(v: int) -> tuple:
    """Corners of the cusp triangle at vertex v in counterclockwise order.

    The order is chosen so that following it the corner shapes run through
    z, z', z'' (the relation of the three angles of one Euclidean triangle).
    """
    w = [x for x in range(4) if x != v]
    return tuple(w) if P.sign((v, *w)) > 0 else (w[0], w[2], w[1])


@dataclass
class ShapeVector:
    """One complex shape per tetrahedron of the oriented labeling.

    ``branches`` holds the 2 pi i multiples added to the principal logs of
    z and 1 - z per tetrahedron; they stay zero while Im z > 0.
    """

    z: tuple
    branches: tuple = ()
    iterations: int = 0
    residual: float = math.nan

    def __post_init__(self):
        self.z = tuple(complex(x) for x in self.z)
        if not self.branches:
            self.branches = tuple((0, 0) for _ in self.z)

    @property
    def geometric(self) -> bool:
        return all(x.imag > 0 for x in self.z)

    def real_vector(self) -> list:
        """(Re z_0, ..., Re z_{t-1}, Im z_0, ..., Im z_{t-1})."""
        return [x.real for x in self.z] + [x.imag for x in self.z]

    @classmethod
    def from_real(cls, x) -> "ShapeVector":
        t = len(x) // 2
        return cls(tuple(complex(x[j], x[t + j]) for j in range(t)))

    def as_dict(self) -> dict:
        return {
            "z": [[repr(x.real), repr(x.imag)] for x in self.z],
            "branches": [list(b) for b in self.branches],
            "iterations": self.iterations,
            "residual": self.residual,
        }


@dataclass
class Row:
    """sum_j a[j] log z_j + b[j] log(1 - z_j) = i pi c."""

    kind: str  # "edge", "meridian" or "longitude"
    index: int  # edge class or cusp number
    a: list
    b: list
    c: int

    def value(self, z) -> complex:
        s = -1j * math.pi * self.c
        for aj, bj, zj in zip(self.a, self.b, z):
            if aj:
                s += aj * cmath.log(zj)
            if bj:
                s += bj * cmath.log(1 - zj)
        return s

    def gradient(self, z) -> list:
        return [aj / zj - bj / (1 - zj) for aj, bj, zj in zip(self.a, self.b, z)]

    def magnitude(self) -> int:
        return max([abs(x) for x in self.a + self.b] + [0])


@dataclass
class CuspCurve:
    """A closed curve in a cusp triangulation: (tet, vertex, corner, sign) per triangle."""

    passages: list
    side: tuple  # the cotree side (tet, vertex, face) the curve closes up through


@dataclass
class GluingSystem:
    tri: Triangulation  # the input
    oriented: Triangulation  # relabeled so every gluing is odd
    perms: list  # vertex maps from input labels to oriented labels
    edge_rows: list
    cusp_rows: list  # per cusp: [meridian row, longitude row]
    cusps: list  # vertex class per cusp
    curves: list = field(default_factory=list)  # per cusp: [meridian, longitude]
    trees: list = field(default_factory=list)  # per cusp: [root, (child, parent, face), ...]

    @property
    def t(self) -> int:
        return self.oriented.tetra_count

    def all_rows(self) -> list:
        return self.edge_rows + [r for pair in self.cusp_rows for r in pair]

    def reduced_rows(self) -> list:
        """A square system: every meridian row plus t - (cusps) edge rows.

        Edge rows are taken in order of decreasing coefficient magnitude,
        skipping any that do not raise the rank over the rationals.
        """
        chosen = [pair[0] for pair in self.cusp_rows]
        basis = []
        for r in chosen:
            _reduce_into(basis, r.a + r.b)
        order = sorted(range(len(self.edge_rows)), key=lambda k: (-self.edge_rows[k].magnitude(), k))
        for k in order:
            if len(chosen) == self.t:
                break
            r = self.edge_rows[k]
            if _reduce_into(basis, r.a + r.b):
                chosen.append(r)
        if len(chosen) != self.t:
            raise StructuralError("gluing equations do not reduce to a square system")
        return chosen

    def residual(self, z, rows=None) -> float:
        rows = self.all_rows() if rows is None else rows
        return max(abs(r.value(z)) for r in rows)

    def edge_rank(self) -> int:
        basis = []
        return sum(1 for r in self.edge_rows if _reduce_into(basis, r.a + r.b))

    def as_dict(self) -> dict:
        def row(r):
            return {"kind": r.kind, "index": r.index, "a": r.a, "b": r.b, "c": r.c}

        return {"tetrahedra": self.t, "cusps": len(self.cusps), "rows": [row(r) for r in self.all_rows()]}


def _reduce_into(basis: list, vec) -> bool:
    """Add ``vec`` to an echelon basis (list of (pivot, row)); False if dependent."""
    v = [Fraction(x) for x in vec]
    for piv, row in basis:
        if v[piv]:
            f = v[piv] / row[piv]
            v = [x - f * y for x, y in zip(v, row)]
    for k, x in enumerate(v):
        if x:
            basis.append((k, v))
            return True
    return False


# -- cusp triangulations ------------------------------------------------------------


class _UF:
    def __init__(self):
        self.p = {}

    def find(self, x):
        self.p.setdefault(x, x)
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.p[ra] = rb
        return True


def cusp_triangles(tri: Triangulation, cls) -> list:
    """The triangles (tet, vertex) of one vertex class, in a fixed order."""
    return sorted((i, v) for i, (v,) in cls.members)


def _side_partner(tri, i, v, f):
    j, s = tri.gluings[i][f]
    return j, s[v], s[f]


def passage(v: int, f_in: int, f_out: int) -> tuple:
    """Corner turned around, and its sign, for a crossing of triangle (., v)."""
    (w,) = [x for x in range(4) if x not in (v, f_in, f_out)]
    order = ccw_corners(v)
    k = order.index(w)
    left = order[(k + 1) % 3] == f_out
    return w, 1 if left else -1


def cusp_curves(tri: Triangulation, cls) -> tuple:
    """Two simple closed curves forming a homology basis of one cusp torus.

    Also returns the dual spanning tree the curves were built from, as a
    list of (child, parent, face of parent) in breadth-first order.
    """
    triangles = cusp_triangles(tri, cls)
    tset = set(triangles)
    # sides are keyed by (tet, vertex, face); each side appears from both triangles
    sides = []
    seen = set()
    for i, v in triangles:
        for f in range(4):
            if f == v or (i, v, f) in seen:
                continue
            other = _side_partner(tri, i, v, f)
            seen.add((i, v, f))
            seen.add(other)
            sides.append(((i, v, f), other))
    # corners (link vertices) identified across sides
    corner_uf = _UF()
    for (i, v, f), (j, vv, ff) in sides:
        s = tri.gluings[i][f][1]
        for w in range(4):
            if w not in (v, f):
                corner_uf.union((i, v, w), (j, vv, s[w]))
    # primal spanning tree over link vertices
    tree_uf = _UF()
    primal = set()
    for k, ((i, v, f), _) in enumerate(sides):
        ends = [(i, v, w) for w in range(4) if w not in (v, f)]
        a, b = (corner_uf.find(x) for x in ends)
        if tree_uf.union(a, b):
            primal.add(k)
    # dual spanning tree over triangles using the remaining sides
    adj = {x: [] for x in triangles}
    for k, ((i, v, f), (j, vv, ff)) in enumerate(sides):
        if k in primal:
            continue
        adj[(i, v)].append((k, f, (j, vv), ff))
        adj[(j, vv)].append((k, ff, (i, v), f))
    root = triangles[0]
    parent = {root: None}  # triangle -> (side index, face in child, parent, face in parent)
    order = [root]
    for x in order:
        for k, f, y, ff in adj[x]:
            if y not in parent:
                parent[y] = (k, ff, x, f)
                order.append(y)
    if set(parent) != tset:
        raise StructuralError("cusp triangulation is not connected")
    tree = {parent[y][0] for y in parent if parent[y] is not None}
    left = [k for k in range(len(sides)) if k not in primal and k not in tree]
    if len(left) != 2:
        raise NotIdeal("cusp cross-section is not a torus")

    def path_to_root(x):
        out = [x]
        while parent[out[-1]] is not None:
            out.append(parent[out[-1]][2])
        return out

    curves = []
    for k in left:
        (i, v, f), (j, vv, ff) = sides[k]
        a, b = (i, v), (j, vv)
        pa, pb = path_to_root(a), path_to_root(b)
        common = next(x for x in pa if x in set(pb))
        up_b = pb[: pb.index(common) + 1]  # b ... common
        up_a = pa[: pa.index(common)]  # a ... (child of common)
        walk = up_b + list(reversed(up_a))  # b -> common -> a
        passages = []
        for n, x in enumerate(walk):
            if n == 0:
                f_in = ff
            else:
                prev = walk[n - 1]
                f_in = _shared_face(parent, x, prev)
            if n == len(walk) - 1:
                f_out = f
            else:
                f_out = _shared_face(parent, x, walk[n + 1])
            w, sgn = passage(x[1], f_in, f_out)
            passages.append((x[0], x[1], w, sgn))
        curves.append(CuspCurve(passages, (i, v, f)))
    tree_list = [(y, parent[y][2], parent[y][3]) for y in order[1:]]
    return curves, [root] + tree_list


def _shared_face(parent, x, y):
    """Face of triangle x holding the tree side between x and its tree neighbour y."""
    if parent[x] is not None and parent[x][2] == y:
        return parent[x][1]
    return parent[y][3]


def _curve_row(kind, index, curve, t) -> Row:
    a, b, c = [0] * t, [0] * t, 0
    for i, v, w, sgn in curve.passages:
        ca, cb, cc = TYPE_COEFFS[edge_type(v, w)]
        a[i] += sgn * ca
        b[i] += sgn * cb
        c -= sgn * cc
    return Row(kind, index, a, b, c)


def build_gluing_system(tri: Triangulation) -> GluingSystem:
    """Edge equations and cusp completeness equations of an ideal triangulation."""
    # checked first: a non-orientable cusp (Klein bottle link) fails validation
    if tri.tetra_count and not tri.boundary_faces() and orientation(tri) is None:
        raise NotOrientable("gluing equations need an orientable triangulation")
    rep = require_valid(tri)
    if any(k != "ideal" for k in rep.vertex_kinds):
        raise NotIdeal("every vertex must be ideal (torus link)")
    ot, perms = oriented_labeling(tri)
    t = ot.tetra_count
    sk = ot.skeleton
    edge_rows = []
    for e, cls in enumerate(sk.edges):
        a, b, n2 = [0] * t, [0] * t, 0
        for i, (x, y) in cls.members:
            ca, cb, cc = TYPE_COEFFS[edge_type(x, y)]
            a[i] += ca
            b[i] += cb
            n2 += cc
        edge_rows.append(Row("edge", e, a, b, 2 - n2))
    cusps, cusp_rows, curves, trees = [], [], [], []
    for c, cls in enumerate(sk.vertices):
        (m, l), tree = cusp_curves(ot, cls)
        cusps.append(c)
        curves.append([m, l])
        trees.append(tree)
        cusp_rows.append([_curve_row("meridian", len(cusps) - 1, m, t), _curve_row("longitude", len(cusps) - 1, l, t)])
    return GluingSystem(tri, ot, perms, edge_rows, cusp_rows, cusps, curves, trees)


# -- developing a cusp ----------------------------------------------------------------


def develop_cusp(sys: GluingSystem, cusp: int, z) -> dict:
    """Positions of the corners of every triangle of one cusp in the plane.

    ``z`` holds complex numbers or CIntervals.  The first triangle is placed
    with its first counterclockwise corner at 0 and the next at 1; the rest
    follow the tree used for the cusp curves.  Returns ``{"pos": {(tet,
    vertex): {corner: position}}, "translations": [meridian, longitude]}``
    where a translation is the displacement picked up by closing the curve
    through its cotree side.
    """
    tri = sys.oriented
    root, *tree = sys.trees[cusp]
    i0, v0 = root
    a, b, c = ccw_corners(v0)
    pos = {root: {a: 0 * z[i0] + 0, b: 0 * z[i0] + 1}}
    pos[root][c] = _third(pos[root], i0, v0, z)
    for child, par, f in tree:
        i, v = par
        j, vv, ff = _side_partner(tri, i, v, f)
        s = tri.gluings[i][f][1]
        pos[child] = {s[w]: pos[par][w] for w in range(4) if w not in (v, f)}
        pos[child][ff] = _third(pos[child], j, vv, z)
    trans = []
    for curve in sys.curves[cusp]:
        i, v, f = curve.side
        j, vv, ff = _side_partner(tri, i, v, f)
        s = tri.gluings[i][f][1]
        w = next(x for x in range(4) if x not in (v, f))
        trans.append(pos[(i, v)][w] - pos[(j, vv)][s[w]])
    return {"pos": pos, "translations": trans}


def _third(known: dict, i: int, v: int, z):
    """Place the missing corner of triangle (i, v) from two known ones."""
    order = ccw_corners(v)
    for k, x in enumerate(order):
        nxt, prv = order[(k + 1) % 3], order[(k + 2) % 3]
        if x in known and nxt in known and prv not in known:
            r = corner_shape(z[i], v, x)
            return known[x] + r * (known[nxt] - known[x])
    raise StructuralError("triangle has fewer than two placed corners")
