"""Building normal surfaces from coordinates and reading off their topology."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import NotAdmissible, StructuralError
from ..perm import sign
from ..triangulation import Triangulation, require_valid
from .coords import QUAD_PAIRS, is_admissible, matching_system, quad_type, vertex_link_vectors
from .quadsearch import admissible_fundamental


@dataclass
class Component:
    euler: int
    orientable: bool
    connected: bool
    coordinates: tuple
    kind: str = "other"  # "vertex-link", "edge-link" or "other"

    @property
    def is_sphere(self) -> bool:
        return self.euler == 2 and self.orientable

    @property
    def is_torus(self) -> bool:
        return self.euler == 0 and self.orientable

    def as_dict(self) -> dict:
        return {
            "euler": self.euler,
            "orientable": self.orientable,
            "connected": self.connected,
            "kind": self.kind,
            "coordinates": list(self.coordinates),
        }


@dataclass
class NormalSurface:
    coordinates: tuple
    components: list = field(default_factory=list)

    @property
    def total_euler(self) -> int:
        return sum(c.euler for c in self.components)

    @property
    def connected(self) -> bool:
        return len(self.components) == 1

    def as_dict(self) -> dict:
        return {
            "coordinates": list(self.coordinates),
            "total_euler": self.total_euler,
            "components": [c.as_dict() for c in self.components],
        }


class _UF:
    def __init__(self):
        self.p = {}

    def find(self, x):
        p = self.p
        p.setdefault(x, x)
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[ra] = rb


def _quad_side(q: int, a: int) -> int:
    """+1 if vertex a is on the side of quad type q that contains vertex 0."""
    return 1 if a in QUAD_PAIRS[q][0] else -1


def _arc_position(v, i, a, f, k_tri, quad):
    """Distance rank from corner a of the arc on face f cut by a disk.

    ``k_tri`` is the triangle's index for a triangle at a, otherwise ``quad``
    is ``(type, index)`` for a quadrilateral whose arc cuts corner a.
    """
    ta = v[7 * i + a]
    if quad is None:
        return k_tri
    q, k = quad
    cnt = v[7 * i + 4 + q]
    return ta + (k if _quad_side(q, a) > 0 else cnt - 1 - k)


def reconstruct(tri: Triangulation, v) -> NormalSurface:
    """Components of the normal surface with coordinates ``v``."""
    v = tuple(int(x) for x in v)
    if len(v) != 7 * tri.tetra_count:
        raise StructuralError("coordinate vector has the wrong length")
    if not is_admissible(v):
        raise NotAdmissible("two quadrilateral types meet in one tetrahedron")
    sysm = matching_system(tri)
    if any(sysm.apply(v)):
        raise NotAdmissible("coordinates violate the matching equations")

    # every disk lists its arcs as (face, corner, position, side sign)
    disks = []
    for i in range(tri.tetra_count):
        for c in range(4):
            for k in range(v[7 * i + c]):
                arcs = [(f, c, _arc_position(v, i, c, f, k, None), 1) for f in range(4) if f != c]
                disks.append((i, ("T", c, k), arcs))
        for q in range(3):
            for k in range(v[7 * i + 4 + q]):
                arcs = []
                for f in range(4):
                    # the arc of this quad on face f cuts off the corner paired with f
                    a = [x for x in range(4) if x != f and quad_type(x, f) == q][0]
                    arcs.append((f, a, _arc_position(v, i, a, f, None, (q, k)), _quad_side(q, a)))
                disks.append((i, ("Q", q, k), arcs))

    # the two endpoints of an arc near corner a on face f lie on edges (a, b)
    def points(i, f, a, pos):
        out = []
        for b in range(4):
            if b in (a, f):
                continue
            tot = v[7 * i + a] + v[7 * i + b]
            for q in range(3):
                if quad_type(a, b) != q:
                    tot += v[7 * i + 4 + q]
            idx = pos if a < b else tot - 1 - pos
            out.append((i, min(a, b), max(a, b), idx))
        return out

    arc_uf = _UF()
    pt_uf = _UF()
    for i, row in enumerate(tri.gluings):
        for f, e in enumerate(row):
            if e is None:
                continue
            j, s = e
            for a in range(4):
                if a == f:
                    continue
                cnt = v[7 * i + a] + v[7 * i + 4 + quad_type(a, f)]
                for pos in range(cnt):
                    arc_uf.union((i, f, a, pos), (j, s[f], s[a], pos))
            # points on each edge of the face match across the gluing
            for a in range(4):
                for b in range(a + 1, 4):
                    if f in (a, b):
                        continue
                    tot = v[7 * i + a] + v[7 * i + b] + sum(
                        v[7 * i + 4 + q] for q in range(3) if quad_type(a, b) != q
                    )
                    sa, sb = s[a], s[b]
                    for idx in range(tot):
                        jdx = idx if sa < sb else tot - 1 - idx
                        pt_uf.union((i, a, b, idx), (j, min(sa, sb), max(sa, sb), jdx))

    # components: disks joined through shared arcs
    comp_uf = _UF()
    for d, (i, _, arcs) in enumerate(disks):
        comp_uf.find(("D", d))
        for f, a, pos, _ in arcs:
            comp_uf.union(("D", d), ("A", arc_uf.find((i, f, a, pos))))

    # orientation: disks sharing an arc must induce opposite directions on it;
    # equivalently side signs times the local orientation character agree
    arc_users = {}
    for d, (i, _, arcs) in enumerate(disks):
        for f, a, pos, side in arcs:
            arc_users.setdefault(arc_uf.find((i, f, a, pos)), []).append((d, i, f, side))
    sigma_sign = {}
    for i, row in enumerate(tri.gluings):
        for f, e in enumerate(row):
            if e is not None:
                sigma_sign[(i, f)] = sign(e[1])
    orient = {}
    bad_roots = set()
    adj = {}
    for users in arc_users.values():
        if len(users) != 2:
            raise StructuralError("an arc is not shared by exactly two disks")
        (d1, i1, f1, s1), (d2, i2, f2, s2) = users
        lam = -sigma_sign[(i1, f1)]
        rel = s1 * s2 * lam
        adj.setdefault(d1, []).append((d2, rel))
        adj.setdefault(d2, []).append((d1, rel))
    for start in range(len(disks)):
        if start in orient:
            continue
        orient[start] = 1
        stack = [start]
        while stack:
            d = stack.pop()
            for d2, rel in adj.get(d, []):
                want = orient[d] * rel
                if d2 not in orient:
                    orient[d2] = want
                    stack.append(d2)
                elif orient[d2] != want:
                    bad_roots.add(comp_uf.find(("D", d)))

    comps = {}
    for d, (i, (kind, c, k), arcs) in enumerate(disks):
        r = comp_uf.find(("D", d))
        info = comps.setdefault(r, {"F": 0, "arcs": set(), "pts": set(), "coords": [0] * len(v)})
        info["F"] += 1
        info["coords"][7 * i + (c if kind == "T" else 4 + c)] += 1
        for f, a, pos, _ in arcs:
            info["arcs"].add(arc_uf.find((i, f, a, pos)))
            for p in points(i, f, a, pos):
                info["pts"].add(pt_uf.find(p))
    out = []
    for r, info in comps.items():
        chi = len(info["pts"]) - len(info["arcs"]) + info["F"]
        out.append(Component(chi, r not in bad_roots, True, tuple(info["coords"])))
    out.sort(key=lambda c: c.coordinates)
    surf = NormalSurface(v, out)
    _classify(tri, surf)
    return surf


def thin_edge_link_vectors(tri: Triangulation) -> dict:
    """Normal coordinates of the boundary of a regular neighbourhood of each edge.

    Only edges joining two distinct vertex classes whose neighbourhood
    boundary is normal are listed; the result maps edge class to vector.
    """
    sk = tri.skeleton
    links = vertex_link_vectors(tri)
    out = {}
    for c, cls in enumerate(sk.edges):
        i0, (x0, y0) = cls.members[0]
        u, w = sk.vertex_class(i0, x0), sk.vertex_class(i0, y0)
        if u == w:
            continue
        vec = [a + b for a, b in zip(links[u], links[w])]
        for i, (x, y) in cls.members:
            vec[7 * i + x] -= 1
            vec[7 * i + y] -= 1
            vec[7 * i + 4 + quad_type(x, y)] += 1
        if is_admissible(vec):
            out[c] = tuple(vec)
    return out


def _classify(tri, surf):
    vl = {tuple(x) for x in vertex_link_vectors(tri)}
    el = set(thin_edge_link_vectors(tri).values())
    for comp in surf.components:
        if comp.coordinates in vl:
            comp.kind = "vertex-link"
        elif comp.coordinates in el:
            comp.kind = "edge-link"


def fundamental_surfaces(tri: Triangulation, norm_bound: int, budget: int | None = None) -> list[NormalSurface]:
    """Reconstructed admissible fundamental surfaces within the bound."""
    sysm = matching_system(tri)
    kw = {} if budget is None else {"budget": budget}
    return [reconstruct(tri, v) for v in admissible_fundamental(sysm, norm_bound, **kw)]


def find_non_vertex_linking_spheres(tri: Triangulation, norm_bound: int, budget: int | None = None):
    """Fundamental surfaces with a sphere component that is not a vertex link."""
    rep = require_valid(tri)
    if not rep.orientable:
        raise StructuralError("sphere search needs an orientable triangulation")
    return [
        s
        for s in fundamental_surfaces(tri, norm_bound, budget)
        if any(c.is_sphere and c.kind != "vertex-link" for c in s.components)
    ]


def find_essential_sphere_candidates(tri: Triangulation, norm_bound: int, budget: int | None = None):
    """Fundamental spheres that do not obviously bound a ball.

    Vertex links and thin edge links (the boundary of a neighbourhood of an
    edge between distinct vertices) bound balls, so they are dropped; what
    remains are candidates only, and an empty list is evidence of
    irreducibility within the bound, not a proof.
    """
    return [
        s
        for s in find_non_vertex_linking_spheres(tri, norm_bound, budget)
        if any(c.is_sphere and c.kind == "other" for c in s.components)
    ]


def find_normal_tori(tri: Triangulation, norm_bound: int, budget: int | None = None):
    """Fundamental surfaces with a torus component (essentiality not decided)."""
    require_valid(tri)
    return [s for s in fundamental_surfaces(tri, norm_bound, budget) if any(c.is_torus for c in s.components)]


def find_klein_bottles(tri: Triangulation, norm_bound: int, budget: int | None = None):
    require_valid(tri)
    return [
        s
        for s in fundamental_surfaces(tri, norm_bound, budget)
        if any(c.euler == 0 and not c.orientable for c in s.components)
    ]
