"""Generalized 3-manifold triangulations: gluing tables, skeleta, validation.

A triangulation is a list of tetrahedra whose faces are identified in pairs.
Entry ``gluings[i][f]`` is ``None`` for a boundary face, or ``(j, p)`` where
``p`` is a permutation of ``(0, 1, 2, 3)``: face ``f`` of tetrahedron ``i``
(the face opposite vertex ``f``) is glued to face ``p[f]`` of tetrahedron
``j``, vertex ``k`` of ``i`` going to vertex ``p[k]`` of ``j``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations, permutations

from . import perm as P
from .errors import StructuralError

FACES_BY_DIM = {k: list(combinations(range(4), k + 1)) for k in range(4)}


@dataclass(frozen=True)
class Triangulation:
    gluings: tuple
    name: str = ""

    def __post_init__(self):
        g = tuple(
            tuple(None if e is None else (int(e[0]), tuple(e[1])) for e in row)
            for row in self.gluings
        )
        object.__setattr__(self, "gluings", g)
        self._check()

    @property
    def tetra_count(self) -> int:
        return len(self.gluings)

    def __len__(self):
        return len(self.gluings)

    def _check(self):
        t = len(self.gluings)
        for i, row in enumerate(self.gluings):
            if len(row) != 4:
                raise StructuralError(f"tetrahedron {i} has {len(row)} faces")
            for f, entry in enumerate(row):
                if entry is None:
                    continue
                j, p = entry
                if not 0 <= j < t:
                    raise StructuralError(f"({i},{f}) glued to missing tetrahedron {j}")
                if sorted(p) != [0, 1, 2, 3]:
                    raise StructuralError(f"({i},{f}) has non-bijective gluing {p}")
                back = self.gluings[j][p[f]]
                if back is None or back[0] != i or back[1] != P.inverse(p):
                    raise StructuralError(f"gluing at ({i},{f}) is not an involution")
                if j == i and p[f] == f and all(p[v] == v for v in range(4) if v != f):
                    raise StructuralError(f"face ({i},{f}) glued to itself by the identity")

    def with_name(self, name: str) -> "Triangulation":
        return Triangulation(self.gluings, name)

    def boundary_faces(self) -> list[tuple[int, int]]:
        return [(i, f) for i, row in enumerate(self.gluings) for f, e in enumerate(row) if e is None]

    @cached_property
    def skeleton(self) -> "Skeleton":
        return Skeleton(self)

    # -- serialization ----------------------------------------------------

    def to_text(self) -> str:
        rows = []
        for row in self.gluings:
            cells = ["null" if e is None else f'[{e[0]}, "{P.to_string(e[1])}"]' for e in row]
            rows.append("    [" + ", ".join(cells) + "]")
        body = ",\n".join(rows)
        return (
            "{\n"
            f'  "name": {json.dumps(self.name)},\n'
            f'  "tetrahedra": {self.tetra_count},\n'
            '  "gluings": [\n' + body + ("\n" if rows else "") + "  ]\n"
            "}\n"
        )

    @classmethod
    def from_text(cls, text: str) -> "Triangulation":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise StructuralError(f"not valid JSON: {exc}") from None
        if not isinstance(obj, dict) or "gluings" not in obj:
            raise StructuralError("expected an object with a 'gluings' field")
        rows = obj["gluings"]
        if obj.get("tetrahedra", len(rows)) != len(rows):
            raise StructuralError("'tetrahedra' does not match the number of gluing rows")
        gl = []
        for row in rows:
            if not isinstance(row, list):
                raise StructuralError("gluing rows must be arrays")
            out = []
            for e in row:
                if e is None:
                    out.append(None)
                else:
                    try:
                        out.append((int(e[0]), P.from_string(e[1])))
                    except (ValueError, TypeError, IndexError) as exc:
                        raise StructuralError(f"bad gluing entry {e!r}: {exc}") from None
            gl.append(out)
        return cls(gl, obj.get("name", ""))

    @classmethod
    def load(cls, path) -> "Triangulation":
        with open(path, encoding="utf-8") as fh:
            return cls.from_text(fh.read())

    def save(self, path):
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.to_text())

    # -- relabeling -------------------------------------------------------

    def relabel(self, tet_map, perms) -> "Triangulation":
        """Rename tetrahedron i to tet_map[i] with vertex k renamed perms[i][k]."""
        t = self.tetra_count
        new = [[None] * 4 for _ in range(t)]
        for i, row in enumerate(self.gluings):
            pi = perms[i]
            for f, e in enumerate(row):
                if e is None:
                    continue
                j, s = e
                new_s = P.compose(perms[j], P.compose(s, P.inverse(pi)))
                new[tet_map[i]][pi[f]] = (tet_map[j], new_s)
        return Triangulation(new, self.name)


class Builder:
    """Mutable helper for assembling gluing tables face by face."""

    def __init__(self, t: int, name: str = ""):
        self.rows = [[None] * 4 for _ in range(t)]
        self.name = name

    def add(self, n: int = 1) -> int:
        first = len(self.rows)
        self.rows.extend([None] * 4 for _ in range(n))
        return first

    def join(self, i: int, f: int, j: int, p):
        p = tuple(p)
        g = p[f]
        if self.rows[i][f] is not None or self.rows[j][g] is not None:
            if self.rows[i][f] == (j, p):
                return
            raise StructuralError(f"face ({i},{f}) or ({j},{g}) already glued")
        self.rows[i][f] = (j, p)
        self.rows[j][g] = (i, P.inverse(p))

    def join_by_names(self, i, names_i, j, names_j, rename=None):
        """Glue the unique faces of i and j whose vertex names correspond.

        ``names_i``/``names_j`` give the four vertex names of each tetrahedron.
        Without ``rename`` the face of i is the one whose three names all occur
        in j.  With ``rename`` (names of i -> names of j) the face of i is the
        one spanned by the three renamed vertices.
        """
        if rename:
            missing = [k for k in range(4) if names_i[k] not in rename]
            img = [rename.get(x) for x in names_i]
        else:
            img = list(names_i)
            missing = [k for k in range(4) if img[k] not in names_j]
        if len(missing) != 1:
            raise StructuralError("names do not determine a unique face")
        f = missing[0]
        p = [None] * 4
        for k in range(4):
            if k != f:
                p[k] = names_j.index(img[k])
        p[f] = ({0, 1, 2, 3} - set(p[k] for k in range(4) if k != f)).pop()
        self.join(i, f, j, p)

    def build(self) -> Triangulation:
        return Triangulation(self.rows, self.name)


class _Perms:
    """Permutations of range(n) as small integers, with composition tables."""

    def __init__(self, n):
        self.perms = list(permutations(range(n)))  # identity first
        where = {q: k for k, q in enumerate(self.perms)}
        self.where = where
        # comp[a][b] is a after b: position k goes to a[b[k]]
        self.comp = [[where[tuple(x[y[k]] for k in range(n))] for y in self.perms] for x in self.perms]
        self.inv = [where[tuple(sorted(range(n), key=x.__getitem__))] for x in self.perms]
        self.odd = [P.sign(x) < 0 if n > 1 else False for x in self.perms]


_PERMS = {n: _Perms(n) for n in (1, 2, 3)}


class _FaceUnion:
    """Union-find over faces of tetrahedra, tracking vertex correspondences.

    Nodes are integers.  The relation stored for a node (an index into
    ``_PERMS[size]``) maps its vertex positions to those of its parent.  A
    class whose cycle of identifications composes to a non-identity map is
    flagged as twisted.
    """

    def __init__(self, count, size):
        self.parent = list(range(count))
        self.rel = [0] * count
        self.twisted = set()
        self.reversed = set()
        self.tables = _PERMS[size]

    def find(self, x):
        parent, rel, comp = self.parent, self.rel, self.tables.comp
        path = []
        while parent[x] != x:
            path.append(x)
            x = parent[x]
        root = x
        for node in reversed(path):
            par = parent[node]
            if par != root:
                rel[node] = comp[rel[par]][rel[node]]
            parent[node] = root
        return root

    def union(self, x, y, m):
        """Identify x with y, position k of x matching position m[k] of y."""
        rx, ry = self.find(x), self.find(y)
        tb = self.tables
        to_ry = tb.comp[self.rel[y]][tb.comp[m][tb.inv[self.rel[x]]]]
        if rx == ry:
            if to_ry:
                self.twisted.add(rx)
                if tb.odd[to_ry]:
                    self.reversed.add(rx)
            return
        self.parent[rx] = ry
        self.rel[rx] = to_ry
        if rx in self.twisted:
            self.twisted.add(ry)
        if rx in self.reversed:
            self.reversed.add(ry)


@dataclass
class FaceClass:
    members: list
    twisted: bool = False      # identified with itself by a non-identity map
    reversed: bool = False     # ... by an odd map (orientation reversing)


@dataclass
class LinkSummary:
    euler: int
    orientable: bool
    closed: bool
    triangles: int

    @property
    def kind(self) -> str:
        if not self.closed:
            return "boundary"
        if self.euler == 2:
            return "material"
        if self.euler == 0 and self.orientable:
            return "ideal"
        return "invalid"


@lru_cache(maxsize=None)
def _face_images(k, f, p):
    """(face index, image face index, position map) for each k-face of the glued face f."""
    faces = FACES_BY_DIM[k]
    where = _PERMS[k + 1].where
    out = []
    for s, S in enumerate(faces):
        if f in S:
            continue
        img = [p[v] for v in S]
        T = tuple(sorted(img))
        out.append((s, faces.index(T), where[tuple(T.index(x) for x in img)]))
    return tuple(out)


class _LazyByDim:
    """Per-dimension view of a skeleton that builds dimension k on first access."""

    def __init__(self, sk, slot):
        self.sk = sk
        self.slot = slot

    def __getitem__(self, k):
        built = self.sk._built
        if k not in built:
            built[k] = self.sk._build(k)
        return built[k][self.slot]


class Skeleton:
    """Quotient classes of vertices, edges and triangles, plus vertex links."""

    def __init__(self, tri: Triangulation):
        self.tri = tri
        # each dimension is built on first use; move code often needs only one
        self._built = {}
        self.classes = _LazyByDim(self, 0)
        self.index = _LazyByDim(self, 1)

    @cached_property
    def vertex_links(self) -> list:
        return [self._link(c) for c in range(len(self.classes[0]))]

    def _build(self, k):
        t = self.tri.tetra_count
        faces = FACES_BY_DIM[k]
        nf = len(faces)
        uf = _FaceUnion(t * nf, k + 1)
        for i, row in enumerate(self.tri.gluings):
            for f, e in enumerate(row):
                if e is None:
                    continue
                j, p = e
                for s, u, m in _face_images(k, f, p):
                    uf.union(i * nf + s, j * nf + u, m)
        perms = uf.tables.perms
        roots = {}
        classes = []
        index = {}
        for i in range(t):
            for s, S in enumerate(faces):
                r = uf.find(i * nf + s)
                if r not in roots:
                    roots[r] = len(classes)
                    classes.append(FaceClass([], r in uf.twisted, r in uf.reversed))
                c = roots[r]
                classes[c].members.append((i, S))
                index[(i, S)] = (c, perms[uf.rel[i * nf + s]])
        return classes, index

    def vertex_class(self, i, v) -> int:
        return self.index[0][(i, (v,))][0]

    def edge_class(self, i, a, b) -> int:
        return self.index[1][(i, tuple(sorted((a, b))))][0]

    def triangle_class(self, i, f) -> int:
        return self.index[2][(i, tuple(x for x in range(4) if x != f))][0]

    @property
    def vertices(self):
        return self.classes[0]

    @property
    def edges(self):
        return self.classes[1]

    @property
    def triangles(self):
        return self.classes[2]

    def _link(self, c) -> LinkSummary:
        corners = [(i, S[0]) for i, S in self.classes[0][c].members]
        cset = set(corners)
        edges = {}
        closed = True
        for i, v in corners:
            for f in range(4):
                if f == v:
                    continue
                e = self.tri.gluings[i][f]
                if e is None:
                    closed = False
                    edges[(i, v, f)] = None
                    continue
                j, p = e
                edges[min((i, v, f), (j, p[v], p[f]))] = None
        # link vertices are edge ends; the edge classes already identify them,
        # and a reversed edge class has its two ends identified
        ends = set()
        eindex, eclasses = self.index[1], self.classes[1]
        for i, v in corners:
            for w in range(4):
                if w != v:
                    S = (v, w) if v < w else (w, v)
                    ec, rel = eindex[(i, S)]
                    ends.add((ec, 0 if eclasses[ec].reversed else rel[S.index(v)]))
        V = len(ends)
        chi = V - len(edges) + len(corners)
        # orientability by sign propagation over corner triangles
        signs = {corners[0]: 1}
        stack = [corners[0]]
        orientable = True
        while stack:
            i, v = stack.pop()
            for f in range(4):
                e = self.tri.gluings[i][f]
                if f == v or e is None:
                    continue
                j, p = e
                nb = (j, p[v])
                want = -P.sub_parity(p, v) * signs[(i, v)]
                if nb not in signs:
                    signs[nb] = want
                    stack.append(nb)
                elif signs[nb] != want:
                    orientable = False
        assert set(signs) <= cset
        return LinkSummary(chi, orientable, closed, len(corners))

    def components(self) -> list[list[int]]:
        t = self.tri.tetra_count
        seen = [False] * t
        comps = []
        for s in range(t):
            if seen[s]:
                continue
            comp, stack = [], [s]
            seen[s] = True
            while stack:
                i = stack.pop()
                comp.append(i)
                for e in self.tri.gluings[i]:
                    if e is not None and not seen[e[0]]:
                        seen[e[0]] = True
                        stack.append(e[0])
            comps.append(sorted(comp))
        return comps


def orientation(tri: Triangulation):
    """Per-tetrahedron signs making every gluing orientation-reversing, or None.

    Each component is anchored with +1 at its lowest-index tetrahedron.
    """
    t = tri.tetra_count
    signs = [0] * t
    for s in range(t):
        if signs[s]:
            continue
        signs[s] = 1
        stack = [s]
        while stack:
            i = stack.pop()
            for e in tri.gluings[i]:
                if e is None:
                    continue
                j, p = e
                want = -P.sign(p) * signs[i]
                if signs[j] == 0:
                    signs[j] = want
                    stack.append(j)
                elif signs[j] != want:
                    return None
    return signs


def oriented_labeling(tri: Triangulation) -> tuple[Triangulation, list]:
    """Relabel negatively signed tetrahedra by swapping vertices 2 and 3.

    Returns the relabeled triangulation (every gluing permutation odd) and the
    per-tetrahedron vertex maps used.  Raises NotOrientable via caller checks.
    """
    signs = orientation(tri)
    if signs is None:
        return None, None
    swap = P.transposition(2, 3)
    perms = [P.IDENTITY if s > 0 else swap for s in signs]
    return tri.relabel(list(range(tri.tetra_count)), perms), perms


@dataclass
class ValidationReport:
    is_manifold: bool
    closed: bool
    cusped: bool
    orientable: bool
    connected: bool
    vertex_kinds: list
    vertex_links: list
    boundary_faces: list
    reversed_edges: list
    problems: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    orientation: list | None = None

    def as_dict(self) -> dict:
        return {
            "is_manifold": self.is_manifold,
            "closed": self.closed,
            "cusped": self.cusped,
            "orientable": self.orientable,
            "connected": self.connected,
            "vertex_classes": [
                {"kind": k, "euler": L.euler, "orientable": L.orientable, "triangles": L.triangles}
                for k, L in zip(self.vertex_kinds, self.vertex_links)
            ],
            "boundary_faces": [list(x) for x in self.boundary_faces],
            "reversed_edges": self.reversed_edges,
            "problems": self.problems,
            "counts": self.counts,
        }


def validate(tri: Triangulation) -> ValidationReport:
    """Decide whether ``tri`` is a closed or cusped (torus-link) 3-manifold.

    Material vertices have sphere links and ideal vertices have torus links;
    anything else (boundary, projective planes, Klein bottles, higher genus,
    edges identified with themselves in reverse) makes ``is_manifold`` false.
    """
    sk = tri.skeleton
    kinds = [L.kind for L in sk.vertex_links]
    problems = []
    bfaces = tri.boundary_faces()
    if bfaces:
        problems.append(f"{len(bfaces)} boundary faces")
    for c, k in enumerate(kinds):
        if k in ("invalid", "boundary"):
            L = sk.vertex_links[c]
            problems.append(f"vertex class {c}: link euler={L.euler} orientable={L.orientable} closed={L.closed}")
    rev = [c for c, ec in enumerate(sk.edges) if ec.reversed]
    for c in rev:
        problems.append(f"edge class {c} identified with itself in reverse")
    signs = orientation(tri)
    comps = sk.components()
    ok = not problems and tri.tetra_count > 0
    return ValidationReport(
        is_manifold=ok,
        closed=ok and all(k == "material" for k in kinds),
        cusped=ok and any(k == "ideal" for k in kinds),
        orientable=signs is not None,
        connected=len(comps) == 1,
        vertex_kinds=kinds,
        vertex_links=sk.vertex_links,
        boundary_faces=bfaces,
        reversed_edges=rev,
        problems=problems,
        counts={
            "tetrahedra": tri.tetra_count,
            "triangles": len(sk.triangles),
            "edges": len(sk.edges),
            "vertices": len(sk.vertices),
        },
        orientation=signs,
    )


def require_valid(tri: Triangulation) -> ValidationReport:
    rep = validate(tri)
    if not rep.is_manifold:
        raise StructuralError("not a closed or cusped 3-manifold: " + "; ".join(rep.problems))
    return rep


def barycentric_subdivide(tri: Triangulation) -> Triangulation:
    """Split every tetrahedron into 24 along its barycentric flags.

    New tetrahedron ``24*i + k`` corresponds to the k-th permutation ``pi`` of
    ``ALL_PERMS``; its vertex ``m`` is the barycenter of the face of ``i``
    spanned by ``pi[0..m]``.  All new gluings preserve vertex type, so the
    result is a genuine simplicial-style Delta complex.
    """
    t = tri.tetra_count
    rows = [[None] * 4 for _ in range(24 * t)]
    idx = P.PERM_INDEX
    for i in range(t):
        for pi in P.ALL_PERMS:
            me = 24 * i + idx[pi]
            for k in range(3):
                q = list(pi)
                q[k], q[k + 1] = q[k + 1], q[k]
                rows[me][k] = (24 * i + idx[tuple(q)], P.IDENTITY)
            e = tri.gluings[i][pi[3]]
            if e is not None:
                j, s = e
                img = tuple(s[v] for v in pi)
                rows[me][3] = (24 * j + idx[img], P.IDENTITY)
    return Triangulation(rows, (tri.name + "-bary") if tri.name else "")
