"""Pachner (bistellar) moves on generalized triangulations.

Every move removes a ball made of distinct tetrahedra and fills its boundary
sphere with a different set of tetrahedra.  Vertices of the ball get abstract
names; old and new tetrahedra are matched face by face through those names,
and external gluings are re-routed through the matching.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from . import perm as P
from .errors import MoveNotApplicable
from .triangulation import Triangulation

KINDS = ("1-4", "4-1", "2-3", "3-2")
TETRA_DELTA = {"1-4": 3, "4-1": -3, "2-3": 1, "3-2": -1}


@dataclass(frozen=True)
class PachnerMove:
    """A move and the simplex it acts on.

    ``location`` is ``(tet,)`` for 1-4, ``(tet, face)`` for 2-3,
    ``(tet, a, b)`` for 3-2 and ``(tet, vertex)`` for 4-1; enumeration always
    reports the lexicographically least representative of the simplex class.
    """

    kind: str
    location: tuple

    def as_list(self) -> list:
        return [self.kind, list(self.location)]

    @classmethod
    def from_list(cls, obj) -> "PachnerMove":
        return cls(obj[0], tuple(obj[1]))

    def __str__(self):
        return f"{self.kind}@{','.join(map(str, self.location))}"


def _replace(tri: Triangulation, names: dict, new_tets: list) -> Triangulation:
    removed = sorted(names)
    t = tri.tetra_count
    kept = [i for i in range(t) if i not in names]
    newidx = {old: k for k, old in enumerate(kept)}
    base = len(kept)
    rows = [[None] * 4 for _ in range(base + len(new_tets))]

    def key(nm, pos):
        return frozenset(nm[:pos] + nm[pos + 1:])

    new_faces = {}
    for m, nm in enumerate(new_tets):
        for w in range(4):
            new_faces.setdefault(key(nm, w), []).append((m, w))
    old_faces = {}
    for r in removed:
        for f in range(4):
            old_faces.setdefault(key(names[r], f), []).append((r, f))

    for i in kept:
        for f, e in enumerate(tri.gluings[i]):
            if e is not None and e[0] not in names:
                rows[newidx[i]][f] = (newidx[e[0]], e[1])

    def to_new(r, f):
        """New (tet, face) replacing boundary face (r, f), and vertex map."""
        (m, w), = new_faces[key(names[r], f)]
        nm = new_tets[m]
        psi = [0] * 4
        for y in range(4):
            psi[y] = w if y == f else nm.index(names[r][y])
        return m, tuple(psi)

    for m, nm in enumerate(new_tets):
        for w in range(4):
            K = key(nm, w)
            mates = new_faces[K]
            if len(mates) == 2:
                (m2, w2), = [x for x in mates if x != (m, w)]
                p = tuple(w2 if x == w else new_tets[m2].index(nm[x]) for x in range(4))
                rows[base + m][w] = (base + m2, p)
                continue
            olds = old_faces.get(K, [])
            if len(olds) != 1 or len(mates) != 1:
                raise MoveNotApplicable("boundary of the replaced ball does not match")
            (r, f), = olds
            phi = tuple(f if x == w else names[r].index(nm[x]) for x in range(4))
            e = tri.gluings[r][f]
            if e is None:
                continue
            j, s = e
            if j in names:
                m2, psi = to_new(j, s[f])
                rows[base + m][w] = (base + m2, P.compose(psi, P.compose(s, phi)))
            else:
                g = P.compose(s, phi)
                rows[base + m][w] = (newidx[j], g)
                rows[newidx[j]][s[f]] = (base + m, P.inverse(g))
    return Triangulation(rows, tri.name)


# -- local configurations --------------------------------------------------


def _config_14(tri, loc):
    (i,) = loc
    if not 0 <= i < tri.tetra_count:
        raise MoveNotApplicable("no such tetrahedron")
    nm = ("V0", "V1", "V2", "V3")
    new = [tuple("C" if k == l else nm[k] for k in range(4)) for l in range(4)]
    return {i: nm}, new, PachnerMove("4-1", (None, 0))


def _config_23(tri, loc):
    i, a = loc
    e = tri.gluings[i][a]
    if e is None:
        raise MoveNotApplicable("2-3 needs an interior triangle")
    j, s = e
    if j == i:
        raise MoveNotApplicable("2-3 needs two distinct tetrahedra")
    ni = ["N" if x == a else f"P{x}" for x in range(4)]
    nj = [None] * 4
    for x in range(4):
        nj[s[x]] = "S" if x == a else f"P{x}"
    tri_v = [x for x in range(4) if x != a]
    new = []
    for k in range(3):
        pair = [tri_v[q] for q in range(3) if q != k]
        new.append(("N", "S", f"P{pair[0]}", f"P{pair[1]}"))
    return {i: tuple(ni), j: tuple(nj)}, new, PachnerMove("3-2", (None, 0, 1))


def _config_32(tri, loc):
    i, u, v = loc
    a, b = [x for x in range(4) if x not in (u, v)]
    names = {i: {u: "N", v: "S", a: "P0", b: "P1"}}
    cur = i
    # walk around the edge: leave through the face opposite ``out``, meeting ``fresh``
    for out, fresh in (("P0", "P2"), ("P1", "P0")):
        opp = [x for x in range(4) if names[cur][x] == out][0]
        e = tri.gluings[cur][opp]
        if e is None:
            raise MoveNotApplicable("edge meets the boundary")
        j, s = e
        if j in names:
            raise MoveNotApplicable("3-2 needs three distinct tetrahedra")
        nm = {s[x]: names[cur][x] for x in range(4) if x != opp}
        nm[s[opp]] = fresh
        names[j] = nm
        cur = j
    opp = [x for x in range(4) if names[cur][x] == "P2"][0]
    e = tri.gluings[cur][opp]
    if e is None or e[0] != i:
        raise MoveNotApplicable("edge does not have degree 3")
    s = e[1]
    if any(names[i][s[x]] != names[cur][x] for x in range(4) if x != opp):
        raise MoveNotApplicable("edge does not have degree 3")
    full = {t: tuple(nm[x] for x in range(4)) for t, nm in names.items()}
    new = [("N", "P0", "P1", "P2"), ("S", "P0", "P1", "P2")]
    return full, new, PachnerMove("2-3", (None, 0))


def _config_41(tri, loc):
    i, c = loc
    sk = tri.skeleton
    vc = sk.vertex_class(i, c)
    members = [(k, S[0]) for k, S in sk.vertices[vc].members]
    tets = [k for k, _ in members]
    if len(members) != 4 or len(set(tets)) != 4:
        raise MoveNotApplicable("4-1 needs a vertex of degree 4 in four distinct tetrahedra")
    if sk.vertex_links[vc].kind != "material":
        raise MoveNotApplicable("4-1 needs a material vertex")
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            x = parent[x]
        return x

    for k, ck in members:
        nbrs = set()
        for f in range(4):
            if f == ck:
                continue
            e = tri.gluings[k][f]
            if e is None:
                raise MoveNotApplicable("vertex star meets the boundary")
            j, s = e
            nbrs.add(j)
            for w in range(4):
                if w not in (ck, f):
                    ra, rb = find((k, w)), find((j, s[w]))
                    if ra != rb:
                        parent[ra] = rb
        if k in nbrs or len(nbrs) != 3:
            raise MoveNotApplicable("vertex star is not embedded")
    cls = {}
    names = {}
    for k, ck in members:
        nm = []
        for w in range(4):
            if w == ck:
                nm.append("C")
            else:
                nm.append("W%d" % cls.setdefault(find((k, w)), len(cls)))
        names[k] = tuple(nm)
    if len(cls) != 4 or any(len(set(nm)) != 4 for nm in names.values()):
        raise MoveNotApplicable("vertex star is not embedded")
    if len({frozenset(nm) for nm in names.values()}) != 4:
        raise MoveNotApplicable("vertex star is not embedded")
    return names, [("W0", "W1", "W2", "W3")], PachnerMove("1-4", (None,))


_CONFIG = {"1-4": _config_14, "2-3": _config_23, "3-2": _config_32, "4-1": _config_41}


def _prepare(tri, mv):
    if mv.kind not in _CONFIG:
        raise MoveNotApplicable(f"unknown move kind {mv.kind!r}")
    try:
        return _CONFIG[mv.kind](tri, mv.location)
    except (IndexError, ValueError, TypeError, KeyError) as exc:
        raise MoveNotApplicable(f"bad location {mv.location}: {exc}") from None


def apply_move_with_inverse(tri: Triangulation, mv: PachnerMove):
    """Apply ``mv``; also return the move on the result that undoes it."""
    names, new, inv = _prepare(tri, mv)
    out = _replace(tri, names, new)
    base = tri.tetra_count - len(names)
    inv = PachnerMove(inv.kind, (base,) + inv.location[1:])
    return out, canonical_move(out, inv)


def apply_move(tri: Triangulation, mv: PachnerMove) -> Triangulation:
    names, new, _ = _prepare(tri, mv)
    return _replace(tri, names, new)


def is_applicable(tri: Triangulation, mv: PachnerMove) -> bool:
    try:
        _prepare(tri, mv)
    except MoveNotApplicable:
        return False
    return True


def canonical_move(tri: Triangulation, mv: PachnerMove) -> PachnerMove:
    """Replace the location by the least representative of its simplex class."""
    sk = tri.skeleton
    loc = mv.location
    if mv.kind == "1-4":
        return mv
    if mv.kind == "2-3":
        c = sk.triangle_class(*loc)
        i, S = min(sk.triangles[c].members)
        return PachnerMove("2-3", (i, ({0, 1, 2, 3} - set(S)).pop()))
    if mv.kind == "3-2":
        c = sk.edge_class(*loc)
        i, S = min(sk.edges[c].members)
        return PachnerMove("3-2", (i,) + S)
    c = sk.vertex_class(*loc)
    i, S = min(sk.vertices[c].members)
    return PachnerMove("4-1", (i, S[0]))


def enumerate_moves(tri: Triangulation) -> list[PachnerMove]:
    """All applicable moves, one per simplex class, 1-4 first."""
    sk = tri.skeleton
    out = [PachnerMove("1-4", (i,)) for i in range(tri.tetra_count)]
    for cls in sk.triangles:
        if len(cls.members) != 2:
            continue
        (i, S), (j, _) = sorted(cls.members)
        if i != j:
            out.append(PachnerMove("2-3", (i, ({0, 1, 2, 3} - set(S)).pop())))
    for cls in sk.edges:
        if len(cls.members) != 3 or len({m[0] for m in cls.members}) != 3:
            continue
        i, S = min(cls.members)
        mv = PachnerMove("3-2", (i,) + S)
        if is_applicable(tri, mv):
            out.append(mv)
    for cls in sk.vertices:
        if len(cls.members) != 4:
            continue
        i, S = min(cls.members)
        mv = PachnerMove("4-1", (i, S[0]))
        if is_applicable(tri, mv):
            out.append(mv)
    return out


def random_move(tri: Triangulation, rng: random.Random, max_tetra: int | None = None) -> PachnerMove:
    moves = enumerate_moves(tri)
    if max_tetra is not None:
        moves = [m for m in moves if tri.tetra_count + TETRA_DELTA[m.kind] <= max_tetra] or moves
    return rng.choice(moves)


def scramble(tri: Triangulation, steps: int, seed: int, max_tetra: int | None = None):
    """Apply ``steps`` seeded random moves; return the result and the moves."""
    rng = random.Random(seed)
    path = []
    for _ in range(steps):
        mv = random_move(tri, rng, max_tetra)
        tri = apply_move(tri, mv)
        path.append(mv)
    return tri, path
