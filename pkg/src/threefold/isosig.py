"""Canonical signatures and combinatorial isomorphisms.

A labeling is fixed by choosing a starting tetrahedron and a vertex
permutation for it; a breadth-first walk then forces every other label (a
newly reached tetrahedron is labeled so that the gluing used to reach it reads
as the identity).  The signature is the lexicographically least gluing table
over all starts.  Oriented mode allows only starts that agree with the
orientation in which tetrahedron 0 is positive, so mirror images get
different signatures unless the triangulation admits an orientation-reversing
symmetry.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import perm as P
from .kernels import canonical_key
from .triangulation import Triangulation, orientation

_ALPHA = "abcdefghijklmnopqrstuvwx"  # one letter per permutation index


def _flat(tri: Triangulation):
    J, S = [], []
    for row in tri.gluings:
        for e in row:
            if e is None:
                J.append(-1)
                S.append(0)
            else:
                J.append(e[0])
                S.append(P.PERM_INDEX[e[1]])
    return J, S


def _starts(tri, comp, oriented):
    signs = orientation(tri) if oriented else None
    for s in comp:
        for k, p in enumerate(P.ALL_PERMS):
            if signs is not None and P.sign(p) * signs[s] < 0:
                continue
            yield s, k


@dataclass
class Labeling:
    """A breadth-first relabeling: old tetrahedron ``order[n]`` becomes n."""

    key: list
    order: list
    perms: list


def _best(tri, comp, oriented):
    J, S = _flat(tri)
    best = None
    for s, k in _starts(tri, comp, oriented):
        r = canonical_key(J, S, s, k, best.key if best else None)
        if r is not None and (best is None or r[0] < best.key):
            best = Labeling(*r)
    return best


def _encode(key: list) -> str:
    out = []
    for v in key:
        out.append("_" if v < 0 else f"{v // 24}{_ALPHA[v % 24]}")
    return f"{len(key) // 4};" + ",".join(out)


def _decode_component(text: str) -> list:
    n, body = text.split(";")
    ents = body.split(",") if body else []
    if len(ents) != 4 * int(n):
        raise ValueError("malformed signature")
    key = []
    for ent in ents:
        key.append(-1 if ent == "_" else 24 * int(ent[:-1]) + _ALPHA.index(ent[-1]))
    return key


def iso_signature(tri: Triangulation, oriented: bool = False) -> str:
    """Canonical text for ``tri`` up to relabeling.

    Components are canonized separately and listed in sorted order, joined
    by ``+``.  ``oriented`` is ignored for non-orientable input.
    """
    if tri.tetra_count == 0:
        return "0;"
    comps = tri.skeleton.components()
    parts = sorted(_encode(_best(tri, c, oriented).key) for c in comps)
    return "+".join(parts)


def from_iso_signature(sig: str, name: str = "") -> Triangulation:
    """Rebuild the canonical triangulation a signature describes."""
    rows = []
    if sig == "0;":
        return Triangulation([], name)
    for part in sig.split("+"):
        key = _decode_component(part)
        base = len(rows)
        for n in range(len(key) // 4):
            row = []
            for f in range(4):
                v = key[4 * n + f]
                row.append(None if v < 0 else (base + v // 24, P.ALL_PERMS[v % 24]))
            rows.append(row)
    return Triangulation(rows, name)


def canonical_form(tri: Triangulation, oriented: bool = False):
    """The canonical triangulation of a connected ``tri`` and the map onto it.

    Returns ``(canon, tet_map, perms)`` with ``tri.relabel(tet_map, perms) ==
    canon``.
    """
    comps = tri.skeleton.components()
    if len(comps) != 1:
        raise ValueError("canonical_form needs a connected triangulation")
    lab = _best(tri, comps[0], oriented)
    tet_map, perms = _maps(lab, tri.tetra_count)
    return tri.relabel(tet_map, perms), tet_map, perms


def _maps(lab: Labeling, t: int):
    tet_map = [0] * t
    perms = [P.IDENTITY] * t
    for n, i in enumerate(lab.order):
        tet_map[i] = n
        perms[i] = P.ALL_PERMS[lab.perms[n]]
    return tet_map, perms


@dataclass(frozen=True)
class Isomorphism:
    """Tetrahedron i of the source goes to ``tet_map[i]`` with vertex map ``perms[i]``."""

    tet_map: tuple
    perms: tuple
    orientation_preserving: bool | None

    def apply(self, tri: Triangulation) -> Triangulation:
        return tri.relabel(self.tet_map, self.perms)

    def compose(self, other: "Isomorphism") -> "Isomorphism":
        """``self`` after ``other``."""
        tm = tuple(self.tet_map[other.tet_map[i]] for i in range(len(other.tet_map)))
        pm = tuple(P.compose(self.perms[other.tet_map[i]], other.perms[i]) for i in range(len(other.tet_map)))
        if self.orientation_preserving is None or other.orientation_preserving is None:
            op = None
        else:
            op = self.orientation_preserving == other.orientation_preserving
        return Isomorphism(tm, pm, op)

    def inverse(self) -> "Isomorphism":
        t = len(self.tet_map)
        tm = [0] * t
        pm = [P.IDENTITY] * t
        for i in range(t):
            tm[self.tet_map[i]] = i
            pm[self.tet_map[i]] = P.inverse(self.perms[i])
        return Isomorphism(tuple(tm), tuple(pm), self.orientation_preserving)

    def as_dict(self) -> dict:
        return {
            "tet_map": list(self.tet_map),
            "perms": [P.to_string(p) for p in self.perms],
            "orientation_preserving": self.orientation_preserving,
        }


def _character(x, y, tet_map, perms):
    sx, sy = orientation(x), orientation(y)
    if sx is None or sy is None:
        return None
    return P.sign(perms[0]) * sx[0] * sy[tet_map[0]] > 0


def isomorphisms(x: Triangulation, y: Triangulation) -> list[Isomorphism]:
    """Every combinatorial isomorphism from connected ``x`` onto ``y``."""
    if x.tetra_count != y.tetra_count or x.tetra_count == 0:
        return []
    cy = y.skeleton.components()
    cx = x.skeleton.components()
    if len(cx) != 1 or len(cy) != 1:
        raise ValueError("isomorphisms needs connected triangulations")
    lab_y = _best(y, cy[0], False)
    my, py = _maps(lab_y, y.tetra_count)
    inv_y = {c: j for j, c in enumerate(my)}
    J, S = _flat(x)
    out = []
    for s, k in _starts(x, cx[0], False):
        r = canonical_key(J, S, s, k, lab_y.key)
        if r is None or r[0] != lab_y.key:
            continue
        mx, px = _maps(Labeling(*r), x.tetra_count)
        tm, pm = [], []
        for i in range(x.tetra_count):
            j = inv_y[mx[i]]
            tm.append(j)
            pm.append(P.compose(P.inverse(py[j]), px[i]))
        out.append(Isomorphism(tuple(tm), tuple(pm), _character(x, y, tm, pm)))
    return out


def isomorphism(x: Triangulation, y: Triangulation) -> Isomorphism | None:
    found = isomorphisms(x, y)
    return found[0] if found else None
