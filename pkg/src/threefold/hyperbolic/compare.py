"""Telling certified hyperbolic structures apart, or matching them.

A combinatorial isomorphism between two triangulations is an isometry as
soon as it carries one solution of the gluing equations to the other.  Both
solutions are certified unique inside their epsilon boxes, so it suffices
that the mapped inclusion boxes of one land inside the epsilon boxes of the
other.  Shapes are compared on edges.  An orientation-preserving map keeps
the shape of every edge; an orientation-reversing one keeps the dihedral
angle and reverses orientation, which sends the edge shape s to 1 / conj(s).

These checks only ever accept.  A failed isomorphism search says nothing
about homeomorphism, so it gives Inconclusive.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .. import perm as P
from ..homology import homology
from ..isosig import Isomorphism, isomorphisms
from ..triangulation import Triangulation
from .certify import CertifiedSolution
from .gluing import corner_shape
from .interval import CInterval
from .invariants import cusp_shapes, volume


@dataclass
class Distinct:
    witness: str  # first invariant that separated the inputs
    details: dict
    witnesses: list = field(default_factory=list)  # every separating invariant

    def as_dict(self) -> dict:
        return {"result": "distinct", "witness": self.witness, "witnesses": self.witnesses, "details": self.details}


@dataclass
class IsomorphicTriangulations:
    maps: list  # Isomorphism objects with orientation_preserving set

    def as_dict(self) -> dict:
        return {"result": "isomorphic", "maps": [m.as_dict() for m in self.maps]}


@dataclass
class Inconclusive:
    reason: str

    def as_dict(self) -> dict:
        return {"result": "inconclusive", "reason": self.reason}


def _modular_images(tau: CInterval) -> list:
    """Images of a reduced modulus that can sit on the boundary of the domain.

    Includes the mirror images -conj(tau), since an orientation-reversing
    homeomorphism conjugates the cusp shape.
    """
    out = []
    for w in (tau, -tau.conj()):
        s = -w.inv()
        out += [w, w + 1, w - 1, s, s + 1, s - 1]
    return out


def _cusp_match(ta: list, tb: list) -> bool:
    """Whether some bijection pairs every cusp of A with an overlapping cusp of B."""
    ok = [[any(x.overlaps(y) for y in _modular_images(b)) for b in tb] for x in ta]
    match = [-1] * len(tb)

    def augment(i, seen):
        for j in range(len(tb)):
            if ok[i][j] and j not in seen:
                seen.add(j)
                if match[j] < 0 or augment(match[j], seen):
                    match[j] = i
                    return True
        return False

    return all(augment(i, set()) for i in range(len(ta)))


def _separating_invariants(tri_a, sol_a, tri_b, sol_b) -> list:
    found = []
    na, nb = len(sol_a.system.cusps), len(sol_b.system.cusps)
    if na != nb:
        found.append(("cusp_count", {"a": na, "b": nb}))
    ha, hb = homology(tri_a).group(1), homology(tri_b).group(1)
    if ha != hb:
        found.append(("homology", {"a": homology(tri_a).format_group(*ha), "b": homology(tri_b).format_group(*hb)}))
    va, vb = volume(sol_a), volume(sol_b)
    if not va.overlaps(vb):
        found.append(("volume", {"a": va.as_strings(), "b": vb.as_strings()}))
    if na == nb:
        ta, tb = cusp_shapes(sol_a), cusp_shapes(sol_b)
        if not _cusp_match(ta, tb):
            found.append(("cusp_shapes", {"a": [x.as_strings() for x in ta], "b": [x.as_strings() for x in tb]}))
    return found


def _shape_compatible(iso: Isomorphism, sol_a: CertifiedSolution, sol_b: CertifiedSolution):
    """Orientation character of ``iso`` if it carries shapes of A into B, else None.

    Works on the oriented labelings the shapes live on.
    """
    qa, qb = sol_a.system.perms, sol_b.system.perms
    boxes_a = sol_a.boxes()
    target = sol_b.boxes(sol_b.epsilon)
    chars = set()
    sigmas = []
    for i, j in enumerate(iso.tet_map):
        sigma = P.compose(qb[j], P.compose(iso.perms[i], P.inverse(qa[i])))
        sigmas.append((i, j, sigma))
        chars.add(P.sign(sigma))
    if len(chars) != 1:
        return None
    preserving = chars == {1}
    for i, j, sigma in sigmas:
        back = P.inverse(sigma)
        s = corner_shape(boxes_a[i], back[0], back[1])
        if not preserving:
            s = s.conj().inv()
        if not target[j].contains(s):
            return None
    return preserving


def compatible_isomorphisms(tri_a, sol_a, tri_b, sol_b) -> list:
    out = []
    for iso in isomorphisms(tri_a, tri_b):
        ch = _shape_compatible(iso, sol_a, sol_b)
        if ch is not None:
            out.append(replace(iso, orientation_preserving=ch))
    return out


def compare(a: tuple, b: tuple):
    """Compare two (Triangulation, CertifiedSolution) pairs.

    Invariants are tried first, in the order cusp count, H_1, volume, cusp
    shapes.  With equal tetrahedron counts the combinatorial isomorphisms are
    then checked against the shapes.
    """
    tri_a, sol_a = a
    tri_b, sol_b = b
    found = _separating_invariants(tri_a, sol_a, tri_b, sol_b)
    if found:
        return Distinct(found[0][0], dict(found), [k for k, _ in found])
    if tri_a.tetra_count != tri_b.tetra_count:
        return Inconclusive("invariants agree and tetrahedron counts differ")
    try:
        maps = compatible_isomorphisms(tri_a, sol_a, tri_b, sol_b)
    except ValueError:
        return Inconclusive("isomorphism search needs connected triangulations")
    if maps:
        return IsomorphicTriangulations(maps)
    return Inconclusive("invariants agree and no combinatorial isomorphism matches the shapes")


def symmetries(tri: Triangulation, sol: CertifiedSolution) -> list:
    """Combinatorial automorphisms carrying the shapes to themselves.

    Returns (Isomorphism, orientation_preserving) pairs.  They form a
    subgroup of the isometry group, which may be larger.
    """
    return [(m, m.orientation_preserving) for m in compatible_isomorphisms(tri, sol, tri, sol)]
