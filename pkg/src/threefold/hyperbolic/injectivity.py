"""Packing lower bound for the injectivity radius of a truncated structure.

Each ideal tetrahedron is truncated along horospheres.  The horospherical
cross-section of every cusp is scaled to a common area 2^-m, with m one more
than the least n >= 0 for which area 2^-n gives embedded sections.  For a
truncated cell with volume V and diameter at most l the bound is

    r > V / (2 Vol B(l + 1)),      Vol B(R) = pi (sinh 2R - 2R),

minimised over the cells.

Geometry of one cell: put one ideal vertex at infinity with its horosphere
at height 1, so the other three vertices sit at the corners of the
horospherical triangle at that vertex.  A finite vertex a with horoball of
Euclidean diameter d_a sees the horocyclic arc d_a / |a - b| between its
edges to infinity and to b, which fixes d_a from the cusp development.

Embeddedness used here: in every tetrahedron the four caps are pairwise
disjoint (every truncated edge length is positive) and no cap reaches the
opposite face.  Then each horoball lies in the open star of its centre, and
two horoballs can only meet inside a tetrahedron incident to both.

Diameter: horoballs are convex, so the part of the tetrahedron on the
vertex side of the plane through a cap's three corners lies inside the
horoball.  Hence the truncated cell sits inside the convex polyhedron
spanned by its twelve truncation points, and distance is convex, so that
polyhedron's diameter is the largest distance between two of the points.  The volume of a truncated cell is
D(z) minus half the horospherical area of its four caps (a cap over a
horospherical triangle of area a has volume a / 2).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .certify import CertifiedSolution
from .gluing import GluingSystem, corner_shape, develop_cusp
from .invariants import bloch_wigner

MAX_N = 64


def ball_volume(r: float) -> float:
    return math.pi * (math.sinh(2 * r) - 2 * r)


def ibound(cell_volume: float, diameter: float) -> float:
    """The packing bound V / (2 Vol B(l + 1))."""
    return cell_volume / (2 * ball_volume(diameter + 1))


def hyperbolic_distance(p, q) -> float:
    """Distance between (complex x, height y) points of upper half space."""
    (x1, y1), (x2, y2) = p, q
    return math.acosh(1 + (abs(x1 - x2) ** 2 + (y1 - y2) ** 2) / (2 * y1 * y2))


def _triangle_area(a, b, c) -> float:
    return abs(((b - a).conjugate() * (c - a)).imag) / 2


@dataclass
class CellGeometry:
    tet: int
    shape: complex
    ideal_volume: float
    cap_areas: list  # horospherical area of the cap at each vertex
    positions: dict  # vertex -> complex position with vertex 0 at infinity
    diameters: dict  # finite vertex -> Euclidean horoball diameter
    edge_lengths: dict  # (a, b) -> truncated length
    circumradius_ok: bool

    @property
    def volume(self) -> float:
        return self.ideal_volume - 0.5 * sum(self.cap_areas)

    @property
    def embedded(self) -> bool:
        return self.circumradius_ok and all(x > 0 for x in self.edge_lengths.values())

    def points(self) -> list:
        """The twelve truncation points (position, height)."""
        p, d = self.positions, self.diameters
        out = [(p[w], 1.0) for w in (1, 2, 3)]
        for a in (1, 2, 3):
            out.append((p[a], d[a]))
            for b in (1, 2, 3):
                if b == a:
                    continue
                L = abs(p[b] - p[a])
                da = d[a]
                x = L * da * da / (da * da + L * L)
                y = L * L * da / (da * da + L * L)
                out.append((p[a] + (p[b] - p[a]) / L * x, y))
        return out

    def diameter(self) -> float:
        pts = self.points()
        return max(hyperbolic_distance(p, q) for k, p in enumerate(pts) for q in pts[k + 1 :])


def vertex_triangle(z: complex, v: int, area: float) -> tuple:
    """Side lengths and circumradius of the horospherical triangle at vertex v.

    The angle at corner w is arg of the shape on edge vw; by the law of
    sines the side opposite w is 2R sin(angle at w) with R fixed by the area.
    Returns ({frozenset(b, c): length}, R).
    """
    others = [w for w in range(4) if w != v]
    ang = {w: cmath.phase(corner_shape(z, min(v, w), max(v, w))) for w in others}
    prod = math.sin(ang[others[0]]) * math.sin(ang[others[1]]) * math.sin(ang[others[2]])
    R = math.sqrt(area / (2 * prod))
    sides = {}
    for w in others:
        b, c = (x for x in others if x != w)
        sides[frozenset((b, c))] = 2 * R * math.sin(ang[w])
    return sides, R


def truncated_cell(z: complex, areas, tet: int = 0) -> CellGeometry:
    """A tetrahedron of shape z with horospherical caps of the given areas."""
    z = complex(z)
    if not z.imag > 0:
        raise ValueError("shape must have positive imaginary part")
    tris = [vertex_triangle(z, v, areas[v]) for v in range(4)]
    ok = all(R < 1 for _, R in tris)
    s0 = tris[0][0]
    l12, l13, l23 = s0[frozenset((1, 2))], s0[frozenset((1, 3))], s0[frozenset((2, 3))]
    # place the triangle at infinity: p1 = 0, p2 on the real axis
    cos1 = (l12 * l12 + l13 * l13 - l23 * l23) / (2 * l12 * l13)
    p = {1: 0j, 2: complex(l12), 3: l13 * complex(cos1, math.sqrt(max(0.0, 1 - cos1 * cos1)))}
    d = {}
    for a in (1, 2, 3):
        b = next(x for x in (1, 2, 3) if x != a)
        d[a] = tris[a][0][frozenset((0, b))] * abs(p[a] - p[b])
    lengths = {}
    for a in (1, 2, 3):
        lengths[(0, a)] = math.log(1 / d[a])
        for b in range(a + 1, 4):
            lengths[(a, b)] = math.log(abs(p[a] - p[b]) ** 2 / (d[a] * d[b]))
    return CellGeometry(tet, z, bloch_wigner(z), list(areas), p, d, lengths, ok)


def cell_geometries(sys: GluingSystem, z, area: float) -> list:
    """Truncated cells with every cusp cross-section scaled to ``area``."""
    caps = {}
    for c in range(len(sys.cusps)):
        pos = develop_cusp(sys, c, z)["pos"]
        raw = {key: _triangle_area(*tri_pos.values()) for key, tri_pos in pos.items()}
        total = sum(raw.values())
        for key, a in raw.items():
            caps[key] = a * area / total
    return [truncated_cell(z[i], [caps[(i, v)] for v in range(4)], i) for i in range(sys.t)]


def truncation_exponent(sys: GluingSystem, z) -> int:
    """The least n >= 0 for which cross-sections of area 2^-n are embedded."""
    for n in range(MAX_N):
        if all(c.embedded for c in cell_geometries(sys, z, 2.0**-n)):
            return n
    raise ValueError("no embedded horospherical truncation found")


@dataclass
class InjectivityReport:
    bound: float
    exponent: int  # truncation area is 2^-exponent
    cells: list

    def as_dict(self) -> dict:
        return {
            "lower_bound": self.bound,
            "truncation_area": f"2^-{self.exponent}",
            "cells": [
                {"tet": c.tet, "volume": c.volume, "diameter_bound": c.diameter(), "bound": ibound(c.volume, c.diameter())}
                for c in self.cells
            ],
        }


def injectivity_report(sol: CertifiedSolution, tri=None) -> InjectivityReport:
    sys = sol.system
    z = sol.shapes.z
    n = truncation_exponent(sys, z) + 1
    cells = cell_geometries(sys, z, 2.0**-n)
    bound = min(ibound(c.volume, c.diameter()) for c in cells)
    return InjectivityReport(bound, n, cells)


def injectivity_radius_lower_bound(sol: CertifiedSolution, tri=None) -> float:
    """Lower bound on the injectivity radius of the truncated manifold.

    ``tri`` is accepted for symmetry with the other operations; the
    triangulation is the one the solution was certified for.
    """
    if tri is not None and tri is not sol.system.tri and tri != sol.system.tri:
        raise ValueError("solution was certified for a different triangulation")
    return injectivity_report(sol).bound
