"""Normal coordinates and the matching equations.

Each tetrahedron contributes seven coordinates: triangles ``T0..T3`` (the
triangle cutting off vertex k) followed by quadrilaterals ``Q0..Q2`` where
``Q0`` separates {0,1} from {2,3}, ``Q1`` separates {0,2} from {1,3} and
``Q2`` separates {0,3} from {1,2}.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..triangulation import Triangulation, require_valid

QUAD_PAIRS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def quad_type(a: int, b: int) -> int:
    """The quadrilateral type that puts vertices a and b on the same side."""
    for q, (s, t) in enumerate(QUAD_PAIRS):
        if {a, b} == set(s) or {a, b} == set(t):
            return q
    raise ValueError("a and b must be distinct vertices")


def tri_index(i: int, v: int) -> int:
    return 7 * i + v


def quad_index(i: int, q: int) -> int:
    return 7 * i + 4 + q


def coordinate_name(k: int) -> str:
    i, r = divmod(k, 7)
    return f"T{r}[{i}]" if r < 4 else f"Q{r - 4}[{i}]"


@dataclass
class MatchingSystem:
    """Integer rows A with A v = 0 for every normal surface vector v.

    ``rows[r]`` matches the arcs cutting off one corner of one interior
    triangle class; ``labels[r]`` records ``(tet, face, corner)``.
    """

    tri: Triangulation
    rows: list
    labels: list

    @property
    def columns(self) -> int:
        return 7 * self.tri.tetra_count

    def apply(self, v) -> list[int]:
        return [sum(c * x for c, x in zip(row, v)) for row in self.rows]

    def is_solution(self, v) -> bool:
        return all(x >= 0 for x in v) and not any(self.apply(v))


def matching_system(tri: Triangulation) -> MatchingSystem:
    require_valid(tri)
    n = 7 * tri.tetra_count
    rows, labels = [], []
    for i, row in enumerate(tri.gluings):
        for f, e in enumerate(row):
            if e is None:
                continue
            j, s = e
            if (j, s[f]) < (i, f):
                continue  # each interior triangle once
            for a in range(4):
                if a == f:
                    continue
                r = [0] * n
                r[tri_index(i, a)] += 1
                r[quad_index(i, quad_type(a, f))] += 1
                r[tri_index(j, s[a])] -= 1
                r[quad_index(j, quad_type(s[a], s[f]))] -= 1
                if any(r):
                    rows.append(r)
                    labels.append((i, f, a))
    return MatchingSystem(tri, rows, labels)


def vertex_link_vector(tri: Triangulation, vertex_class: int) -> list[int]:
    v = [0] * (7 * tri.tetra_count)
    for i, S in tri.skeleton.vertices[vertex_class].members:
        v[tri_index(i, S[0])] += 1
    return v


def vertex_link_vectors(tri: Triangulation) -> list[list[int]]:
    return [vertex_link_vector(tri, c) for c in range(len(tri.skeleton.vertices))]


def is_admissible(v) -> bool:
    """Non-negative with at most one quadrilateral type per tetrahedron."""
    if any(x < 0 for x in v):
        return False
    for i in range(len(v) // 7):
        if sum(1 for q in range(3) if v[7 * i + 4 + q]) > 1:
            return False
    return True
