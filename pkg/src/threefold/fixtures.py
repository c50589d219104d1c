"""Bundled gluing tables.

The census tables (m003, m004, the one-tetrahedron S^3) were found by
exhaustive search over small gluing tables and are identified by their
invariants in the test-suite; the others are generated by construction.
"""
from __future__ import annotations

from pathlib import Path

from .perm import compose, from_string, inverse
from .triangulation import Builder, Triangulation


def boundary_4simplex() -> Triangulation:
    """The boundary of the 4-simplex: five tetrahedra, a 3-sphere."""
    names = [tuple(v for v in range(5) if v != k) for k in range(5)]
    b = Builder(5, "s3_boundary4simplex")
    for a in range(5):
        for face in range(4):
            if b.rows[a][face] is not None:
                continue
            missing = names[a][face]  # global vertex absent from this face
            b.join_by_names(a, names[a], missing, names[missing])
    return b.build()


def lens_space(p: int, q: int, name: str | None = None) -> Triangulation:
    """L(p, q) from a p-tetrahedron bipyramid with a q/p twist.

    Tetrahedron k has vertices (N, S, E_k, E_{k+1}) around the axis NS; the
    top triangle (N, E_k, E_{k+1}) is glued to the bottom triangle
    (S, E_{k+q}, E_{k+q+1}).
    """
    if p < 3:
        raise ValueError("the bipyramid construction needs p >= 3")
    names = [("N", "S", f"E{k}", f"E{(k + 1) % p}") for k in range(p)]
    b = Builder(p, name or f"lens_{p}_{q}")
    for k in range(p):
        prev = (k - 1) % p
        b.join_by_names(k, names[k], prev, names[prev])
    for k in range(p):
        tgt = (k + q) % p
        ren = {"N": "S", f"E{k}": f"E{tgt}", f"E{(k + 1) % p}": f"E{(tgt + 1) % p}"}
        b.join_by_names(k, names[k], tgt, names[tgt], rename=ren)
    return b.build()


def connected_sum(a: Triangulation, b: Triangulation, name: str = "") -> Triangulation:
    """Remove the last tetrahedron of each summand and glue the two holes.

    Each hole is bounded by the four faces that were glued to the removed
    tetrahedron; hole faces are matched through the removed tetrahedra's own
    labels, so vertex v of the hole in ``a`` meets vertex v of the hole in
    ``b``.  The removed tetrahedra must have four distinct neighbours.
    """
    ra, rb = a.tetra_count - 1, b.tetra_count - 1
    for tri, r in ((a, ra), (b, rb)):
        if len({e[0] for e in tri.gluings[r]}) != 4 or any(e[0] == r for e in tri.gluings[r]):
            raise ValueError("removed tetrahedron must be glued to four distinct others")
    off = ra
    bb = Builder(ra + rb, name)
    for tri, r, shift in ((a, ra, 0), (b, rb, off)):
        for i in range(r):
            for f, e in enumerate(tri.gluings[i]):
                if e is not None and e[0] != r and bb.rows[i + shift][f] is None:
                    bb.join(i + shift, f, e[0] + shift, e[1])
    for f in range(4):
        ja, pa = a.gluings[ra][f]
        jb, pb = b.gluings[rb][f]
        bb.join(ja, pa[f], jb + off, compose(pb, inverse(pa)))
    return bb.build()


def face_pairs(tri: Triangulation) -> list:
    """Glued face pairs, each as its smaller (tetrahedron, face) end, sorted."""
    return sorted({min((i, f), (e[0], e[1][f])) for i, row in enumerate(tri.gluings) for f, e in enumerate(row) if e})


def cyclic_cover(tri: Triangulation, labels, n: int, name: str = "") -> Triangulation:
    """The n-sheeted cover given by a Z/n label on each glued face pair.

    ``labels[k]`` belongs to ``face_pairs(tri)[k]``: crossing that pair from
    its smaller end moves up ``labels[k]`` sheets.  Copy s of tetrahedron i is
    tetrahedron i + s t.  The result is an unbranched cover only when the
    labels sum to zero around every edge; otherwise validation rejects it.
    """
    pairs = face_pairs(tri)
    if len(labels) != len(pairs):
        raise ValueError(f"expected {len(pairs)} labels, got {len(labels)}")
    t = tri.tetra_count
    bb = Builder(n * t, name or f"{tri.name}_cover{n}")
    for (i, f), e in zip(pairs, labels):
        j, p = tri.gluings[i][f]
        for s in range(n):
            bb.join(i + s * t, f, j + ((s + e) % n) * t, p)
    return bb.build()


# Gluing rows found by exhaustive search; see tests/test_fixtures.py.
_CENSUS = {
    "m004": [
        [(1, "1023"), (1, "0213"), (1, "0132"), (1, "3120")],
        [(0, "3120"), (0, "1023"), (0, "0213"), (0, "0132")],
    ],
    "m003": [
        [(1, "1023"), (1, "2031"), (1, "0132"), (1, "1302")],
        [(0, "1302"), (0, "1023"), (0, "2031"), (0, "0132")],
    ],
    "s3_onetet": [
        [(0, "1023"), (0, "1023"), (0, "0132"), (0, "0132")],
    ],
}


def _census(name: str) -> Triangulation:
    rows = [[(j, from_string(p)) for j, p in row] for row in _CENSUS[name]]
    return Triangulation(rows, name)


def fixture(name: str) -> Triangulation:
    if name == "s3_boundary4simplex":
        return boundary_4simplex()
    if name == "lens_5_1":
        return lens_space(5, 1, "lens_5_1")
    if name == "connected_sum_demo":
        s = boundary_4simplex()
        return connected_sum(s, s, "connected_sum_demo")
    if name in _CENSUS:
        return _census(name)
    raise KeyError(f"unknown fixture {name!r}")


FIXTURE_NAMES = ["s3_boundary4simplex", "m003", "m004", "lens_5_1", "connected_sum_demo", "s3_onetet"]


def all_fixtures() -> dict:
    return {n: fixture(n) for n in FIXTURE_NAMES}


def write_fixtures(directory) -> list[Path]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, tri in all_fixtures().items():
        path = out / name
        tri.save(path)
        paths.append(path)
    return paths
