from __future__ import annotations

import pytest

from threefold import perm as P
from threefold.errors import StructuralError
from threefold.fixtures import FIXTURE_NAMES, all_fixtures, fixture, write_fixtures
from threefold.homology import homology
from threefold.triangulation import (
    Builder,
    Triangulation,
    barycentric_subdivide,
    orientation,
    oriented_labeling,
    require_valid,
    validate,
)


def test_boundary_4simplex_is_closed_orientable():
    rep = validate(fixture("s3_boundary4simplex"))
    assert rep.is_manifold and rep.closed and rep.orientable
    assert rep.vertex_kinds == ["material"] * 5
    assert rep.counts == {"tetrahedra": 5, "triangles": 10, "edges": 10, "vertices": 5}


def test_m004_has_one_torus_cusp():
    rep = validate(fixture("m004"))
    assert rep.is_manifold and rep.cusped and not rep.closed and rep.orientable
    assert rep.vertex_kinds == ["ideal"]
    link = rep.vertex_links[0]
    assert (link.euler, link.orientable, link.triangles) == (0, True, 8)


def test_single_free_tetrahedron_reports_four_boundary_faces():
    rep = validate(Triangulation([[None] * 4]))
    assert not rep.is_manifold
    assert rep.boundary_faces == [(0, 0), (0, 1), (0, 2), (0, 3)]


def test_involution_violation_is_structural_error():
    with pytest.raises(StructuralError):
        Triangulation([[(0, P.from_string("1023")), None, None, None]])
    with pytest.raises(StructuralError):
        Triangulation([[(1, P.IDENTITY), None, None, None]])


def test_face_glued_to_itself_by_identity_is_rejected():
    with pytest.raises(StructuralError):
        Triangulation([[(0, P.IDENTITY), None, None, None]])


def test_reversed_edge_is_invalid():
    # fold face 0 onto face 1 with vertices 2,3 swapped: edge 23 is reversed
    s = P.from_string("1032")
    tri = Triangulation([[(0, s), (0, P.inverse(s)), (0, P.from_string("0132")), (0, P.from_string("0132"))]])
    rep = validate(tri)
    assert not rep.is_manifold


def test_all_fixtures_validate():
    for name, tri in all_fixtures().items():
        assert validate(tri).is_manifold, name


def test_fixture_file_round_trip_is_byte_identical(tmp_path):
    paths = write_fixtures(tmp_path)
    assert sorted(p.name for p in paths) == sorted(FIXTURE_NAMES)
    for path in paths:
        text = path.read_text(encoding="utf-8")
        tri = Triangulation.load(path)
        assert tri.to_text() == text
        assert Triangulation.from_text(text) == tri
        assert tri.name == path.name


def test_text_format_fields():
    import json

    obj = json.loads(fixture("m004").to_text())
    assert set(obj) == {"name", "tetrahedra", "gluings"}
    assert obj["tetrahedra"] == 2
    assert obj["gluings"][0][0] == [1, "1023"]


def test_m004_has_exactly_two_tetrahedra():
    assert fixture("m004").tetra_count == 2


def test_orientation_signs_make_gluings_reversing():
    for tri in all_fixtures().values():
        signs = orientation(tri)
        assert signs is not None
        for i, row in enumerate(tri.gluings):
            for e in row:
                j, p = e
                assert signs[j] == -P.sign(p) * signs[i]


def test_oriented_labeling_has_only_odd_gluings():
    tri, _ = oriented_labeling(fixture("lens_5_1"))
    assert all(P.sign(e[1]) == -1 for row in tri.gluings for e in row)


def test_subdivision_sizes_and_homology():
    s = fixture("s3_boundary4simplex")
    sub = barycentric_subdivide(s)
    assert sub.tetra_count == 120
    assert validate(sub).closed
    assert str(homology(sub)) == str(homology(s))


def test_subdivision_is_simplicial():
    sub = barycentric_subdivide(fixture("s3_boundary4simplex"))
    sk = sub.skeleton
    seen = set()
    for k, classes in ((1, sk.edges), (2, sk.triangles)):
        for cls in classes:
            i, S = cls.members[0]
            key = (k, frozenset(sk.vertex_class(i, v) for v in S))
            assert len(key[1]) == len(S)
            assert key not in seen
            seen.add(key)
    tets = {frozenset(sk.vertex_class(i, v) for v in range(4)) for i in range(sub.tetra_count)}
    assert len(tets) == sub.tetra_count


def test_subdivision_of_m004_keeps_one_cusp():
    rep = validate(barycentric_subdivide(fixture("m004")))
    assert rep.counts["tetrahedra"] == 48
    assert rep.vertex_kinds.count("ideal") == 1
    assert rep.cusped


def test_double_subdivision_of_one_tetrahedron():
    tri = barycentric_subdivide(barycentric_subdivide(fixture("s3_onetet")))
    assert tri.tetra_count == 576
    assert validate(tri).closed


def test_builder_matches_named_faces():
    b = Builder(2)
    b.join_by_names(0, "abcd", 1, "abce")
    tri_rows = b.rows
    assert tri_rows[0][3] == (1, P.IDENTITY)


def test_require_valid_raises_on_boundary():
    with pytest.raises(StructuralError):
        require_valid(Triangulation([[None] * 4]))
