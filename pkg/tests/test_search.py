from __future__ import annotations

from threefold.fixtures import fixture
from threefold.isosig import iso_signature
from threefold.moves import PachnerMove, apply_move, scramble
from threefold.search import MovePath, NotFoundWithinBounds, move_search


def test_single_move_apart():
    a = fixture("s3_boundary4simplex")
    b = apply_move(a, PachnerMove("2-3", (0, 0)))
    res = move_search(a, b, max_tetra=8, max_depth=3)
    assert isinstance(res, MovePath) and len(res) == 1
    assert iso_signature(res.replay(a)) == iso_signature(b)


def test_identical_inputs_give_empty_path():
    a = fixture("m004")
    res = move_search(a, a, 4, 2)
    assert isinstance(res, MovePath) and len(res) == 0


def test_sphere_and_cusped_never_meet():
    res = move_search(fixture("s3_boundary4simplex"), fixture("m004"), max_tetra=6, max_depth=4)
    assert isinstance(res, NotFoundWithinBounds)
    assert res.as_dict()["found"] is False


def test_two_scrambles_of_one_fixture_connect():
    base = fixture("s3_boundary4simplex")
    a, _ = scramble(base, 5, seed=1, max_tetra=8)
    b, _ = scramble(base, 5, seed=2, max_tetra=8)
    res = move_search(a, b, max_tetra=9, max_depth=10)
    assert isinstance(res, MovePath) and len(res) <= 10
    assert iso_signature(res.replay(a)) == iso_signature(b)


def test_backward_only_path_replays():
    # b is three moves from a; the search must invert and transport b's moves
    a = fixture("lens_5_1")
    b, _ = scramble(a, 3, seed=9, max_tetra=8)
    res = move_search(a, b, max_tetra=8, max_depth=6)
    assert isinstance(res, MovePath)
    assert iso_signature(res.replay(a)) == iso_signature(b)


def test_depth_cap_is_respected():
    a = fixture("s3_boundary4simplex")
    b, _ = scramble(a, 4, seed=3, max_tetra=9)
    res = move_search(a, b, max_tetra=9, max_depth=0)
    assert isinstance(res, NotFoundWithinBounds) or iso_signature(a) == iso_signature(b)
