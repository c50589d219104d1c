from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from threefold.errors import NotClosed
from threefold.fixtures import all_fixtures, fixture, lens_space
from threefold.homology import (
    HomologyGroups,
    _matmul,
    chain_complex,
    fundamental_class,
    homology,
    is_chain_complex,
    orientability_and_fundamental_class,
    smith_diagonal,
)

from oracles import homology_oracle, snf_invariants

EXPECTED = {
    "s3_boundary4simplex": ([1, 0, 0, 1], [[], [], [], []]),
    "s3_onetet": ([1, 0, 0, 1], [[], [], [], []]),
    "connected_sum_demo": ([1, 0, 0, 1], [[], [], [], []]),
    "lens_5_1": ([1, 0, 0, 1], [[], [5], [], []]),
    "m004": ([1, 1, 0, 0], [[], [], [], []]),
    "m003": ([1, 1, 0, 0], [[], [5], [], []]),
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_fixture_homology(name):
    h = homology(fixture(name))
    assert (h.betti, h.torsion) == EXPECTED[name]


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_homology_matches_sympy_oracle(name):
    cc = chain_complex(fixture(name))
    assert homology_oracle(cc) == tuple(EXPECTED[name])


def test_boundary_4simplex_d3_has_one_column_per_tetrahedron():
    cc = chain_complex(fixture("s3_boundary4simplex"))
    assert not cc.subdivided
    assert len(cc.d[3][0]) == 5


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_chain_condition(name):
    assert is_chain_complex(chain_complex(fixture(name)))


def test_m004_complex_is_truncated():
    cc = chain_complex(fixture("m004"))
    assert cc.subdivided and cc.truncated
    assert is_chain_complex(cc)
    untrunc = chain_complex(fixture("m004"), truncate=False)
    assert not untrunc.truncated
    assert is_chain_complex(untrunc)


def test_formatting():
    h = homology(fixture("m003"))
    assert str(h).splitlines() == ["H_0 = Z", "H_1 = Z + Z/5", "H_2 = 0", "H_3 = 0"]
    assert HomologyGroups.format_group(3, [2, 4]) == "Z^3 + Z/2 + Z/4"


@pytest.mark.parametrize("p,q", [(3, 1), (4, 1), (7, 2), (8, 3)])
def test_lens_space_h1(p, q):
    h = homology(lens_space(p, q))
    assert h.torsion[1] == [p] and h.betti[1] == 0 and h.betti[3] == 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4), min_size=1, max_size=5))
def test_smith_diagonal_matches_sympy(rows):
    assert smith_diagonal(rows) == snf_invariants(rows)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_smith_diagonal_divisibility_chain(seed):
    rng = random.Random(seed)
    m = [[rng.randint(-20, 20) for _ in range(5)] for _ in range(4)]
    d = smith_diagonal(m)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))


def test_smith_diagonal_large_entries():
    big = 10**30
    assert smith_diagonal([[big, 0], [0, big * 6]]) == [big, 6 * big]
    assert smith_diagonal([[2, 0], [0, 3]]) == [1, 6]


def test_fundamental_class_is_a_cycle():
    for name in ("s3_boundary4simplex", "lens_5_1", "connected_sum_demo", "s3_onetet"):
        tri = fixture(name)
        res = orientability_and_fundamental_class(tri)
        assert res.orientable and res.fundamental_class is not None
        cc = chain_complex(tri)
        prod = _matmul(cc.d[3], [[c] for c in res.fundamental_class])
        assert all(r[0] == 0 for r in prod)


def test_cusped_input_has_no_fundamental_class():
    res = orientability_and_fundamental_class(fixture("m004"))
    assert res.orientable and res.fundamental_class is None
    with pytest.raises(NotClosed):
        fundamental_class(fixture("m004"))


def test_b0_is_one_on_connected_fixtures():
    for tri in all_fixtures().values():
        assert homology(tri).betti[0] == 1
