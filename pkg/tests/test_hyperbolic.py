from __future__ import annotations

import math
import random
from dataclasses import replace
from functools import lru_cache

import mpmath
import numpy as np
import pytest

from oracles import ideal_tetrahedron_volume, lobachevsky, regular_truncated_bound
from threefold import perm as P
from threefold.errors import (
    CannotCertify,
    DegenerateShape,
    NonConvergence,
    NotIdeal,
    NotOrientable,
    ZeroConstantTerm,
)
from threefold.fixtures import cyclic_cover, fixture
from threefold.hyperbolic import (
    REGULAR,
    CInterval,
    Distinct,
    Inconclusive,
    IsomorphicTriangulations,
    ShapeVector,
    ball_volume,
    bloch_wigner,
    bloch_wigner_interval,
    build_gluing_system,
    certify,
    compare,
    cusp_shapes,
    evaluate,
    ibound,
    injectivity_radius_lower_bound,
    injectivity_report,
    newton_solve,
    root_magnitude_bounds,
    symmetries,
    truncated_cell,
    volume,
)
from threefold.hyperbolic.gluing import corner_shape
from threefold.moves import apply_move, enumerate_moves
from threefold.triangulation import Builder, Triangulation

GIESEKING = [(0, "1203"), (0, "2013"), (0, "0231"), (0, "0312")]
COVER_LABELS = (0, 1, 4, 3)  # a Z/5 cover of m003 with five cusps


def solved(tri, eps=1e-6):
    sys = build_gluing_system(tri)
    return tri, certify(sys, newton_solve(sys), eps)


@lru_cache(maxsize=None)
def fixture_solution(name):
    return solved(fixture(name))


@lru_cache(maxsize=None)
def cover_solution():
    return solved(cyclic_cover(fixture("m003"), COVER_LABELS, 5))


def disjoint_union(a: Triangulation, b: Triangulation) -> Triangulation:
    bb = Builder(a.tetra_count + b.tetra_count)
    for off, tri in ((0, a), (a.tetra_count, b)):
        for i, row in enumerate(tri.gluings):
            for f, (j, p) in enumerate(row):
                bb.join(i + off, f, j + off, p)
    return bb.build()


def relabeled(tri, seed):
    rng = random.Random(seed)
    tm = list(range(tri.tetra_count))
    rng.shuffle(tm)
    return tri.relabel(tm, [rng.choice(P.ALL_PERMS) for _ in tm])


# -- gluing equations -----------------------------------------------------------------


def test_m004_edge_rows_vanish_exactly_at_regular_shapes():
    sys = build_gluing_system(fixture("m004"))
    assert len(sys.edge_rows) == 2 and sys.t == 2
    with mpmath.workdps(50):
        w = mpmath.exp(1j * mpmath.pi / 3)
        for r in sys.edge_rows:
            val = sum(a * mpmath.log(w) + b * mpmath.log(1 - w) for a, b in zip(r.a, r.b)) - 1j * mpmath.pi * r.c
            assert abs(val) < mpmath.mpf(10) ** -45


@pytest.mark.parametrize("name", ["m004", "m003"])
def test_edge_row_columns_count_corners(name):
    sys = build_gluing_system(fixture(name))
    for j in range(sys.t):
        assert sum(r.a[j] for r in sys.edge_rows) == 0
        assert sum(r.b[j] for r in sys.edge_rows) == 0
    # six corners per tetrahedron; two of them of type 2 carry i pi each
    degree = sum(len(e.members) for e in sys.oriented.skeleton.edges)
    assert degree == 6 * sys.t
    assert sum(2 - r.c for r in sys.edge_rows) == 2 * sys.t


@pytest.mark.parametrize("name", ["m004", "m003"])
def test_edge_rank_is_t_minus_cusps(name):
    sys = build_gluing_system(fixture(name))
    assert sys.edge_rank() == sys.t - len(sys.cusps)
    assert len(sys.reduced_rows()) == sys.t


def test_gieseking_table_is_not_orientable():
    tri = Triangulation([[(j, P.from_string(p)) for j, p in GIESEKING]])
    with pytest.raises(NotOrientable):
        build_gluing_system(tri)


def test_material_vertices_are_rejected():
    with pytest.raises(NotIdeal):
        build_gluing_system(fixture("s3_boundary4simplex"))


def test_cusp_translations_close_up():
    _, sol = fixture_solution("m004")
    for f in evaluate(sol.system, sol.boxes()):
        assert f.re.contains(0.0) and f.im.contains(0.0)


# -- Newton -------------------------------------------------------------------------


def test_m004_default_start_is_the_solution():
    sys = build_gluing_system(fixture("m004"))
    x = newton_solve(sys)
    assert x.iterations == 0
    assert all(abs(z - complex(0.5, math.sqrt(3) / 2)) < 1e-13 for z in x.z)
    assert x.residual < 1e-13 and x.geometric


def test_newton_converges_from_a_perturbed_start():
    sys = build_gluing_system(fixture("m004"))
    x = newton_solve(sys, ShapeVector((REGULAR + 0.1, REGULAR - 0.05j)))
    assert x.iterations > 0
    assert all(abs(z - REGULAR) < 1e-12 for z in x.z)


def test_four_pi_target_fails():
    sys = build_gluing_system(fixture("m004"))
    chosen = [r for r in sys.reduced_rows() if r.kind == "edge"]
    bad = [replace(r, c=r.c + 2) if r in chosen else r for r in sys.edge_rows]
    with pytest.raises((NonConvergence, DegenerateShape)):
        newton_solve(replace(sys, edge_rows=bad))


def test_initial_point_below_the_real_axis_is_rejected():
    sys = build_gluing_system(fixture("m004"))
    with pytest.raises(DegenerateShape):
        newton_solve(sys, ShapeVector((REGULAR.conjugate(), REGULAR)))


def test_two_three_moved_m004_solves_with_the_same_volume():
    tri = fixture("m004")
    mv = next(m for m in enumerate_moves(tri) if m.kind == "2-3")
    _, sol = solved(apply_move(tri, mv))
    assert volume(sol).overlaps(volume(fixture_solution("m004")[1]))


# -- certification --------------------------------------------------------------------


def test_m004_certifies_at_1e6():
    _, sol = fixture_solution("m004")
    assert sol.certified and sol.newton_bound < 1e-6
    assert sol.contraction < 1
    # the equations vanish somewhere in every eps box
    for f in evaluate(sol.system, sol.boxes(sol.epsilon)):
        assert f.re.contains(0.0) and f.im.contains(0.0)


def test_perturbed_point_is_not_certified():
    sys = build_gluing_system(fixture("m004"))
    z = list(newton_solve(sys).z)
    z[0] += 0.3
    with pytest.raises(CannotCertify):
        certify(sys, ShapeVector(z), 1e-6)


@pytest.mark.parametrize("eps", [0.0, -1e-6, math.inf, math.nan])
def test_certify_rejects_non_positive_radius(eps):
    sys = build_gluing_system(fixture("m004"))
    with pytest.raises(ValueError):
        certify(sys, newton_solve(sys), eps)


def test_certification_is_monotone_up_to_the_lipschitz_radius():
    sys = build_gluing_system(fixture("m004"))
    x = newton_solve(sys)
    base = certify(sys, x, 1e-8, lipschitz_radius=1e-3)
    assert base.valid_up_to == 1e-3
    for eps in (1e-7, 1e-5, 1e-4, 1e-3):
        assert certify(sys, x, eps, lipschitz_radius=1e-3).certified


def test_small_perturbation_is_enclosed():
    sys = build_gluing_system(fixture("m004"))
    z = [REGULAR + 1e-9, REGULAR]
    sol = certify(sys, ShapeVector(z), 1e-6)
    assert 1e-9 <= sol.inclusion_radius < 1e-6
    assert all(b.contains(REGULAR) for b in sol.boxes())


# -- volume -------------------------------------------------------------------------


def test_bloch_wigner_matches_the_lobachevsky_oracle_at_the_regular_shape():
    assert abs(bloch_wigner(REGULAR) - 3 * lobachevsky(math.pi / 3)) < 1e-14
    assert abs(bloch_wigner(REGULAR) - 1.0149416064) < 1e-10


def test_bloch_wigner_matches_the_angle_sum_oracle():
    rng = random.Random(5)
    for _ in range(20):
        z = complex(rng.uniform(-2, 3), rng.uniform(0.05, 2))
        assert abs(bloch_wigner(z) - ideal_tetrahedron_volume(z)) < 1e-12


def test_m004_volume_contains_six_lambda_pi_over_three():
    _, sol = fixture_solution("m004")
    v = volume(sol)
    exact = 6 * lobachevsky(math.pi / 3)
    assert v.contains(exact)
    assert v.width < 1e-12
    assert 0 < v.lo and v.hi < sol.system.t * 1.0149416064096537 + 1e-12


def test_corner_cross_ratios_give_equal_volumes():
    rng = random.Random(11)
    for _ in range(10):
        z = complex(rng.uniform(-1, 2), rng.uniform(0.1, 1.5))
        box = CInterval.around(z, 1e-10)
        vals = [bloch_wigner_interval(corner_shape(box, 0, b)) for b in (1, 2, 3)]
        assert vals[0].overlaps(vals[1]) and vals[0].overlaps(vals[2])


def test_conjugate_shape_negates_the_volume():
    z = complex(0.3, 0.7)
    assert abs(bloch_wigner(z.conjugate()) + bloch_wigner(z)) < 1e-15


def test_volume_is_additive_on_disjoint_unions():
    a, b = fixture("m004"), fixture("m003")
    _, su = solved(disjoint_union(a, b))
    total = volume(fixture_solution("m004")[1]) + volume(fixture_solution("m003")[1])
    vu = volume(su)
    assert vu.overlaps(total)
    assert abs(vu.mid - total.mid) < 1e-13


# -- cusp shapes --------------------------------------------------------------------


def test_m004_cusp_shape():
    _, sol = fixture_solution("m004")
    (tau,) = cusp_shapes(sol)
    assert tau.contains(complex(0, 2 * math.sqrt(3)))
    assert tau.im.lo > 0


@pytest.mark.parametrize("which", ["m004", "m003", "cover"])
def test_cusp_shapes_are_reduced(which):
    _, sol = cover_solution() if which == "cover" else fixture_solution(which)
    for tau in cusp_shapes(sol):
        assert tau.im.lo > 0
        assert abs(tau.mid.real) <= 0.5 + 1e-9
        assert abs(tau.mid) >= 1 - 1e-9


def test_cusps_related_by_deck_transformations_have_equal_shapes():
    tri, sol = cover_solution()
    assert len(sol.system.cusps) == 5
    taus = cusp_shapes(sol)
    for tau in taus[1:]:
        assert tau.overlaps(taus[0])
    # the deck transformation moving every tetrahedron up one sheet is a symmetry
    t0 = tri.tetra_count // 5
    deck = tuple((i + t0) % tri.tetra_count for i in range(tri.tetra_count))
    assert any(m.tet_map == deck and all(p == P.IDENTITY for p in m.perms) for m, _ in symmetries(tri, sol))


# -- injectivity radius ------------------------------------------------------------------


def test_regular_cell_matches_the_closed_form_oracle():
    cell = truncated_cell(REGULAR, [1 / 8] * 4)
    assert cell.embedded
    got = ibound(cell.volume, cell.diameter())
    assert abs(got - regular_truncated_bound(1 / 8)) < 1e-12


def test_m004_injectivity_bound():
    _, sol = fixture_solution("m004")
    rep = injectivity_report(sol)
    # the maximal cusp of m004 has area 2 sqrt 3, so n = 0 embeds and 2^-1 is used
    assert rep.exponent == 1
    b = injectivity_radius_lower_bound(sol)
    assert b > 0
    # every cell is a regular tetrahedron with caps of area 1/16
    assert abs(b - regular_truncated_bound(1 / 16)) < 1e-12
    assert b == pytest.approx(0.0004879401836669027, rel=1e-9)


def test_bound_decreases_with_diameter():
    for ell in (0.5, 1.0, 2.0, 3.0):
        assert ibound(1.0, 2 * ell) < ibound(1.0, ell)
    assert ball_volume(1.0) == pytest.approx(math.pi * (math.sinh(2) - 2))


def test_regular_caps_embed_exactly_below_the_threshold_area():
    # a cap of area a has side s with s^2 = 4a / sqrt 3 and the edges to
    # infinity keep positive length while s^2 < 1
    edge = math.sqrt(3) / 4
    assert truncated_cell(REGULAR, [edge * 0.99] * 4).embedded
    assert not truncated_cell(REGULAR, [edge * 1.01] * 4).embedded


# -- root bounds --------------------------------------------------------------------


def test_root_bound_examples():
    up, _ = root_magnitude_bounds([1, 0, -2])
    assert up == 3 and all(abs(r) <= up for r in np.roots([1, 0, -2]))
    up, lo = root_magnitude_bounds([1, -1])
    assert (up, lo) == (2, 0.5)


def test_zero_constant_term_has_no_lower_bound():
    with pytest.raises(ZeroConstantTerm):
        root_magnitude_bounds([1, 3, 0])


def test_zero_polynomial_is_rejected():
    with pytest.raises(ValueError):
        root_magnitude_bounds([0, 0])


def test_random_polynomials_against_companion_roots():
    rng = np.random.default_rng(7)
    violations = 0
    for _ in range(1000):
        deg = int(rng.integers(1, 7))
        c = rng.integers(-9, 10, size=deg + 1)
        c[0] = rng.choice([k for k in range(-9, 10) if k])
        c[-1] = rng.choice([k for k in range(-9, 10) if k])
        up, lo = root_magnitude_bounds(c.tolist())
        mods = np.abs(np.linalg.eigvals(np.polynomial.polynomial.polycompanion(c[::-1])))
        if deg == 1:
            mods = np.abs(np.roots(c))
        violations += int(np.sum(mods > float(up) * (1 + 1e-9)) + np.sum(mods < float(lo) * (1 - 1e-9)))
    assert violations == 0


# -- comparison ---------------------------------------------------------------------


def test_m003_and_m004_are_told_apart_by_homology():
    res = compare(fixture_solution("m003"), fixture_solution("m004"))
    assert isinstance(res, Distinct)
    assert res.witness == "homology"
    assert volume(fixture_solution("m003")[1]).overlaps(volume(fixture_solution("m004")[1]))


def test_relabeled_m004_is_isomorphic():
    res = compare(fixture_solution("m004"), solved(relabeled(fixture("m004"), 3)))
    assert isinstance(res, IsomorphicTriangulations)
    assert any(m.orientation_preserving for m in res.maps)


def test_moved_m004_is_inconclusive():
    tri = fixture("m004")
    rng = random.Random(2)
    mv = rng.choice([m for m in enumerate_moves(tri) if m.kind == "2-3"])
    res = compare(fixture_solution("m004"), solved(apply_move(tri, mv)))
    assert isinstance(res, Inconclusive)


def _key(m):
    return m.tet_map, m.perms


@pytest.mark.parametrize("name", ["m004", "m003"])
def test_symmetries_form_a_group(name):
    tri, sol = fixture_solution(name)
    syms = symmetries(tri, sol)
    keys = {_key(m) for m, _ in syms}
    ident = (tuple(range(tri.tetra_count)), tuple(P.IDENTITY for _ in range(tri.tetra_count)))
    assert ident in keys
    assert dict((_key(m), c) for m, c in syms)[ident] is True
    for m, c in syms:
        assert _key(m.inverse()) in keys
        for n, d in syms:
            comp = m.compose(n)
            assert _key(comp) in keys
            assert dict((_key(x), e) for x, e in syms)[_key(comp)] == (c == d)


def test_m004_symmetry_group_order():
    tri, sol = fixture_solution("m004")
    syms = symmetries(tri, sol)
    assert len(syms) == 8
    assert sum(1 for _, c in syms if c) == 4
