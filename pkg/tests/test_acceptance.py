"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
"""
from __future__ import annotations

import math
import random
import sys
import time

import numpy as np
import pytest
import sympy as sp

from oracles import extreme_rays_by_support, indecomposable, lattice_points, lobachevsky, regular_truncated_bound
from threefold import perm as P
from threefold.errors import CannotCertify
from threefold.fixtures import FIXTURE_NAMES, fixture
from threefold.homology import homology
from threefold.hyperbolic import (
    Distinct,
    IsomorphicTriangulations,
    ShapeVector,
    build_gluing_system,
    certify,
    compare,
    ibound,
    injectivity_radius_lower_bound,
    injectivity_report,
    newton_solve,
    root_magnitude_bounds,
    symmetries,
    volume,
)
from threefold.isosig import iso_signature
from threefold.moves import apply_move, apply_move_with_inverse, random_move, scramble
from threefold.normal import (
    find_essential_sphere_candidates,
    fundamental_solutions,
    matching_system,
    vertex_solutions,
)
from threefold.search import MovePath, move_search
from threefold.triangulation import validate



def _report(n, title, fn, limit, capsys=None):
    """Run one criterion, print its line, and fail on error or timeout."""
    t0 = time.perf_counter()
    err = None
    detail = ""
    try:
        detail = fn() or ""
    except AssertionError as exc:
        err = exc
    elapsed = time.perf_counter() - t0
    ok = err is None and elapsed < limit
    status = "PASS" if ok else "FAIL"
    why = detail if err is None else f"assertion failed: {err}"
    if err is None and not ok:
        why = f"{detail}; took {elapsed:.1f} s, limit {limit} s"
    line = f"criterion {n} [{status}] {title} ({elapsed:.2f} s / {limit} s) {why}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    if err is not None:
        raise err
    assert elapsed < limit, f"criterion {n} took {elapsed:.1f} s (limit {limit} s)"


# -- 1 ------------------------------------------------------------------------------


def check_1():
    times = []
    for name, want in (
        ("s3_boundary4simplex", ([1, 0, 0, 1], [[], [], [], []])),
        ("lens_5_1", ([1, 0, 0, 1], [[], [5], [], []])),
    ):
        t0 = time.perf_counter()
        tri = fixture(name)
        rep = validate(tri)
        assert rep.is_manifold and rep.closed and rep.orientable, name
        h = homology(tri)
        assert (h.betti, h.torsion) == want, (name, h.betti, h.torsion)
        times.append(time.perf_counter() - t0)
    t0 = time.perf_counter()
    m004 = fixture("m004")
    rep = validate(m004)
    assert rep.cusped and rep.vertex_kinds == ["ideal"]
    assert rep.vertex_links[0].euler == 0 and rep.vertex_links[0].orientable
    assert homology(m004).group(1) == (1, [])
    times.append(time.perf_counter() - t0)
    assert max(times) < 1.0, times
    return f"S^3 (Z,0,0,Z), L(5,1) H1=Z/5, m004 H1=Z with one torus cusp; slowest {max(times):.3f} s"


def test_criterion_1_validation_and_homology(capsys):
    _report(1, "validation & homology", check_1, 3, capsys)


# -- 2 ------------------------------------------------------------------------------


def check_2():
    bases = {name: fixture(name) for name in ("s3_boundary4simplex", "lens_5_1")}
    ref = {name: (homology(t).betti, homology(t).torsion) for name, t in bases.items()}
    steps = 0
    for k in range(200):
        name = "s3_boundary4simplex" if k % 2 == 0 else "lens_5_1"
        rng = random.Random(k)
        tri = bases[name]
        for _ in range(rng.randint(1, 50)):
            mv = random_move(tri, rng, max_tetra=12)
            new, inv = apply_move_with_inverse(tri, mv)
            assert iso_signature(apply_move(new, inv)) == iso_signature(tri), (k, mv)
            rep = validate(new)
            assert rep.is_manifold and rep.closed and rep.orientable, (k, mv)
            h = homology(new)
            assert (h.betti, h.torsion) == ref[name], (k, mv)
            tri = new
            steps += 1
    return f"200 sequences, {steps} moves, zero failures"


def test_criterion_2_pachner_invariance(capsys):
    _report(2, "Pachner invariance suite", check_2, 60, capsys)


# -- 3 ------------------------------------------------------------------------------


def check_3():
    base = fixture("s3_boundary4simplex")
    lengths = []
    for seed in range(50):
        target, _ = scramble(base, 1 + seed % 5, seed=seed, max_tetra=9)
        res = move_search(base, target, max_tetra=10, max_depth=10)
        assert isinstance(res, MovePath), seed
        assert iso_signature(res.replay(base)) == iso_signature(target), seed
        lengths.append(len(res))
    return f"50/50 paths found, lengths {min(lengths)}..{max(lengths)}"


def test_criterion_3_move_search_certificates(capsys):
    _report(3, "move-search certificates", check_3, 120, capsys)


# -- 4 ------------------------------------------------------------------------------


def check_4():
    names = [n for n in FIXTURE_NAMES if fixture(n).tetra_count <= 2]
    for name in names:
        ms = matching_system(fixture(name))
        n = ms.columns
        assert set(vertex_solutions(ms)) == extreme_rays_by_support(ms.rows, n), name
        want = indecomposable(lattice_points(ms.rows, n, 20))
        assert set(fundamental_solutions(ms, 20)) == want, name
    cs = find_essential_sphere_candidates(fixture("connected_sum_demo"), 10)
    assert len(cs) >= 1
    assert find_essential_sphere_candidates(fixture("s3_boundary4simplex"), 20) == []
    return f"oracles agree on {', '.join(names)}; connected sum has {len(cs)} candidate spheres, S^3 none"


def test_criterion_4_normal_surface_oracles(capsys):
    _report(4, "normal-surface oracle equivalence", check_4, 300, capsys)


# -- 5 ------------------------------------------------------------------------------


def _exact_rows_vanish(sys_):
    # z = 1/2 + (sqrt 3 / 2) i = exp(i pi / 3) and 1 - z = exp(-i pi / 3) exactly
    w = sp.Rational(1, 2) + sp.sqrt(3) / 2 * sp.I
    for value, angle in ((w, sp.pi / 3), (1 - w, -sp.pi / 3)):
        assert sp.expand(sp.exp(sp.I * angle).rewrite(sp.cos) - value) == 0
    log_z, log_1mz = sp.log(sp.exp(sp.I * sp.pi / 3)), sp.log(sp.exp(-sp.I * sp.pi / 3))
    assert (log_z, log_1mz) == (sp.I * sp.pi / 3, -sp.I * sp.pi / 3)
    for r in sys_.all_rows():
        val = sum(a * log_z + b * log_1mz for a, b in zip(r.a, r.b)) - sp.I * sp.pi * r.c
        assert sp.simplify(val) == 0, r


def check_5():
    sys_ = build_gluing_system(fixture("m004"))
    x = newton_solve(sys_)
    target = complex(0.5, np.sqrt(3) / 2)
    assert all(abs(z - target) < 1e-12 for z in x.z)
    _exact_rows_vanish(sys_)
    sol = certify(sys_, x, 1e-6)
    assert sol.certified
    v = volume(sol)
    assert v.width < 1e-9
    assert v.contains(6 * lobachevsky(math.pi / 3))
    return f"shapes within 1e-12, certified, volume {v} (width {v.width:.1e}) contains 6 Lambda(pi/3)"


def test_criterion_5_certified_structure(capsys):
    _report(5, "certified hyperbolic structure", check_5, 10, capsys)


# -- 6 ------------------------------------------------------------------------------


def check_6():
    sys_ = build_gluing_system(fixture("m004"))
    z = list(newton_solve(sys_).z)
    far = [z[0] + 0.3, z[1]]
    with pytest.raises(CannotCertify):
        certify(sys_, ShapeVector(far), 1e-6)
    near = [z[0] + 1e-9, z[1]]
    sol = certify(sys_, ShapeVector(near), 1e-6)
    assert sol.certified
    return f"0.3 rejected; 1e-9 certified with inclusion radius {sol.inclusion_radius:.2e}"


def test_criterion_6_certification_soundness(capsys):
    _report(6, "certification soundness", check_6, 10, capsys)


# -- 7 ------------------------------------------------------------------------------


def check_7():
    sys_ = build_gluing_system(fixture("m004"))
    sol = certify(sys_, newton_solve(sys_), 1e-6)
    b = injectivity_radius_lower_bound(sol)
    rep = injectivity_report(sol)
    # each cusp triangle gets area 2^-exponent / 8 (eight triangles per cusp)
    oracle = regular_truncated_bound(2.0 ** -rep.exponent / 8)
    assert b > 0
    assert abs(b - oracle) < 1e-12, (b, oracle)
    cell = rep.cells[0]
    ells = np.linspace(0.1, 2 * cell.diameter(), 50)
    vals = [ibound(cell.volume, ell) for ell in ells]
    assert all(x > y for x, y in zip(vals, vals[1:]))
    return f"bound {b!r} matches closed form (diff {abs(b - oracle):.1e}); decreasing in diameter"


def test_criterion_7_injectivity_radius(capsys):
    _report(7, "injectivity radius", check_7, 5, capsys)


# -- 8 ------------------------------------------------------------------------------


def _solved(tri):
    sys_ = build_gluing_system(tri)
    return tri, certify(sys_, newton_solve(sys_), 1e-6)


def check_8():
    m003, m004 = _solved(fixture("m003")), _solved(fixture("m004"))
    assert volume(m003[1]).overlaps(volume(m004[1]))
    res = compare(m003, m004)
    assert isinstance(res, Distinct) and res.witness == "homology", res
    rng = random.Random(8)
    tm = [1, 0]
    relabeled = fixture("m004").relabel(tm, [rng.choice(P.ALL_PERMS) for _ in tm])
    res2 = compare(m004, _solved(relabeled))
    assert isinstance(res2, IsomorphicTriangulations)
    assert any(m.orientation_preserving for m in res2.maps)
    syms = symmetries(*m004)
    keys = {(m.tet_map, m.perms) for m, _ in syms}
    for m, _ in syms:
        inv = m.inverse()
        assert (inv.tet_map, inv.perms) in keys
        for n, _ in syms:
            c = m.compose(n)
            assert (c.tet_map, c.perms) in keys
    return f"m003/m004 distinct by H1; relabeled m004 isomorphic ({len(res2.maps)} maps); {len(syms)} symmetries closed"


def test_criterion_8_comparison(capsys):
    _report(8, "comparison", check_8, 30, capsys)


# -- 9 ------------------------------------------------------------------------------


def check_9():
    rng = np.random.default_rng(2024)
    violations = 0
    nonzero = [k for k in range(-9, 10) if k]
    for _ in range(1000):
        deg = int(rng.integers(1, 7))
        c = rng.integers(-9, 10, size=deg + 1)
        c[0] = rng.choice(nonzero)
        c[-1] = rng.choice(nonzero)
        up, lo = root_magnitude_bounds(c.tolist())
        # companion matrix of the monic polynomial c / c[0]
        comp = np.zeros((deg, deg))
        comp[0, :] = -c[1:] / c[0]
        if deg > 1:
            comp[1:, :-1] = np.eye(deg - 1)
        mods = np.abs(np.linalg.eigvals(comp))
        violations += int(np.sum(mods > float(up) * (1 + 1e-9)) + np.sum(mods < float(lo) * (1 - 1e-9)))
    assert violations == 0
    return "1000 polynomials, zero violations"


def test_criterion_9_root_bounds(capsys):
    _report(9, "root bounds", check_9, 10, capsys)


if __name__ == "__main__":
    failed = 0
    for fn in [
        test_criterion_1_validation_and_homology,
        test_criterion_2_pachner_invariance,
        test_criterion_3_move_search_certificates,
        test_criterion_4_normal_surface_oracles,
        test_criterion_5_certified_structure,
        test_criterion_6_certification_soundness,
        test_criterion_7_injectivity_radius,
        test_criterion_8_comparison,
        test_criterion_9_root_bounds,
    ]:
        try:
            fn(None)
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
