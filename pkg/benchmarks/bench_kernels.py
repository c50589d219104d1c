"""Time the pure-Python and compiled kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat N]
"""
from __future__ import annotations

import argparse
import random
import time

from threefold import _kernels_py
from threefold.fixtures import fixture
from threefold.isosig import _flat
from threefold.triangulation import barycentric_subdivide


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_canonical_key(impl, J, S, t):
    def run():
        best = None
        for start in range(t):
            for pi in range(24):
                r = impl.canonical_key(J, S, start, pi, best)
                if r is not None:
                    best = r[0]

    return run


def bench_domination(impl, vecs, sols):
    def run():
        for v in vecs:
            impl.dominates_any(v, sols)

    return run


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    impls = {"python": _kernels_py}
    try:
        from threefold import _speedups

        impls["cython"] = _speedups
    except ImportError:
        print("compiled kernels not built; timing the fallback only")

    tri = barycentric_subdivide(fixture("m004"))
    J, S = _flat(tri)
    rng = random.Random(0)
    n = 56
    sols = [[rng.randint(0, 2) for _ in range(n)] for _ in range(300)]
    vecs = [[rng.randint(0, 3) for _ in range(n)] for _ in range(300)]

    rows = []
    for name, impl in impls.items():
        rows.append(
            (
                name,
                _time(bench_canonical_key(impl, J, S, tri.tetra_count), args.repeat),
                _time(bench_domination(impl, vecs, sols), args.repeat),
            )
        )
    print(f"canonical_key: all starts on a {tri.tetra_count}-tetrahedron subdivision")
    print(f"dominates_any: {len(vecs)} vectors against {len(sols)} of length {n}")
    print(f"{'backend':8}  {'canonical_key':>14}  {'dominates_any':>14}")
    for name, a, b in rows:
        print(f"{name:8}  {a:13.4f}s  {b:13.4f}s")
    if len(rows) == 2:
        print(f"{'speedup':8}  {rows[0][1] / rows[1][1]:13.1f}x  {rows[0][2] / rows[1][2]:13.1f}x")


if __name__ == "__main__":
    main()
