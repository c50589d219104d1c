"""Command-line entry point.

Every subcommand is a thin adapter over a library call.  Reports go to
standard output, either as text or (with --json) as a RunReport object whose
``result`` payload is deterministic for fixed inputs and seeds.

Exit codes: 0 on success, 1 on a domain error (its class name is printed),
2 on usage, I/O, or parse errors.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .errors import ThreefoldError
from .triangulation import Triangulation

DEFAULT_SEED = 0
DEFAULT_BOUND = 20
DEFAULT_EPS = 1e-6
DEFAULT_MAX_DEPTH = 10
DEFAULT_MAX_TETRA = 12


class UsageError(Exception):
    """Bad input that is not a domain error: exit code 2."""


@dataclass
class RunReport:
    command: list
    inputs: dict = field(default_factory=dict)  # path -> sha256 of the file bytes
    result: dict = field(default_factory=dict)
    wall_time: float = 0.0
    version: str = __version__

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "wall_time": self.wall_time,
            "version": self.version,
        }


def _load(path: str, report: RunReport) -> Triangulation:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None
    report.inputs[path] = hashlib.sha256(data).hexdigest()
    try:
        return Triangulation.from_text(data.decode("utf-8"))
    except (UnicodeDecodeError, ValueError) as exc:
        raise UsageError(f"cannot parse {path}: {exc}") from None


# -- hyperbolic helpers ---------------------------------------------------------


def _solve(tri: Triangulation, eps: float | None):
    from .hyperbolic import build_gluing_system, certify, newton_solve

    sys_ = build_gluing_system(tri)
    x = newton_solve(sys_)
    sol = certify(sys_, x, eps) if eps is not None else None
    return sys_, x, sol


def _eps(args) -> float:
    eps = DEFAULT_EPS if args.certify is None else args.certify
    if not eps > 0:
        raise UsageError("--certify needs a positive radius")
    return eps


# -- subcommands --------------------------------------------------------------


def cmd_validate(args, rep):
    from .triangulation import validate

    r = validate(_load(args.file, rep))
    text = (
        f"manifold: {r.is_manifold}\nclosed: {r.closed}\ncusped: {r.cusped}\n"
        f"orientable: {r.orientable}\nvertex classes: {', '.join(r.vertex_kinds)}"
    )
    if r.problems:
        text += "\nproblems:\n  " + "\n  ".join(r.problems)
    return r.as_dict(), text


def cmd_homology(args, rep):
    from .homology import homology

    h = homology(_load(args.file, rep))
    return h.as_dict(), str(h)


def cmd_isosig(args, rep):
    from .isosig import iso_signature

    sig = iso_signature(_load(args.file, rep), oriented=args.oriented)
    return {"signature": sig, "oriented": args.oriented}, sig


def cmd_moves(args, rep):
    from .moves import enumerate_moves, scramble
    from .search import move_search

    tri = _load(args.file, rep)
    if args.target:
        target = _load(args.target, rep)
        res = move_search(tri, target, args.max_tetra, args.max_depth)
        out = res.as_dict()
        if out["found"]:
            text = f"path of {len(res)} moves: " + " ".join(str(m) for m in res.moves)
        else:
            text = f"no path within max_tetra={args.max_tetra}, max_depth={args.max_depth}"
        return out, text
    if args.scramble:
        result, path = scramble(tri, args.scramble, args.seed, args.max_tetra)
        out = {
            "seed": args.seed,
            "moves": [m.as_list() for m in path],
            "triangulation": json.loads(result.to_text()),
        }
        return out, result.to_text().rstrip("\n")
    mvs = enumerate_moves(tri)
    counts = {}
    for m in mvs:
        counts[m.kind] = counts.get(m.kind, 0) + 1
    out = {"count": len(mvs), "by_kind": counts, "moves": [m.as_list() for m in mvs]}
    return out, "\n".join(str(m) for m in mvs)


def cmd_normal(args, rep):
    from .normal import (
        find_essential_sphere_candidates,
        find_normal_tori,
        fundamental_solutions,
        is_admissible,
        matching_system,
        reconstruct,
        vertex_solutions,
    )

    tri = _load(args.file, rep)
    if args.action in ("vertex", "fundamental"):
        ms = matching_system(tri)
        vecs = vertex_solutions(ms) if args.action == "vertex" else fundamental_solutions(ms, args.bound)
        # cone vertices may pair two quad types in one tetrahedron; those are
        # reported by coordinates only
        surfaces = [
            {**reconstruct(tri, v).as_dict(), "admissible": True}
            if is_admissible(v)
            else {"coordinates": list(v), "admissible": False, "components": []}
            for v in vecs
        ]
        out = {"count": len(vecs), "surfaces": surfaces}
        if args.action == "fundamental":
            out["bound"] = args.bound
    else:
        finder = find_essential_sphere_candidates if args.action == "spheres" else find_normal_tori
        found = finder(tri, args.bound)
        out = {"bound": args.bound, "count": len(found), "surfaces": [s.as_dict() for s in found]}
    lines = [f"{out['count']} surfaces"]
    for s in out["surfaces"]:
        comps = "; ".join(
            f"chi={c['euler']} {'orientable' if c['orientable'] else 'non-orientable'} {c['kind']}"
            for c in s["components"]
        )
        lines.append(" ".join(map(str, s["coordinates"])) + (f"  [{comps}]" if comps else "  [not admissible]"))
    return out, "\n".join(lines)


def cmd_hyp(args, rep):
    from .hyperbolic import cusp_shapes, injectivity_report, root_magnitude_bounds, volume

    if args.action == "roots":
        try:
            coeffs = [int(c) for c in args.file_or_coeffs]
        except ValueError:
            raise UsageError("coefficients must be integers, highest degree first") from None
        up, lo = root_magnitude_bounds(coeffs)
        return {"upper": str(up), "lower": str(lo)}, f"upper {up}\nlower {lo}"
    if len(args.file_or_coeffs) != 1:
        raise UsageError(f"hyp {args.action} takes exactly one file")
    tri = _load(args.file_or_coeffs[0], rep)
    if args.action == "solve":
        sys_, x, sol = _solve(tri, None if args.certify is None else _eps(args))
        out = {"shapes": x.as_dict(), "certified": sol is not None}
        text = "\n".join(f"z{j} = {z.real!r} + {z.imag!r}i" for j, z in enumerate(x.z))
        text += f"\niterations {x.iterations}, residual {x.residual:.3e}"
        if sol is not None:
            taus = cusp_shapes(sol)
            out["certificate"] = sol.as_dict()
            out["volume"] = volume(sol).as_strings()
            out["cusp_shapes"] = [t.as_strings() for t in taus]
            text += f"\ncertified at eps={sol.epsilon:g}, inclusion radius {sol.inclusion_radius:.3e}"
            text += f"\nvolume {volume(sol)}"
        return out, text
    _, _, sol = _solve(tri, _eps(args))
    if args.action == "volume":
        v = volume(sol)
        return {"volume": v.as_strings(), "epsilon": sol.epsilon}, f"volume {v}"
    r = injectivity_report(sol)
    return r.as_dict(), f"injectivity radius > {r.bound!r} (cusp area 2^-{r.exponent})"


def cmd_compare(args, rep):
    from .hyperbolic import Distinct, IsomorphicTriangulations, compare

    eps = _eps(args)
    a, b = _load(args.file1, rep), _load(args.file2, rep)
    sa, sb = _solve(a, eps)[2], _solve(b, eps)[2]
    res = compare((a, sa), (b, sb))
    if isinstance(res, Distinct):
        text = f"distinct (witness: {res.witness})"
    elif isinstance(res, IsomorphicTriangulations):
        kinds = sorted({"preserving" if m.orientation_preserving else "reversing" for m in res.maps})
        text = f"isometric via {len(res.maps)} combinatorial maps ({', '.join(kinds)})"
    else:
        text = f"inconclusive: {res.reason}"
    return res.as_dict(), text


def cmd_symmetries(args, rep):
    from .hyperbolic import symmetries

    tri = _load(args.file, rep)
    sol = _solve(tri, _eps(args))[2]
    syms = symmetries(tri, sol)
    out = {
        "order": len(syms),
        "preserving": sum(1 for _, c in syms if c),
        "maps": [m.as_dict() for m, _ in syms],
        "complete": False,
    }
    return out, f"{len(syms)} shape-compatible automorphisms ({out['preserving']} orientation-preserving)"


def cmd_fixtures(args, rep):
    from .fixtures import FIXTURE_NAMES, write_fixtures

    if args.directory is None:
        return {"fixtures": FIXTURE_NAMES}, "\n".join(FIXTURE_NAMES)
    try:
        paths = write_fixtures(args.directory)
    except OSError as exc:
        raise UsageError(f"cannot write to {args.directory}: {exc.strerror or exc}") from None
    return {"written": [str(p) for p in paths]}, "\n".join(str(p) for p in paths)


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON RunReport")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"random seed (default {DEFAULT_SEED})")

    p = argparse.ArgumentParser(prog="threefold", description="Decision procedures for triangulated 3-manifolds.")
    p.add_argument("--version", action="version", version=f"threefold {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    s = sub.add_parser("validate", parents=[common], help="check manifold structure")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("homology", parents=[common], help="integral homology groups")
    s.add_argument("file")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("isosig", parents=[common], help="isomorphism signature")
    s.add_argument("file")
    s.add_argument("--oriented", action="store_true", help="distinguish mirror images")
    s.set_defaults(func=cmd_isosig)

    s = sub.add_parser("moves", parents=[common], help="list, scramble, or search Pachner moves")
    s.add_argument("file")
    s.add_argument("--target", help="search for a move path to this triangulation")
    s.add_argument("--scramble", type=int, default=0, metavar="N", help="apply N seeded random moves")
    s.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    s.add_argument("--max-tetra", type=int, default=DEFAULT_MAX_TETRA)
    s.set_defaults(func=cmd_moves)

    s = sub.add_parser("normal", parents=[common], help="normal surfaces")
    s.add_argument("action", choices=["vertex", "fundamental", "spheres", "tori"])
    s.add_argument("file")
    s.add_argument("--bound", type=int, default=DEFAULT_BOUND, help=f"norm bound (default {DEFAULT_BOUND})")
    s.set_defaults(func=cmd_normal)

    s = sub.add_parser("hyp", parents=[common], help="hyperbolic structures")
    s.add_argument("action", choices=["solve", "volume", "inj-radius", "roots"])
    s.add_argument("file_or_coeffs", nargs="+", metavar="file", help="triangulation file (roots: integer coefficients)")
    s.add_argument("--certify", type=float, metavar="EPS", help=f"certification radius (default {DEFAULT_EPS:g})")
    s.set_defaults(func=cmd_hyp)

    s = sub.add_parser("compare", parents=[common], help="compare two hyperbolic manifolds")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("--certify", type=float, metavar="EPS")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("symmetries", parents=[common], help="shape-compatible automorphisms")
    s.add_argument("file")
    s.add_argument("--certify", type=float, metavar="EPS")
    s.set_defaults(func=cmd_symmetries)

    s = sub.add_parser("fixtures", parents=[common], help="list or write the bundled triangulations")
    s.add_argument("directory", nargs="?")
    s.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    rep = RunReport(command=argv)
    t0 = time.perf_counter()
    try:
        result, text = args.func(args, rep)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ThreefoldError as exc:
        name = type(exc).__name__
        if args.json:
            rep.result = {"error": name, "message": str(exc)}
            rep.wall_time = time.perf_counter() - t0
            print(json.dumps(rep.as_dict(), indent=2))
        print(f"{name}: {exc}", file=sys.stderr)
        return 1
    rep.result = result
    rep.wall_time = time.perf_counter() - t0
    if args.json:
        print(json.dumps(rep.as_dict(), indent=2))
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
