"""Bounded breadth-first search for Pachner-move certificates."""
from __future__ import annotations

from dataclasses import dataclass, field

from .isosig import isomorphism, iso_signature
from .moves import PachnerMove, TETRA_DELTA, apply_move, apply_move_with_inverse, canonical_move, enumerate_moves
from .triangulation import Triangulation, require_valid


@dataclass
class MovePath:
    """Moves that turn the source into a triangulation isomorphic to the target."""

    moves: list

    def replay(self, tri: Triangulation) -> Triangulation:
        for mv in self.moves:
            tri = apply_move(tri, mv)
        return tri

    def __len__(self):
        return len(self.moves)

    def as_dict(self) -> dict:
        return {"found": True, "length": len(self.moves), "moves": [m.as_list() for m in self.moves]}


@dataclass
class NotFoundWithinBounds:
    max_tetra: int
    max_depth: int
    explored: int = 0

    def as_dict(self) -> dict:
        return {"found": False, "max_tetra": self.max_tetra, "max_depth": self.max_depth, "explored": self.explored}


@dataclass
class _Node:
    tri: Triangulation
    parent: str | None
    move: PachnerMove | None
    inverse: PachnerMove | None  # undoes ``move``, as a move on ``tri``
    depth: int


def transport_move(mv: PachnerMove, iso) -> PachnerMove:
    """Carry a move along an isomorphism onto the isomorphic triangulation."""
    i, *rest = mv.location
    p = iso.perms[i]
    img = [p[v] for v in rest]
    if mv.kind == "3-2":
        img = sorted(img)
    return PachnerMove(mv.kind, (iso.tet_map[i],) + tuple(img))


@dataclass
class _Side:
    nodes: dict = field(default_factory=dict)
    frontier: list = field(default_factory=list)
    depth: int = 0


def _expand(side: _Side, other: _Side, max_tetra: int):
    nxt = []
    for sig in side.frontier:
        node = side.nodes[sig]
        for mv in enumerate_moves(node.tri):
            if node.tri.tetra_count + TETRA_DELTA[mv.kind] > max_tetra:
                continue
            tri2, inv = apply_move_with_inverse(node.tri, mv)
            s2 = iso_signature(tri2)
            if s2 in side.nodes:
                continue
            side.nodes[s2] = _Node(tri2, sig, mv, inv, side.depth + 1)
            nxt.append(s2)
            if s2 in other.nodes:
                side.frontier, side.depth = nxt, side.depth + 1
                return s2
    side.frontier, side.depth = nxt, side.depth + 1
    return None


def _chain(side: _Side, sig: str) -> list:
    out = []
    while side.nodes[sig].parent is not None:
        out.append(side.nodes[sig])
        sig = side.nodes[sig].parent
    return out[::-1]


def move_search(a: Triangulation, b: Triangulation, max_tetra: int, max_depth: int):
    """Bidirectional breadth-first search from ``a`` and ``b``.

    Triangulations are memoized by iso-signature and never exceed
    ``max_tetra`` tetrahedra; total path length is at most ``max_depth``.
    A failed search only means no path exists within the bounds.
    """
    if max_tetra < 1 or max_depth < 0:
        raise ValueError("bounds must be positive")
    require_valid(a)
    require_valid(b)
    fwd, bwd = _Side(), _Side()
    sa, sb = iso_signature(a), iso_signature(b)
    fwd.nodes[sa] = _Node(a, None, None, None, 0)
    bwd.nodes[sb] = _Node(b, None, None, None, 0)
    fwd.frontier, bwd.frontier = [sa], [sb]
    meet = sa if sa == sb else None
    if a.tetra_count > max_tetra or b.tetra_count > max_tetra:
        return NotFoundWithinBounds(max_tetra, max_depth, 0)
    while meet is None and fwd.depth + bwd.depth < max_depth:
        if not fwd.frontier and not bwd.frontier:
            break
        grow_fwd = bool(fwd.frontier) and (not bwd.frontier or len(fwd.frontier) <= len(bwd.frontier))
        if grow_fwd:
            meet = _expand(fwd, bwd, max_tetra)
        else:
            meet = _expand(bwd, fwd, max_tetra)
    if meet is None:
        return NotFoundWithinBounds(max_tetra, max_depth, len(fwd.nodes) + len(bwd.nodes))
    moves = [n.move for n in _chain(fwd, meet)]
    cur = fwd.nodes[meet].tri
    for node in reversed(_chain(bwd, meet)):
        iso = isomorphism(node.tri, cur)
        mv = canonical_move(cur, transport_move(node.inverse, iso))
        moves.append(mv)
        cur = apply_move(cur, mv)
    return MovePath(moves)
