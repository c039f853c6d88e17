"""Edge flips between combinatorial 4-PPTs.

Removing an interior edge ``e`` of an interior triangle merges the triangle
with the face ``F`` on the other side.  A flip re-splits the merged face by a
new edge into a triangle and a triangle-or-quadrilateral, keeping every face
at exactly three convex angles, and is valid only if the new edge is not
already present anywhere in the graph.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .core import Cppt, Dart, PreconditionError, _normalize_rotation, edge_key


class FlipError(ValueError):
    pass


class OuterEdgeError(FlipError):
    pass


class NoTriangleError(FlipError):
    pass


class StaleMoveError(FlipError):
    pass


class FlipCase(str, enum.Enum):
    TT = "TT"
    DEG5 = "DEG5"
    NONDEG5 = "NONDEG5"


@dataclass(frozen=True)
class FlipMove:
    """One edge exchange.

    ``anchors`` say where the new edge enters the rotations: ``(a, wa)`` means
    the new neighbour of ``a`` goes right after ``wa`` counterclockwise (the
    rotations being those after ``removed`` is deleted).
    """

    removed: tuple[int, int]
    inserted: tuple[int, int]
    case: FlipCase
    reflex_updates: tuple[tuple[int, int], ...]
    anchors: tuple[tuple[int, int], tuple[int, int]] = field(compare=False, repr=False)

    def pair(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return self.removed, self.inserted


def _merged_walk(T: Cppt, u: int, v: int):
    """Merged boundary after deleting ``uv``, plus renamed reflex angles.

    Returns ``(walk, case, renames)`` where ``walk`` is a list of darts whose
    targets already use the post-deletion angle names.
    """
    left = T.face_walk((u, v))
    right = T.face_walk((v, u))
    of = T.outer_face.darts
    if left[0] in of or right[0] in of:
        raise OuterEdgeError(f"edge {u}-{v} lies on the outer face")
    if len(left) != 3:
        if len(right) != 3:
            raise NoTriangleError(f"edge {u}-{v} bounds no interior triangle")
        left, right = right, left
        u, v = v, u
    walk = list(left[1:]) + list(right[1:])
    if len(right) == 3:
        case = FlipCase.TT
    else:
        es = [edge_key(*d) for d in walk]
        case = FlipCase.DEG5 if len(set(es)) != len(es) else FlipCase.NONDEG5
    renames = {}
    for a, b in ((u, v), (v, u)):
        if T.reflex[a] == b:
            renames[a] = T.pred(a, b)
    return walk, case, renames, (u, v)


def flippable_edges(T: Cppt) -> list[tuple[int, int]]:
    """Interior edges incident to an interior triangle, sorted."""
    outer = T.outer_face.edge_set()
    out = set()
    for f in T.faces:
        if f.outer or f.size != 3:
            continue
        for d in f.darts:
            k = edge_key(*d)
            if k not in outer:
                out.add(k)
    return sorted(out)


def flip_candidates(T: Cppt, e: tuple[int, int]) -> list[FlipMove]:
    u, v = e
    if not T.has_edge(u, v):
        raise FlipError(f"{u}-{v} is not an edge")
    walk, case, renames, _ = _merged_walk(T, u, v)
    removed = edge_key(u, v)
    L = len(walk)
    origins = [d.origin for d in walk]
    reflex = [renames.get(d.origin, T.reflex[d.origin]) for d in walk]
    rpos = [p for p, d in enumerate(walk) if reflex[p] == d.target]
    # at most one reflex corner survives in the merged face
    p_reflex = rpos[0] if rpos else None
    out = []
    for i in range(L):
        for j in range(i + 2, L):
            d = j - i
            sa, sb = d + 1, L - d + 1
            if sorted((sa, sb)) not in ([3, 3], [3, 4]):
                continue
            a, b = origins[i], origins[j]
            if a == b:
                continue
            k = edge_key(a, b)
            if k == removed or T.has_edge(a, b):
                continue
            fa = origins[i:j + 1]
            fb = origins[j:] + origins[:i + 1]
            if len(set(fa)) != len(fa) or len(set(fb)) != len(fb):
                continue
            updates = dict(renames)
            if p_reflex is not None:
                w = walk[p_reflex]
                if p_reflex == i:
                    updates[a] = w.target if sa == 4 else b
                elif p_reflex == j:
                    updates[b] = w.target if sb == 4 else a
                elif i < p_reflex < j:
                    if sa != 4:
                        continue
                elif sb != 4:
                    continue
            ups = tuple(sorted((x, y) for x, y in updates.items() if T.reflex[x] != y))
            out.append(FlipMove(removed, k, case, ups, ((a, walk[i].target), (b, walk[j].target))))
    out.sort(key=lambda m: m.inserted)
    return out


def _apply(T: Cppt, m: FlipMove) -> Cppt:
    u, v = m.removed
    rot = list(T.rot)
    rot[u] = tuple(w for w in rot[u] if w != v)
    rot[v] = tuple(w for w in rot[v] if w != u)
    (a, wa), (b, wb) = m.anchors
    for x, y, wx in ((a, b, wa), (b, a, wb)):
        r = list(rot[x])
        r.insert(r.index(wx) + 1, y)
        rot[x] = _normalize_rotation(r)
    rot[u] = _normalize_rotation(rot[u])
    rot[v] = _normalize_rotation(rot[v])
    reflex = list(T.reflex)
    for x, y in m.reflex_updates:
        reflex[x] = y
    return Cppt(tuple(rot), tuple(reflex), T.outer, T.labels)


def apply_flip(T: Cppt, m: FlipMove) -> Cppt:
    """Perform ``m`` after confirming it is a current candidate of ``T``."""
    try:
        cands = flip_candidates(T, m.removed)
    except FlipError as exc:
        raise StaleMoveError(f"move {m.removed}->{m.inserted} is stale: {exc}") from None
    for c in cands:
        if c == m:
            return _apply(T, c)
    if T.has_edge(*m.inserted):
        raise StaleMoveError(f"inserting {m.inserted} would create a multi-edge")
    raise StaleMoveError(f"move {m.removed}->{m.inserted} is not a valid flip here")


def find_move(T: Cppt, removed: tuple[int, int], inserted: tuple[int, int] | None = None) -> FlipMove:
    """Look up the flip of ``removed`` (to ``inserted`` if given)."""
    cands = flip_candidates(T, removed)
    if inserted is None:
        if len(cands) != 1:
            raise FlipError(
                f"edge {edge_key(*removed)} has {len(cands)} candidates: "
                + ", ".join(f"{c.inserted[0]},{c.inserted[1]}" for c in cands)
            )
        return cands[0]
    k = edge_key(*inserted)
    for c in cands:
        if c.inserted == k:
            return c
    raise FlipError(f"flipping {edge_key(*removed)} to {k} is not a valid flip")


def flip(T: Cppt, removed: tuple[int, int], inserted: tuple[int, int] | None = None) -> Cppt:
    return _apply(T, find_move(T, removed, inserted))


def reverse_move(T: Cppt, m: FlipMove) -> FlipMove:
    """The move undoing ``m`` on ``apply_flip(T, m)``."""
    return find_move(_apply(T, m), m.inserted, m.removed)


def neighbours(T: Cppt) -> list[tuple[FlipMove, Cppt]]:
    """Every flip of ``T`` with its result."""
    out = []
    for e in flippable_edges(T):
        for m in flip_candidates(T, e):
            out.append((m, _apply(T, m)))
    return out


def merged_region(T: Cppt, e: tuple[int, int]) -> tuple[int, ...]:
    """Boundary vertices (with repetition) of the face formed by deleting ``e``."""
    walk, _, _, _ = _merged_walk(T, *e)
    return tuple(d.origin for d in walk)


def region_faces(T: Cppt, e: tuple[int, int]) -> tuple[tuple[Dart, ...], tuple[Dart, ...]]:
    u, v = e
    return T.face_walk((u, v)), T.face_walk((v, u))


__all__ = [
    "FlipCase",
    "FlipError",
    "FlipMove",
    "NoTriangleError",
    "OuterEdgeError",
    "PreconditionError",
    "StaleMoveError",
    "apply_flip",
    "find_move",
    "flip",
    "flip_candidates",
    "flippable_edges",
    "merged_region",
    "neighbours",
    "reverse_move",
]
