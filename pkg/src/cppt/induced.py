"""Induced triangulations and emulation of 4-PPT flips by triangulation flips.

``I(T)`` adds, inside every quadrilateral of ``T``, the edge from the reflex
vertex to the opposite one.  One 4-PPT flip changes ``I(T)`` only inside
the union of the two faces at the flipped edge, and there a fan argument
gives at most six triangulation flips.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .core import Cppt, PreconditionError, StructureError, _normalize_rotation, edge_key
from .flips import FlipCase, FlipMove, _apply, _merged_walk


class EmulationError(AssertionError):
    """The flip emulation reached a case its correctness argument excludes."""


class ConstructionError(RuntimeError):
    """A fixture failed its own verification."""


@dataclass(frozen=True)
class CombTriangulation:
    rot: tuple[tuple[int, ...], ...]
    outer: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.rot)

    @cached_property
    def _pos(self) -> tuple[dict[int, int], ...]:
        return tuple({w: i for i, w in enumerate(r)} for r in self.rot)

    @cached_property
    def num_edges(self) -> int:
        return sum(len(r) for r in self.rot) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._pos[u]

    def pred(self, v: int, w: int) -> int:
        return self.rot[v][self._pos[v][w] - 1]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, r in enumerate(self.rot) for v in r if u < v]

    def key(self) -> tuple:
        return self.rot

    def faces(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for u, r in enumerate(self.rot):
            for v in r:
                if (u, v) in seen:
                    continue
                walk = [u]
                a, b = u, v
                while True:
                    seen.add((a, b))
                    a, b = b, self.pred(b, a)
                    if (a, b) == (u, v):
                        break
                    walk.append(a)
                out.append(tuple(walk))
        return out


def _insert_after(r: Sequence[int], after: int, new: int) -> tuple[int, ...]:
    r = list(r)
    r.insert(r.index(after) + 1, new)
    return _normalize_rotation(r)


def check_triangulation(G: CombTriangulation) -> None:
    """Raise unless ``G`` is simple with every face a triangle."""
    for v, r in enumerate(G.rot):
        if len(set(r)) != len(r) or v in r:
            raise StructureError(f"vertex {v} has a loop or a multi-edge")
    faces = G.faces()
    if any(len(f) != 3 for f in faces):
        raise StructureError("a face is not a triangle")
    if G.n - G.num_edges + len(faces) != 2:
        raise StructureError("rotation system is not planar")


def induced_triangulation(T: Cppt) -> CombTriangulation:
    """Add the reflex-to-opposite diagonal in every quadrilateral."""
    if T.h != 3:
        raise PreconditionError("induced triangulation needs a triangular outer face")
    rot = [list(r) for r in T.rot]
    for f in T.faces:
        if f.outer or f.size != 4:
            continue
        vs = f.vertices
        k = next(k for k, d in enumerate(f.darts) if T.reflex[d.origin] == d.target)
        p, q = vs[k], vs[(k + 2) % 4]
        # a face angle at a walk vertex runs from the next walk vertex
        rot[p] = list(_insert_after(rot[p], vs[(k + 1) % 4], q))
        rot[q] = list(_insert_after(rot[q], vs[(k + 3) % 4], p))
    G = CombTriangulation(tuple(_normalize_rotation(r) for r in rot), T.outer)
    check_triangulation(G)
    return G


def tri_flip(G: CombTriangulation, e: tuple[int, int]) -> CombTriangulation:
    """Exchange ``e`` for the other diagonal of its two triangles."""
    u, v = e
    if not G.has_edge(u, v):
        raise PreconditionError(f"{u}-{v} is not an edge")
    outer = set(zip(G.outer, G.outer[1:] + G.outer[:1]))
    if (u, v) in outer or (v, u) in outer:
        raise PreconditionError(f"{u}-{v} is an outer edge")
    x = G.pred(v, u)
    y = G.pred(u, v)
    if G.has_edge(x, y):
        raise PreconditionError(f"flipping {u}-{v} would duplicate {x}-{y}")
    rot = list(G.rot)
    rot[u] = tuple(w for w in rot[u] if w != v)
    rot[v] = tuple(w for w in rot[v] if w != u)
    rot[x] = _insert_after(rot[x], u, y)
    rot[y] = _insert_after(rot[y], v, x)
    rot[u] = _normalize_rotation(rot[u])
    rot[v] = _normalize_rotation(rot[v])
    return CombTriangulation(tuple(rot), G.outer)


# ------------------------------------------------------------- emulation


def _region(T: Cppt, e: tuple[int, int]) -> tuple[list[int], set[tuple[int, int]]]:
    """Polygon of the two faces at ``e`` and the edges of ``I(T)`` inside it."""
    walk, _, _, _ = _merged_walk(T, *e)
    inside = {edge_key(*e)}
    for d in (e, (e[1], e[0])):
        f = T.faces[T.dart_face[d]]
        if f.size == 4:
            vs = f.vertices
            k = next(k for k, x in enumerate(f.darts) if T.reflex[x.origin] == x.target)
            inside.add(edge_key(vs[k], vs[(k + 2) % 4]))
    return [d.origin for d in walk], inside


def _fan_flips(G: CombTriangulation, inside: set[tuple[int, int]], apex: int) -> list[tuple[int, int]] | None:
    """Flips turning the triangulated polygon into the fan at ``apex``;
    ``None`` when an edge outside the polygon blocks it."""
    inside = set(inside)
    flips = []
    while True:
        todo = sorted(d for d in inside if apex not in d)
        if not todo:
            return flips
        for u, v in todo:
            x, y = G.pred(v, u), G.pred(u, v)
            if apex in (x, y):
                if G.has_edge(x, y):
                    return None
                flips.append((u, v))
                G = tri_flip(G, (u, v))
                inside.remove((u, v))
                inside.add(edge_key(x, y))
                break
        else:
            return None


def emulate_flip(T: Cppt, m: FlipMove) -> list[tuple[int, int]]:
    """Triangulation flips (removed edges, in order) from ``I(T)`` to ``I(T')``."""
    if T.h != 3:
        raise PreconditionError("emulation needs a triangular outer face")
    poly, inside = _region(T, m.removed)
    size = len(set(poly))
    if m.case is FlipCase.DEG5:
        return []
    if m.case is FlipCase.TT or size == 4:
        raise EmulationError("merged region is a 4-gon")
    U = _apply(T, m)
    G = induced_triangulation(T)
    H = induced_triangulation(U)
    _, target = _region(U, m.inserted)
    if size == 5:
        # every triangulation of a pentagon is a fan
        apex = set.intersection(*(set(d) for d in inside)).pop()
        back = _fan_flips(H, target, apex)
        if back is None:
            raise EmulationError("a 5-gon fan is blocked")
        return _reverse_flips(H, back)
    # two quadrilaterals: fan at an endpoint of the removed edge, else at the
    # vertex that the blocking edge cuts off
    for apex in list(m.removed) + [v for v in poly if v not in m.removed]:
        there = _fan_flips(G, inside, apex)
        back = _fan_flips(H, target, apex) if there is not None else None
        if there is not None and back is not None:
            return there + _reverse_flips(H, back)
    raise EmulationError("no fan vertex in the 6-gon")


def _reverse_flips(H: CombTriangulation, flips: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Removed edges of the reverse of ``flips`` applied from ``H``."""
    states = [H]
    for e in flips:
        states.append(tri_flip(states[-1], e))
    out = []
    for k in range(len(flips) - 1, -1, -1):
        u, v = flips[k]
        before = states[k]
        out.append(edge_key(before.pred(v, u), before.pred(u, v)))
    return out


def replay_tri_flips(G: CombTriangulation, flips: Sequence[tuple[int, int]]) -> CombTriangulation:
    for e in flips:
        G = tri_flip(G, e)
        check_triangulation(G)
    return G


# -------------------------------------------------------------- fixtures


def double_wheel(n: int) -> CombTriangulation:
    """Cycle ``2 .. n-1`` with hub ``0`` inside and hub ``1`` outside.

    The outer face is ``1 2 3``.
    """
    if n < 5:
        raise PreconditionError("a double wheel needs a cycle of at least 3 vertices")
    cyc = list(range(2, n))
    k = len(cyc)
    rot: list[tuple[int, ...]] = [()] * n
    rot[0] = _normalize_rotation(cyc)
    rot[1] = _normalize_rotation(cyc[::-1])
    for i, c in enumerate(cyc):
        prv, nxt = cyc[i - 1], cyc[(i + 1) % k]
        rot[c] = _normalize_rotation([nxt, 0, prv, 1])
    G = CombTriangulation(tuple(rot), (1, 3, 2))
    check_triangulation(G)
    return G


def is_double_wheel(G: CombTriangulation) -> bool:
    """Whether ``G`` is a double wheel as an abstract graph."""
    n = G.n
    if n < 5:
        return False
    hubs = [v for v in range(n) if len(G.rot[v]) == n - 2]
    if n == 6:
        # every vertex of the 4-cycle also has degree 4
        pairs = [(a, b) for a in hubs for b in hubs if a < b and not G.has_edge(a, b)]
    else:
        pairs = [tuple(hubs)] if len(hubs) == 2 and not G.has_edge(*hubs) else []
    for a, b in pairs:
        rest = [v for v in range(n) if v not in (a, b)]
        if all(G.has_edge(a, v) and G.has_edge(b, v) and len(G.rot[v]) == 4 for v in rest):
            return True
    return False


def lower_bound_instance(n: int) -> Cppt:
    """A 4-PPT whose induced triangulation is one flip from a double wheel.

    Outer face ``0 1 2``; the quadrilaterals ``0 1 3 2`` (reflex at ``3``)
    and ``1 2 t 3`` (reflex at ``t = n-1``) surround a canonical stack with
    hubs ``2`` and ``3`` inside ``2 3 t``.  Flipping the edge ``2 3`` (for
    ``n = 5`` the edge ``1 3``) of the induced triangulation leaves a double
    wheel.  The one-flip property is checked here.
    """
    from .core import from_faces
    from .forms import canonical, canonical_faces

    if n < 4:
        raise PreconditionError("need n >= 4")
    if n == 4:
        return canonical(4)
    t = n - 1
    faces, reflex = canonical_faces(2, 3, t, list(range(4, t)))
    faces += [(0, 1, 3, 2), (1, 2, t, 3)]
    reflex.update({3: 2, t: 3})
    T = from_faces(n, (0, 1, 2), faces, reflex)
    if not one_flip_from_double_wheel(induced_triangulation(T)):
        raise ConstructionError(f"induced triangulation at n={n} is not one flip from a double wheel")
    return T


def one_flip_from_double_wheel(G: CombTriangulation) -> tuple[int, int] | None:
    """An interior edge whose flip turns ``G`` into a double wheel."""
    for e in G.edges():
        try:
            H = tri_flip(G, e)
        except PreconditionError:
            continue
        if is_double_wheel(H):
            return e
    return None


__all__ = [
    "CombTriangulation",
    "ConstructionError",
    "EmulationError",
    "check_triangulation",
    "double_wheel",
    "emulate_flip",
    "induced_triangulation",
    "is_double_wheel",
    "lower_bound_instance",
    "one_flip_from_double_wheel",
    "replay_tri_flips",
    "tri_flip",
]
