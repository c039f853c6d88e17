"""Builders and recognisers for the special 4-PPT shapes.

Canonical (triangle ``r s t``, base ``rs``): every interior vertex is joined
to both ``r`` and ``s``; ``v1`` sits on the base triangle ``r s v1`` and each
``v_k`` carries its reflex angle in the quadrilateral ``r v_k s v_{k+1}``
(``v_{i+1} = t``).

Spinal: the interior vertices and ``t`` form the path ``t v_i ... v_1``; the
``v_k`` are joined alternately to the two hubs, ``v_1`` to ``s`` for the
s-spinal form and to ``r`` for the r-spinal one.  Spinal 4-PPTs are built by
flipping from the canonical form (see ``canonical.canonical_to_spinal``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .core import Cppt, PreconditionError, edge_key, from_faces


def canonical_faces(r: int, s: int, t: int, order: Sequence[int]) -> tuple[list[tuple[int, ...]], dict[int, int]]:
    """Faces and reflex map of the canonical 4-PPT inside ``r s t`` (counterclockwise)."""
    order = list(order)
    if not order:
        return [(r, s, t)], {}
    faces = [(r, s, order[0])]
    reflex = {}
    above = order[1:] + [t]
    for v, w in zip(order, above):
        faces.append((r, v, s, w))
        reflex[v] = s
    return faces, reflex


def canonical(n: int, h: int = 3, order: Sequence[int] | None = None, labels=None) -> Cppt:
    """General canonical 4-PPT on outer cycle ``0..h-1``.

    The fan at ``0`` holds the triangles ``0 j j+1``; all interior vertices are
    stacked (bottom first, as ``order``) in the cell ``0 1 2`` with base ``01``.
    """
    if h < 3 or n < h:
        raise PreconditionError(f"need 3 <= h <= n, got n={n}, h={h}")
    if order is None:
        order = list(range(h, n))
    if sorted(order) != list(range(h, n)):
        raise PreconditionError("order must list the interior vertices")
    faces, reflex = canonical_faces(0, 1, 2, order)
    for j in range(2, h - 1):
        faces.append((0, j, j + 1))
    return from_faces(n, tuple(range(h)), faces, reflex, labels)


@dataclass
class CanonicalProfile:
    form: str
    base_edge: tuple[int, int] | None = None
    order: list[int] = field(default_factory=list)
    roles: tuple[int, int, int] | None = None


def region_interior(T: Cppt, cycle: Sequence[int]) -> tuple[set[int], set[tuple[int, int]]]:
    """Vertices strictly inside a simple cycle and the edges inside or on it."""
    from .core import cycle_interior_faces

    inside = cycle_interior_faces(T, cycle)
    verts: set[int] = set()
    edges: set[tuple[int, int]] = set()
    for i in inside:
        f = T.faces[i]
        verts.update(f.vertices)
        edges |= f.edge_set()
    verts -= set(cycle)
    return verts, edges


def canonical_order(T: Cppt, r: int, s: int, t: int) -> list[int] | None:
    """Interior order if the region inside ``r s t`` is canonical with base ``rs``."""
    if not (T.has_edge(r, s) and T.has_edge(s, t) and T.has_edge(t, r)):
        return None
    inner, edges = region_interior(T, (r, s, t))
    if len(edges) != 3 + 2 * len(inner):
        return None
    order = []
    cur = [w for w in T.face_vertices((r, s)) if w not in (r, s)]
    if len(cur) != 1:
        return None
    cur = cur[0]
    while cur != t:
        if cur not in inner or set(T.rot[cur]) != {r, s} or cur in order:
            return None
        order.append(cur)
        # the quadrilateral above cur must hold its reflex angle
        f = T.face_vertices((cur, T.reflex[cur]))
        if len(f) != 4 or r not in f or s not in f:
            return None
        cur = [w for w in f if w not in (r, s, cur)][0]
    return order if len(order) == len(inner) else None


def spinal_order(T: Cppt, r: int, s: int, t: int) -> tuple[str, list[int]] | None:
    """``(side, order)`` if the region inside ``r s t`` is spinal with tip ``t``."""
    if not (T.has_edge(r, s) and T.has_edge(s, t) and T.has_edge(t, r)):
        return None
    inner, edges = region_interior(T, (r, s, t))
    i = len(inner)
    if i == 0:
        return None
    if len(edges) != 3 + 2 * i:
        return None
    spine_next = [w for w in T.rot[t] if w in inner]
    if len(spine_next) != 1:
        return None
    order_rev = []
    prev, cur = t, spine_next[0]
    while True:
        order_rev.append(cur)
        nxt = [w for w in T.rot[cur] if w in inner and w != prev]
        if len(nxt) > 1:
            return None
        if not nxt:
            break
        prev, cur = cur, nxt[0]
    if len(order_rev) != i:
        return None
    order = order_rev[::-1]
    hubs = []
    for k, v in enumerate(order):
        hs = [w for w in (r, s) if T.has_edge(v, w)]
        if len(hs) != 1:
            return None
        hubs.append(hs[0])
    for a, b in zip(hubs, hubs[1:]):
        if a == b:
            return None
    side = "s" if hubs[0] == s else "r"
    path = order + [t]
    for k in range(1, i):
        v = order[k]
        if {T.reflex[v], T.succ(v, T.reflex[v])} != {path[k - 1], path[k + 1]}:
            return None
    v1 = order[0]
    f = set(T.face_vertices((v1, T.reflex[v1])))
    if f != {r, s, v1, path[1]}:
        return None
    return side, order


def outer_roles(T: Cppt) -> tuple[int, int, int]:
    """Default roles ``(r, s, t)`` for a triangular outer face.

    ``r`` is the outer vertex with the smallest label, ``s`` follows it
    counterclockwise.
    """
    o = T.outer
    if len(o) != 3:
        raise PreconditionError("roles are defined for triangular outer faces")
    if T.labels is not None:
        k = min(range(3), key=lambda j: T.labels[o[j]])
    else:
        k = min(range(3), key=lambda j: o[j])
    return o[k], o[(k + 1) % 3], o[(k + 2) % 3]


def _role_rotations(r: int, s: int, t: int) -> list[tuple[int, int, int]]:
    return [(r, s, t), (s, t, r), (t, r, s)]


def classify(T: Cppt, roles: tuple[int, int, int] | None = None) -> CanonicalProfile:
    """Recognise canonical, spinal and general-canonical shapes.

    With ``roles`` given only that role assignment is tried; otherwise the
    default assignment is tried first and then its rotations.
    """
    if T.h == 3:
        candidates = [roles] if roles is not None else _role_rotations(*outer_roles(T))
        for r, s, t in candidates:
            order = canonical_order(T, r, s, t)
            if order is not None:
                return CanonicalProfile("canonical", edge_key(r, s), order, (r, s, t))
            res = spinal_order(T, r, s, t)
            if res is not None:
                side, order = res
                return CanonicalProfile(f"{side}-spinal", edge_key(r, s), order, (r, s, t))
        return CanonicalProfile("other")
    o = T.outer
    fan = all(T.has_edge(o[0], o[j]) for j in range(2, len(o) - 1))
    if fan:
        empty = all(not region_interior(T, (o[0], o[j], o[j + 1]))[0] for j in range(2, len(o) - 1))
        if empty:
            order = canonical_order(T, o[0], o[1], o[2])
            if order is not None:
                return CanonicalProfile("general-canonical", edge_key(o[0], o[1]), order, (o[0], o[1], o[2]))
    return CanonicalProfile("other")
