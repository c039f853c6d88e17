"""Tagged rotation systems for combinatorial pointed pseudo-triangulations.

A :class:`Cppt` stores, for every vertex, the counterclockwise cyclic order of
its neighbours and the single reflex angle of that vertex.  Darts are ordered
vertex pairs ``(u, v)``; the graph is simple, so a pair identifies a dart.

Face tracing convention: the successor of dart ``u -> v`` along its face is
``v -> pred_v(u)``, where ``pred_v`` is the counterclockwise predecessor in the
rotation at ``v``.  The traced face therefore lies to the left of each dart;
interior faces are walked counterclockwise and the outer face clockwise.

An angle at ``v`` is named by the neighbour ``a`` it follows: it is the gap
between ``a`` and the counterclockwise successor of ``a`` at ``v``.  That
angle belongs to the face to the left of dart ``v -> a``.  Only reflex angles
are stored (``reflex[v] = a``); every other angle is convex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence


class StructureError(ValueError):
    """Rotation data that does not describe a simple plane graph."""


class PreconditionError(ValueError):
    """An operation was called outside its domain."""


class Dart(NamedTuple):
    origin: int
    target: int

    @property
    def twin(self) -> "Dart":
        return Dart(self.target, self.origin)


def _dart(u: int, v: int) -> Dart:
    return tuple.__new__(Dart, (u, v))


class Angle(NamedTuple):
    vertex: int
    after: int


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _normalize_rotation(nbrs: Sequence[int]) -> tuple[int, ...]:
    if not nbrs:
        return ()
    k = min(range(len(nbrs)), key=nbrs.__getitem__)
    return tuple(nbrs[k:]) + tuple(nbrs[:k])


@dataclass(frozen=True)
class Cppt:
    """A combinatorial embedding with reflex tags and a designated outer face.

    ``outer`` lists the outer cycle counterclockwise starting at ``o1``.  It is
    redundant with the rotations (the outer face is the face to the left of
    ``outer_dart``) and is re-derived by :func:`validate`.
    """

    rot: tuple[tuple[int, ...], ...]
    reflex: tuple[int, ...]
    outer: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return len(self.rot)

    @property
    def outer_dart(self) -> Dart:
        return Dart(self.outer[1], self.outer[0])

    @property
    def h(self) -> int:
        return len(self.outer)

    @cached_property
    def _pos(self) -> tuple[dict[int, int], ...]:
        return tuple({w: i for i, w in enumerate(r)} for r in self.rot)

    @cached_property
    def num_edges(self) -> int:
        return sum(len(r) for r in self.rot) // 2

    def key(self) -> tuple:
        """Hashable identity of the labeled 4-PPT."""
        return (self.rot, self.reflex)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._pos[u]

    def degree(self, v: int) -> int:
        return len(self.rot[v])

    def succ(self, v: int, w: int) -> int:
        """Counterclockwise successor of neighbour ``w`` around ``v``."""
        r = self.rot[v]
        return r[(self._pos[v][w] + 1) % len(r)]

    def pred(self, v: int, w: int) -> int:
        r = self.rot[v]
        return r[(self._pos[v][w] - 1) % len(r)]

    def next_dart(self, d: tuple[int, int]) -> Dart:
        u, v = d
        return Dart(v, self.pred(v, u))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, r in enumerate(self.rot) for v in r if u < v]

    def face_walk(self, d: tuple[int, int]) -> tuple[Dart, ...]:
        """Darts of the face to the left of ``d``, starting with ``d``."""
        rot, pos = self.rot, self._pos
        u0, v0 = d
        walk = [_dart(u0, v0)]
        u, v = u0, v0
        while True:
            u, v = v, rot[v][pos[v][u] - 1]
            if u == u0 and v == v0:
                return tuple(walk)
            walk.append(_dart(u, v))

    def face_vertices(self, d: tuple[int, int]) -> tuple[int, ...]:
        return tuple(x.origin for x in self.face_walk(d))

    @cached_property
    def faces(self) -> tuple["Face", ...]:
        return trace_faces(self)

    @cached_property
    def dart_face(self) -> dict[Dart, int]:
        out = {}
        for f in self.faces:
            for d in f.darts:
                out[d] = f.index
        return out

    @cached_property
    def outer_face(self) -> "Face":
        return self.faces[self.dart_face[self.outer_dart]]

    def angle_face(self, a: Angle) -> int:
        return self.dart_face[Dart(a.vertex, a.after)]

    def reflex_angle(self, v: int) -> Angle:
        return Angle(v, self.reflex[v])

    def is_reflex(self, v: int, after: int) -> bool:
        return self.reflex[v] == after

    def interior_vertices(self) -> list[int]:
        on = set(self.outer)
        return [v for v in range(self.n) if v not in on]

    def with_labels(self, labels: Sequence[str] | None) -> "Cppt":
        return Cppt(self.rot, self.reflex, self.outer, tuple(labels) if labels is not None else None)

    def relabel(self, perm: Sequence[int]) -> "Cppt":
        """Rename vertex ``v`` to ``perm[v]``."""
        n = self.n
        rot = [()] * n
        reflex = [0] * n
        for v in range(n):
            rot[perm[v]] = _normalize_rotation([perm[w] for w in self.rot[v]])
            reflex[perm[v]] = perm[self.reflex[v]]
        labels = None
        if self.labels is not None:
            lab = [""] * n
            for v in range(n):
                lab[perm[v]] = self.labels[v]
            labels = tuple(lab)
        return Cppt(tuple(rot), tuple(reflex), tuple(perm[v] for v in self.outer), labels)


@dataclass(frozen=True)
class Face:
    index: int
    darts: tuple[Dart, ...]
    outer: bool
    degenerate: bool

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(d.origin for d in self.darts)

    @property
    def size(self) -> int:
        return len(self.darts)

    def edge_set(self) -> set[tuple[int, int]]:
        return {edge_key(*d) for d in self.darts}


def build(
    rotations: Sequence[Sequence[int]],
    outer: Sequence[int],
    reflex: Sequence[int] | dict[int, int],
    labels: Sequence[str] | None = None,
) -> Cppt:
    """Assemble a :class:`Cppt`, checking only that the data is a simple graph.

    ``reflex[v]`` is the neighbour after which the reflex gap of ``v`` lies.
    The 4-PPT axioms are certified separately by :func:`validate`.
    """
    n = len(rotations)
    for v, nbrs in enumerate(rotations):
        seen = set()
        for w in nbrs:
            if not (0 <= w < n):
                raise StructureError(f"dart {v}->{w}: endpoint out of range")
            if w == v:
                raise StructureError(f"dart {v}->{w}: loop")
            if w in seen:
                raise StructureError(f"dart {v}->{w}: multi-edge")
            seen.add(w)
    for v, nbrs in enumerate(rotations):
        for w in nbrs:
            if v not in rotations[w]:
                raise StructureError(f"dart {v}->{w}: twin {w}->{v} missing")
    if isinstance(reflex, dict):
        missing = [v for v in range(n) if v not in reflex]
        if missing:
            raise StructureError(f"vertex {missing[0]} has no reflex angle")
        reflex = [reflex[v] for v in range(n)]
    if len(reflex) != n:
        raise StructureError("reflex map must cover every vertex")
    for v in range(n):
        if reflex[v] not in rotations[v]:
            raise StructureError(f"reflex angle of {v} names non-neighbour {reflex[v]}")
    outer = tuple(outer)
    if len(outer) < 3 or len(set(outer)) != len(outer):
        raise StructureError("outer cycle needs at least 3 distinct vertices")
    for a, b in zip(outer, outer[1:] + outer[:1]):
        if b not in rotations[a]:
            raise StructureError(f"outer cycle edge {a}-{b} missing")
    if not _connected(rotations):
        raise StructureError("graph is not connected")
    if labels is not None and len(labels) != n:
        raise StructureError("labels must name every vertex")
    return Cppt(
        tuple(_normalize_rotation(r) for r in rotations),
        tuple(reflex),
        outer,
        tuple(labels) if labels is not None else None,
    )


def _connected(rotations: Sequence[Sequence[int]]) -> bool:
    n = len(rotations)
    if n == 0:
        return False
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in rotations[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def trace_faces(T: Cppt) -> tuple[Face, ...]:
    """All faces as dart cycles; the face left of ``outer_dart`` is marked outer.

    A face is degenerate when its boundary walk uses some edge twice.
    """
    seen: set[Dart] = set()
    out = []
    od = T.outer_dart
    for u, r in enumerate(T.rot):
        for v in r:
            if (u, v) in seen:
                continue
            walk = T.face_walk((u, v))
            ds = set(walk)
            seen |= ds
            degen = any((x[1], x[0]) in ds for x in walk)
            out.append(Face(len(out), walk, od in ds, degen))
    return tuple(out)


class Violation(NamedTuple):
    rule: str
    location: object


@dataclass
class ValidationReport:
    valid: bool
    n: int
    e: int
    t: int
    q: int
    h: int
    violations: list[Violation]

    def counts(self) -> tuple[int, int, int, int, int]:
        return (self.n, self.e, self.t, self.q, self.h)


def validate(T: Cppt) -> ValidationReport:
    """Check every 4-PPT axiom; never raises on well-formed input."""
    bad: list[Violation] = []
    faces = T.faces
    outer = T.outer_face
    t = q = 0
    for f in faces:
        verts = f.vertices
        if f.degenerate:
            bad.append(Violation("degenerate-face", verts))
        elif len(set(verts)) != len(verts):
            bad.append(Violation("non-simple-face", verts))
        nreflex = sum(1 for d in f.darts if T.reflex[d.origin] == d.target)
        if f.outer:
            if nreflex != f.size:
                bad.append(Violation("outer-angle-convex", verts))
            continue
        if f.size == 3:
            t += 1
        elif f.size == 4:
            q += 1
        else:
            bad.append(Violation("face-size", verts))
        if f.size - nreflex != 3:
            rule = "triangle-reflex" if f.size == 3 else "convex-count"
            bad.append(Violation(rule, verts))
    walk = outer.vertices
    h = len(walk)
    if tuple(reversed(walk)) not in _rotations_of(T.outer):
        bad.append(Violation("outer-cycle-mismatch", walk))
    n, e = T.n, T.num_edges
    if e != 2 * n - 3:
        bad.append(Violation("edge-count", e))
    if not bad:
        if t != h - 2:
            bad.append(Violation("triangle-count", t))
        if q != n - h:
            bad.append(Violation("quad-count", q))
    return ValidationReport(not bad, n, e, t, q, h, bad)


def _rotations_of(seq: Sequence[int]) -> set[tuple[int, ...]]:
    s = tuple(seq)
    return {s[i:] + s[:i] for i in range(len(s))}


def is_valid(T: Cppt) -> bool:
    return validate(T).valid


def triangle_count(b: int, c: int) -> int:
    """Interior triangles of a 4-PPT filling a simple ``b``-cycle.

    ``c`` counts the cycle vertices whose reflex angle lies inside the cycle.
    """
    if b < 3 or c < 0:
        raise PreconditionError(f"need b >= 3 and c >= 0, got b={b}, c={c}")
    t = b - 2 * c - 2
    if t < 0:
        raise PreconditionError(f"no 4-PPT fills a {b}-cycle with {c} inner reflex corners")
    return t


def _face_components(T: Cppt, cut: set[tuple[int, int]]) -> list[int]:
    """Union faces across edges not in ``cut``; returns a root per face index."""
    parent = list(range(len(T.faces)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    df = T.dart_face
    for u, v in T.edges():
        if (u, v) in cut:
            continue
        a, b = find(df[Dart(u, v)]), find(df[Dart(v, u)])
        if a != b:
            parent[a] = b
    return [find(i) for i in range(len(parent))]


def _components(vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> list[tuple[set[int], set]]:
    adj: dict[int, set[int]] = {v: set() for v in vertices}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen: set[int] = set()
    comps = []
    for s in adj:
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append((comp, {edge_key(u, v) for u, v in edges if u in comp}))
    return comps


def corners_first_type(T: Cppt, vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> int:
    """Count vertices of subgraph ``H`` whose reflex angle lies in ``H``'s outer face.

    ``H``'s outer face is the face of its induced embedding that contains the
    outer face of ``T``.  A disconnected ``H`` is scored per component (with at
    least three vertices) and the minimum is returned.
    """
    vs = set(vertices)
    es = {edge_key(u, v) for u, v in edges}
    for u, v in es:
        if u not in vs or v not in vs:
            raise PreconditionError(f"edge {u}-{v} leaves the vertex set")
        if not T.has_edge(u, v):
            raise PreconditionError(f"{u}-{v} is not an edge of T")
    if len(vs) < 3:
        raise PreconditionError("subgraph needs at least 3 vertices")
    scores = []
    for comp, comp_edges in _components(vs, es):
        if len(comp) < 3:
            continue
        root = _face_components(T, comp_edges)
        outer_root = root[T.outer_face.index]
        scores.append(sum(1 for v in comp if root[T.angle_face(T.reflex_angle(v))] == outer_root))
    if not scores:
        raise PreconditionError("no connected component has at least 3 vertices")
    return min(scores)


def cycle_interior_faces(T: Cppt, cycle: Sequence[int]) -> set[int]:
    """Indices of faces enclosed by a simple cycle (the side without the outer face)."""
    cyc = tuple(cycle)
    cut = {edge_key(a, b) for a, b in zip(cyc, cyc[1:] + cyc[:1])}
    for a, b in cut:
        if not T.has_edge(a, b):
            raise PreconditionError(f"cycle edge {a}-{b} missing")
    root = _face_components(T, cut)
    left = root[T.dart_face[Dart(cyc[0], cyc[1])]]
    right = root[T.dart_face[Dart(cyc[1], cyc[0])]]
    side = right if left == root[T.outer_face.index] else left
    return {i for i, r in enumerate(root) if r == side and not T.faces[i].outer}


def cycle_census(T: Cppt, cycle: Sequence[int]) -> tuple[int, int, int]:
    """``(b, c, t)`` for a simple cycle: length, corners reflex inside, triangles inside."""
    inside = cycle_interior_faces(T, cycle)
    c = sum(1 for v in cycle if T.angle_face(T.reflex_angle(v)) in inside)
    t = sum(1 for i in inside if T.faces[i].size == 3)
    return len(cycle), c, t


class LamanWitness(NamedTuple):
    subset: tuple[int, ...]
    edges: int
    bound: int


def check_generalized_laman(T: Cppt, cap: int = 16) -> tuple[bool, LamanWitness | None]:
    """Brute-force generalized Laman check over all vertex subsets.

    Every vertex of a Cppt is pointed, so a subset ``S`` may induce at most
    ``2|S| - 3`` edges.  Returns the first violating subset, if any.
    """
    n = T.n
    if n > cap:
        raise PreconditionError(f"n={n} exceeds the brute-force cap {cap}")
    adj = [0] * n
    for u, v in T.edges():
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    for size in range(2, n + 1):
        for subset in itertools.combinations(range(n), size):
            mask = 0
            for v in subset:
                mask |= 1 << v
            e = sum(bin(adj[v] & mask).count("1") for v in subset) // 2
            bound = 2 * size - 3
            if e > bound:
                return False, LamanWitness(subset, e, bound)
    return True, None


def laman_bound(nonpointed: int, pointed: int) -> int:
    return 3 * nonpointed + 2 * pointed - 3


def induced_edge_violation(rotations: Sequence[Sequence[int]], pointed: Sequence[bool]) -> LamanWitness | None:
    """Generalized Laman check for a tagged graph that need not be a Cppt."""
    n = len(rotations)
    adj = [0] * n
    for u, r in enumerate(rotations):
        for v in r:
            adj[u] |= 1 << v
    for size in range(2, n + 1):
        for subset in itertools.combinations(range(n), size):
            mask = sum(1 << v for v in subset)
            e = sum(bin(adj[v] & mask).count("1") for v in subset) // 2
            x = sum(1 for v in subset if not pointed[v])
            bound = laman_bound(x, size - x)
            if e > bound:
                return LamanWitness(subset, e, bound)
    return None


def from_faces(
    n: int,
    outer: Sequence[int],
    faces: Iterable[Sequence[int]],
    reflex: dict[int, int] | None = None,
    labels: Sequence[str] | None = None,
) -> Cppt:
    """Build a Cppt from its interior faces listed counterclockwise.

    ``reflex`` maps each interior vertex to the neighbour after which its
    reflex gap lies; outer vertices get their outer-face angle automatically.
    """
    outer = tuple(outer)
    succ: list[dict[int, int]] = [{} for _ in range(n)]
    walks = [tuple(f) for f in faces] + [tuple(reversed(outer))]
    for walk in walks:
        k = len(walk)
        for i in range(k):
            a, v, w = walk[i - 1], walk[i], walk[(i + 1) % k]
            if w in succ[v]:
                raise StructureError(f"dart {v}->{w} appears in two faces")
            succ[v][w] = a
    rot = []
    for v in range(n):
        if not succ[v]:
            raise StructureError(f"vertex {v} lies on no face")
        start = min(succ[v])
        r = [start]
        x = succ[v][start]
        while x != start:
            r.append(x)
            x = succ[v][x]
        if len(r) != len(succ[v]):
            raise StructureError(f"faces around vertex {v} do not close up")
        rot.append(r)
    h = len(outer)
    full = dict(reflex or {})
    for k, o in enumerate(outer):
        full[o] = outer[k - 1]
    return build(rot, outer, full, labels)
