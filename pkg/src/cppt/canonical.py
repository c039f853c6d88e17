"""Constructive flip sequences towards canonical 4-PPTs (triangular regions).

Every routine works on a *region*: a simple cycle ``c_0 ... c_{m-1}`` listed
counterclockwise, whose inside is a union of interior faces.  The whole graph
is the region bounded by its outer cycle.  Flips never touch region boundary
edges, so everything outside the region stays untouched.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import Cppt, Dart, PreconditionError, edge_key, validate
from .flips import FlipCase, FlipError, FlipMove, _apply, _merged_walk, apply_flip, find_move, flip_candidates
from .forms import CanonicalProfile, canonical_order, classify, outer_roles, spinal_order


class SequenceError(RuntimeError):
    """A constructive step found no flip where the construction promises one."""


@dataclass
class FlipSequence:
    start: Cppt
    moves: list[FlipMove] = field(default_factory=list)
    stages: list[str] = field(default_factory=list)
    _end: Cppt | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.moves)

    @property
    def end(self) -> Cppt:
        if self._end is None:
            self._end = self.replay()[-1]
        return self._end

    def push(self, m: FlipMove, stage: str) -> Cppt:
        T = _apply(self.end, m)
        self.moves.append(m)
        self.stages.append(stage)
        self._end = T
        return T

    def flip(self, removed, inserted=None, stage: str = "") -> Cppt:
        return self.push(find_move(self.end, removed, inserted), stage)

    def extend(self, other: "FlipSequence") -> Cppt:
        if other.start.key() != self.end.key():
            raise PreconditionError("sequences do not chain")
        self.moves.extend(other.moves)
        self.stages.extend(other.stages)
        self._end = other.end
        return self._end

    def replay(self, check: bool = False) -> list[Cppt]:
        """All intermediate 4-PPTs; with ``check`` every move is re-verified."""
        out = [self.start]
        T = self.start
        for m in self.moves:
            T = apply_flip(T, m) if check else _apply(T, m)
            out.append(T)
        return out

    def reversed(self) -> "FlipSequence":
        states = self.replay()
        rev = FlipSequence(states[-1])
        for m, stage in zip(reversed(self.moves), reversed(self.stages)):
            rev.flip(m.inserted, m.removed, stage)
        return rev

    def pairs(self) -> list[tuple[tuple[int, int], tuple[int, int]]]:
        return [m.pair() for m in self.moves]

    def cancel_inverses(self) -> "FlipSequence":
        """Drop adjacent move pairs that undo each other; the endpoint is unchanged."""
        moves: list[FlipMove] = []
        stages: list[str] = []
        for m, st in zip(self.moves, self.stages):
            if moves and moves[-1].removed == m.inserted and moves[-1].inserted == m.removed:
                moves.pop()
                stages.pop()
            else:
                moves.append(m)
                stages.append(st)
        self.moves, self.stages = moves, stages
        return self


def verify_sequence(seq: FlipSequence) -> tuple[bool, int | None]:
    """``(ok, index)``; ``index`` is the first move that is invalid or breaks validity."""
    T = seq.start
    for i, m in enumerate(seq.moves):
        try:
            T = apply_flip(T, m)
        except FlipError:
            return False, i
        if not validate(T).valid:
            return False, i
    return True, None


# ---------------------------------------------------------------- regions


def region_faces(T: Cppt, cycle: Sequence[int]) -> set[int]:
    """Faces on the left of the counterclockwise cycle."""
    cyc = tuple(cycle)
    m = len(cyc)
    cut = {edge_key(cyc[k], cyc[(k + 1) % m]) for k in range(m)}
    for a, b in cut:
        if not T.has_edge(a, b):
            raise PreconditionError(f"region edge {a}-{b} missing")
    start = T.dart_face[Dart(cyc[0], cyc[1])]
    if T.faces[start].outer:
        raise PreconditionError("region cycle must be listed counterclockwise")
    seen = {start}
    stack = [start]
    while stack:
        f = stack.pop()
        for d in T.faces[f].darts:
            if edge_key(*d) in cut:
                continue
            g = T.dart_face[Dart(d.target, d.origin)]
            if g not in seen:
                if T.faces[g].outer:
                    raise PreconditionError("cycle does not bound a region")
                seen.add(g)
                stack.append(g)
    return seen


def region_vertices(T: Cppt, cycle: Sequence[int]) -> set[int]:
    vs: set[int] = set()
    for f in region_faces(T, cycle):
        vs.update(T.faces[f].vertices)
    return vs - set(cycle)


def inner_neighbours(T: Cppt, cycle: Sequence[int], k: int) -> list[int]:
    """Neighbours of ``c_k`` inside the region, counterclockwise, framed by the cycle.

    Returns ``[c_{k+1}, ..., c_{k-1}]``.
    """
    m = len(cycle)
    v, nxt, prv = cycle[k], cycle[(k + 1) % m], cycle[k - 1]
    out = [nxt]
    w = T.succ(v, nxt)
    while w != prv:
        out.append(w)
        w = T.succ(v, w)
    out.append(prv)
    return out


def _face_of(T: Cppt, d: tuple[int, int]):
    return T.faces[T.dart_face[Dart(*d)]]


# ---------------------------------------------------- triangle relocation


def _dual_path(T: Cppt, faces: set[int], target: int) -> list[tuple[int, tuple[int, int] | None]]:
    """Shortest dual path from the nearest triangle to ``target``.

    Returns ``[(F_0, e_1), (F_1, e_2), ..., (F_last, None)]`` with ``F_0`` a
    triangle and ``e_j`` separating consecutive faces.
    """
    prev: dict[int, tuple[int, tuple[int, int]] | None] = {target: None}
    q = deque([target])
    found = None
    while q:
        f = q.popleft()
        if T.faces[f].size == 3:
            found = f
            break
        for d in T.faces[f].darts:
            g = T.dart_face[Dart(d.target, d.origin)]
            if g in faces and g not in prev:
                prev[g] = (f, edge_key(*d))
                q.append(g)
    if found is None:
        raise SequenceError("region holds no triangle")
    path = []
    f = found
    while prev[f] is not None:
        nxt, e = prev[f]
        path.append((f, e))
        f = nxt
    path.append((f, None))
    return path


@dataclass
class DualPath:
    faces: list[tuple[int, ...]]
    crossing_edges: list[tuple[int, int]]


def dual_path(T: Cppt, b: tuple[int, int], cycle: Sequence[int] | None = None) -> DualPath:
    """Dual path from a triangle to the face on the inner side of boundary edge ``b``."""
    cycle = tuple(cycle) if cycle is not None else T.outer
    d = _boundary_dart(cycle, b)
    faces = region_faces(T, cycle)
    path = _dual_path(T, faces, T.dart_face[Dart(*d)])
    return DualPath([T.faces[f].vertices for f, _ in path] + [tuple(cycle)],
                    [e for _, e in path[:-1]] + [edge_key(*b)])


def _boundary_dart(cycle: Sequence[int], b: tuple[int, int]) -> tuple[int, int]:
    m = len(cycle)
    for k in range(m):
        a, c = cycle[k], cycle[(k + 1) % m]
        if edge_key(a, c) == edge_key(*b):
            return a, c
    raise PreconditionError(f"{b} is not a boundary edge of the region")


def _triangle_on(T: Cppt, e: tuple[int, int], side: tuple[int, int] | None = None) -> bool:
    """Whether a triangle touches ``e`` (only on the left of dart ``side`` if given)."""
    darts = [side] if side is not None else [e, (e[1], e[0])]
    for d in darts:
        f = _face_of(T, d)
        if not f.outer and f.size == 3:
            return True
    return False


def move_triangle_to_edge(T: Cppt, b: tuple[int, int], cycle: Sequence[int] | None = None,
                          seq: FlipSequence | None = None, stage: str = "triangle-to-edge") -> FlipSequence:
    """Flip an interior triangle of the region onto its boundary edge ``b``.

    Follows a shortest dual path from the nearest triangle; each flip moves
    the triangle one face along the path.
    """
    seq = seq if seq is not None else FlipSequence(T)
    cycle = tuple(cycle) if cycle is not None else seq.end.outer
    d = _boundary_dart(cycle, b)
    while True:
        T = seq.end
        target = T.dart_face[Dart(*d)]
        if T.faces[target].size == 3:
            return seq
        faces = region_faces(T, cycle)
        path = _dual_path(T, faces, target)
        tri, _ = path[0]
        nxt_face, _ = path[1]
        e_next = path[1][1] if len(path) > 2 else edge_key(*d)
        side = None if len(path) > 2 else d
        shared = sorted({edge_key(*x) for x in T.faces[tri].darts} & {edge_key(*x) for x in T.faces[nxt_face].darts})
        chosen = None
        for e in shared:
            for m in flip_candidates(T, e):
                U = _apply(T, m)
                if U.has_edge(*e_next) and _triangle_on(U, e_next, side):
                    chosen = m
                    break
            if chosen is not None:
                break
        if chosen is None:
            raise SequenceError(f"no flip moves the triangle towards {e_next}")
        seq.push(chosen, stage)


# ------------------------------------------------------------ tip clearing


def _expect(seq: FlipSequence, removed, inserted, stage) -> Cppt:
    try:
        m = find_move(seq.end, removed, inserted)
    except FlipError as exc:
        raise SequenceError(f"{stage}: {exc}") from None
    return seq.push(m, stage)


def _phase_end(seq: FlipSequence, t: int, w0: int, w1: int, w2: int, stage: str) -> None:
    """Flip away the last inner edge ``t w1``; the triangle lies on the ``w0`` side."""
    T = seq.end
    _, case, _, _ = _merged_walk(T, t, w1)
    if case is FlipCase.DEG5:
        cands = flip_candidates(T, (t, w1))
        if len(cands) != 1:
            raise SequenceError(f"{stage}: expected a unique flip of {t}-{w1}")
        seq.push(cands[0], stage)
        return
    # the face F = t w1 u w2 across t w1
    F = _face_of(T, (t, w1) if T.succ(t, w0) == w1 else (w1, t))
    u = [x for x in F.vertices if x not in (t, w1, w2)]
    if F.size != 4 or len(u) != 1:
        raise SequenceError(f"{stage}: unexpected face {F.vertices}")
    u = u[0]
    reflex_at = next((d.origin for d in F.darts if T.reflex[d.origin] == d.target), None)
    if reflex_at == u:
        _expect(seq, (t, w1), (w0, u), stage)
    elif reflex_at == w1:
        _expect(seq, (t, w1), (w1, w2), stage)
    else:
        raise SequenceError(f"{stage}: reflex angle of {F.vertices} at {reflex_at}")


def clear_tip(T: Cppt, r: int, t: int, cycle: Sequence[int] | None = None,
              seq: FlipSequence | None = None) -> FlipSequence:
    """Remove every inner edge at tip ``t`` of a triangular region.

    The region (default: the outer face) is a counterclockwise triangle in
    which ``r`` follows ``t``; its interior triangle must be incident to ``rt``.
    """
    seq = seq if seq is not None else FlipSequence(T)
    cycle = tuple(cycle) if cycle is not None else seq.end.outer
    if len(cycle) != 3 or t not in cycle or cycle[(cycle.index(t) + 1) % 3] != r:
        raise PreconditionError("clear_tip needs a counterclockwise triangle ... t r ...")
    kt = cycle.index(t)
    if len(inner_neighbours(seq.end, cycle, kt)) > 2 and _face_of(seq.end, (t, r)).size != 3:
        raise PreconditionError("the region's triangle is not incident to r-t")
    phase = 1
    while True:
        W = inner_neighbours(seq.end, cycle, kt)
        k = len(W) - 1
        if k < 2:
            return seq
        T = seq.end
        w0, w1, w2 = W[0], W[1], W[2]
        if phase == 1:
            if k == 2:
                _phase_end(seq, t, w0, w1, w2, "clear-tip/1.1")
                return seq
            if not T.has_edge(w0, w2):
                _expect(seq, (t, w1), (w0, w2), "clear-tip/1.2")
                continue
            # triangle t w0 w1: faces across its inner edges w0-w1 and t-w1
            Fa = _face_of(T, (w1, w0))
            Fb = _face_of(T, (t, w1))
            if Fa.index == Fb.index:
                _expect(seq, (w0, w1), (w1, w2), "clear-tip/1.3")
            else:
                u = [x for x in Fb.vertices if x not in (t, w1, w2)]
                if len(u) != 1:
                    raise SequenceError(f"clear-tip/1.3: unexpected face {Fb.vertices}")
                _expect(seq, (t, w1), (t, u[0]), "clear-tip/1.3")
            phase = 2
            continue
        if k >= 3:
            _expect(seq, (t, w2), (w1, W[3]), "clear-tip/2.1")
            continue
        # mirror image of phase 1, case 1 on the triangle t w1 w2
        _phase_end(seq, t, w2, w1, w0, "clear-tip/2.2")
        return seq


def canonicalize_region(T: Cppt, r: int, s: int, t: int, seq: FlipSequence | None = None,
                        stage: str = "canonicalize") -> FlipSequence:
    """Make the region inside ``r s t`` (counterclockwise) canonical with base ``rs``."""
    seq = seq if seq is not None else FlipSequence(T)
    tip = t
    while True:
        cyc = (r, s, tip)
        if canonical_order(seq.end, r, s, tip) is not None:
            return seq
        if spinal_order(seq.end, r, s, tip) is not None:
            return spinal_to_canonical(seq.end, (r, s, tip), seq)
        move_triangle_to_edge(seq.end, (tip, r), cyc, seq, stage + "/triangle")
        clear_tip(seq.end, r, tip, cyc, seq)
        U = seq.end
        F = _face_of(U, (tip, r))
        if F.size != 4:
            raise SequenceError("cleared tip is not on a quadrilateral")
        tip = [x for x in F.vertices if x not in (r, s, tip)][0]


def canonicalize_triangular(T: Cppt, roles: tuple[int, int, int] | None = None) -> FlipSequence:
    """Flip ``T`` (triangular outer face) to the canonical form for ``roles``."""
    if T.h != 3:
        raise PreconditionError("canonicalize_triangular needs a triangular outer face")
    r, s, t = roles if roles is not None else outer_roles(T)
    return canonicalize_region(T, r, s, t).cancel_inverses()


# ------------------------------------------------------ canonical / spinal


def canonical_to_spinal(T: Cppt, side: str = "s", roles=None, seq: FlipSequence | None = None) -> FlipSequence:
    """Observation-style transform: ``i`` flips to the r- or s-spinal form."""
    if side not in ("r", "s"):
        raise PreconditionError("side must be 'r' or 's'")
    seq = seq if seq is not None else FlipSequence(T)
    r, s, t = roles if roles is not None else outer_roles(seq.end)
    order = canonical_order(seq.end, r, s, t)
    if order is None:
        raise PreconditionError("input is not canonical for these roles")
    path = order + [t]
    hub = r if side == "s" else s
    for k, v in enumerate(order):
        seq.flip((hub, v), (v, path[k + 1]), f"to-{side}-spinal")
        hub = s if hub == r else r
    return seq


def spinal(n: int, side: str = "s", order: Sequence[int] | None = None) -> Cppt:
    """The r- or s-spinal 4-PPT on outer triangle ``0 1 2`` with spine ``order``."""
    from .forms import canonical

    return canonical_to_spinal(canonical(n, 3, order), side, (0, 1, 2)).end


def spinal_to_canonical(T: Cppt, roles=None, seq: FlipSequence | None = None) -> FlipSequence:
    seq = seq if seq is not None else FlipSequence(T)
    r, s, t = roles if roles is not None else outer_roles(seq.end)
    res = spinal_order(seq.end, r, s, t)
    if res is None:
        raise PreconditionError("input is not spinal for these roles")
    side, order = res
    path = order + [t]
    hub = r if side == "s" else s
    hubs = []
    for v in order:
        hubs.append(hub)
        hub = s if hub == r else r
    for k in range(len(order) - 1, -1, -1):
        v = order[k]
        seq.flip((v, path[k + 1]), (hubs[k], v), "from-spinal")
    return seq


# ----------------------------------------------------------------- swaps

# Local swap gadgets: "spinal in r s t'" -> "spinal in r s v_{k+1}" with the
# labels at positions k and k+1 exchanged.  Roles: b = v_k, c = v_{k+1},
# a = v_{k-1}, tp = t', P = the hub of c, Q = the other hub.  Found by a
# shortest-path search restricted to these vertices (scripts/derive_swaps.py)
# and checked by replay for every n <= 9, every k and both spinal sides.
SWAP_GADGETS: dict[int, tuple[tuple[tuple[str, str], tuple[str, str]], ...]] = {
    1: (
        (("P", "c"), ("P", "b")),
        (("Q", "b"), ("Q", "c")),
        (("c", "tp"), ("Q", "b")),
    ),
    2: (
        (("P", "c"), ("P", "b")),
        (("P", "a"), ("Q", "a")),
        (("Q", "b"), ("Q", "c")),
        (("c", "tp"), ("Q", "b")),
        (("Q", "c"), ("a", "c")),
        (("a", "b"), ("P", "c")),
    ),
    3: (
        (("P", "c"), ("b", "tp")),
        (("c", "tp"), ("Q", "c")),
        (("Q", "b"), ("a", "c")),
        (("b", "c"), ("Q", "b")),
        (("b", "tp"), ("P", "b")),
        (("a", "b"), ("b", "c")),
    ),
}


def _hub(T: Cppt, v: int, r: int, s: int) -> int:
    hs = [x for x in (r, s) if T.has_edge(v, x)]
    if len(hs) != 1:
        raise PreconditionError(f"vertex {v} is not attached to exactly one hub")
    return hs[0]


def _spine_in(T: Cppt, r: int, s: int, tp: int, length: int) -> list[int]:
    res = spinal_order(T, r, s, tp)
    if res is None or len(res[1]) != length:
        raise PreconditionError(f"not spinal in {r} {s} {tp} with {length} interior vertices")
    return res[1]


def swap_gadget(T: Cppt, k: int, roles=None, seq: FlipSequence | None = None) -> FlipSequence:
    """Exchange ``v_k`` and ``v_{k+1}``: spinal in ``r s t'`` to spinal in ``r s v_{k+1}``."""
    seq = seq if seq is not None else FlipSequence(T)
    r, s, t = roles if roles is not None else outer_roles(seq.end)
    T = seq.end
    order, tp = canonical_spine_positions(T, r, s, t, k)
    b, c = order[k - 1], order[k]
    P = _hub(T, c, r, s)
    names = {"P": P, "Q": s if P == r else r, "b": b, "c": c, "tp": tp}
    if k >= 2:
        names["a"] = order[k - 2]
    for (x, y), (u, w) in SWAP_GADGETS[min(k, 3)]:
        _expect(seq, (names[x], names[y]), (names[u], names[w]), f"swap/{min(k, 3)}")
    return seq


def canonical_spine_positions(T: Cppt, r: int, s: int, t: int, k: int) -> tuple[list[int], int]:
    """Spine ``v_1 .. v_{k+1}`` and ``t'`` of a 4-PPT spinal in ``r s t'``.

    Between ``t'`` and ``t`` the 4-PPT must be canonical: every vertex there
    is adjacent to both hubs.
    """
    cur = t
    while True:
        res = spinal_order(T, r, s, cur)
        if res is not None and len(res[1]) == k + 1:
            return res[1], cur
        below = [x for x in T.face_vertices((cur, r)) if x not in (r, s, cur)]
        if len(below) != 1 or not (T.has_edge(below[0], r) and T.has_edge(below[0], s)):
            raise PreconditionError(f"not spinal in r s t' with {k + 1} spine vertices")
        cur = below[0]


def swap_neighbors(T: Cppt, k: int, roles=None, seq: FlipSequence | None = None) -> FlipSequence:
    """Swap gadget plus one flip back to spinal in ``r s t'``."""
    seq = seq if seq is not None else FlipSequence(T)
    r, s, t = roles if roles is not None else outer_roles(seq.end)
    order, tp = canonical_spine_positions(seq.end, r, s, t, k)
    b, c = order[k - 1], order[k]
    swap_gadget(seq.end, k, (r, s, t), seq)
    # b now sits at position k+1, adjacent to both hubs; c at position k
    H = _hub(seq.end, c, r, s) if k > 0 else r
    seq.flip((H, b), (b, tp), "swap/return")
    return seq


def sort_labels(T: Cppt, target: Sequence[int], roles=None) -> FlipSequence:
    """Reorder the interior labels of a canonical 4-PPT by spinal bubble sort.

    Each pass flips to the s-spinal form, walks the spine from the top,
    exchanging out-of-order neighbours with a swap gadget (or stepping down
    with one flip), and ends with one flip back to the canonical form.
    Passes repeat until the order matches ``target``; at least one pass is
    run when there are two or more interior vertices.
    """
    seq = FlipSequence(T)
    r, s, t = roles if roles is not None else outer_roles(T)
    cur = canonical_order(T, r, s, t)
    if cur is None:
        raise PreconditionError("sort_labels needs a canonical 4-PPT")
    target = list(target)
    if sorted(target) != sorted(cur):
        raise PreconditionError("target must be a permutation of the interior vertices")
    i = len(cur)
    if i < 2:
        return seq
    rank = {v: j for j, v in enumerate(target)}
    passes = 0
    while passes == 0 or cur != target:
        passes += 1
        canonical_to_spinal(seq.end, "s", (r, s, t), seq)
        for k in range(i - 1, 0, -1):
            tp = cur[k + 1] if k + 1 < i else t
            if rank[cur[k - 1]] > rank[cur[k]]:
                swap_gadget(seq.end, k, (r, s, t), seq)
                cur[k - 1], cur[k] = cur[k], cur[k - 1]
            else:
                v = cur[k]
                H = _hub(seq.end, v, r, s)
                seq.flip((v, tp), (v, s if H == r else r), "sort/step")
        v1 = cur[0]
        H = _hub(seq.end, v1, r, s)
        seq.flip((v1, cur[1]), (v1, s if H == r else r), "sort/close")
        if passes > i:
            raise SequenceError("bubble sort did not converge")
    return seq


__all__ = [
    "CanonicalProfile",
    "DualPath",
    "FlipSequence",
    "SequenceError",
    "canonical_to_spinal",
    "canonicalize_region",
    "canonicalize_triangular",
    "classify",
    "clear_tip",
    "dual_path",
    "inner_neighbours",
    "move_triangle_to_edge",
    "region_faces",
    "region_vertices",
    "SWAP_GADGETS",
    "sort_labels",
    "spinal",
    "swap_gadget",
    "swap_neighbors",
    "spinal_to_canonical",
    "verify_sequence",
]
