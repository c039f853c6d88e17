"""Flip sequences for arbitrary outer faces and between two 4-PPTs.

Outer cycle ``o_1 .. o_h`` is ``T.outer[0] .. T.outer[h-1]``; the cell
``C_j`` is the triangle ``o_1 o_j o_{j+1}`` of the fan at ``o_1``.
"""

from __future__ import annotations

from typing import Sequence

from .canonical import (
    FlipSequence,
    SequenceError,
    _expect,
    _face_of,
    canonical_to_spinal,
    canonicalize_region,
    canonicalize_triangular,
    inner_neighbours,
    move_triangle_to_edge,
    region_vertices,
    sort_labels,
    spinal_to_canonical,
)
from .core import Cppt, PreconditionError, edge_key, validate
from .flips import FlipCase, FlipError, _apply, _merged_walk, find_move, flip_candidates
from .forms import canonical_order, classify, outer_roles

Roles = tuple[int, int, int]


# -------------------------------------------------------------- rotation


def _rotated_roles(roles: Roles, base: tuple[int, int]) -> tuple[str, Roles]:
    r, s, t = roles
    b = edge_key(*base)
    if b == edge_key(r, s):
        return "rs", (r, s, t)
    if b == edge_key(s, t):
        return "st", (s, t, r)
    if b == edge_key(t, r):
        return "tr", (t, r, s)
    raise PreconditionError(f"{base} is not an edge of the triangle {roles}")


def rotate_canonical(T: Cppt, new_base: tuple[int, int], roles: Roles | None = None,
                     seq: FlipSequence | None = None) -> FlipSequence:
    """Make a canonical region (base ``rs``) canonical with base ``st`` or ``tr``.

    Goes through a spinal form, rotates the spine with every other
    non-spinal flip and comes back down; for an even number of interior
    vertices the last spine flip is fused with the first flip back.
    """
    seq = seq if seq is not None else FlipSequence(T)
    r, s, t = roles if roles is not None else outer_roles(seq.end)
    order = canonical_order(seq.end, r, s, t)
    if order is None:
        raise PreconditionError("input is not canonical for these roles")
    which, new_roles = _rotated_roles((r, s, t), new_base)
    i = len(order)
    if which == "rs" or i == 0:
        return seq
    X = r if which == "st" else s
    odd = i % 2 == 1
    if which == "st":
        side = "r" if odd else "s"
    else:
        side = "s" if odd else "r"
    canonical_to_spinal(seq.end, side, (r, s, t), seq)
    v = [None] + order
    for j in range(i, 2, -2):
        seq.flip((X, v[j]), (t, v[j - 2]), "rotate/spine")
    if odd:
        spinal_to_canonical(seq.end, new_roles, seq)
        return seq
    before = seq.end
    tail = FlipSequence(before)
    tail.flip((X, v[2]), (X, v[1]), "rotate/spine")
    spinal_to_canonical(tail.end, new_roles, tail)
    m0, m1 = tail.moves[0], tail.moves[1]
    fused = None
    if m0.inserted == m1.removed:
        try:
            cand = find_move(before, m0.removed, m1.inserted)
        except FlipError:
            cand = None
        if cand is not None and _apply(before, cand).key() == tail.replay()[2].key():
            fused = cand
    if fused is None:
        seq.extend(tail)
    else:
        seq.push(fused, "rotate/fused")
        for m, stage in zip(tail.moves[2:], tail.stages[2:]):
            seq.push(m, stage)
    return seq


# ----------------------------------------------------------------- merge


def _cell(T: Cppt, j: int) -> tuple[int, int, int]:
    o = T.outer
    return o[0], o[j - 1], o[j]


def merge_cells(T: Cppt, j: int, seq: FlipSequence | None = None) -> FlipSequence:
    """Move every interior vertex of ``C_{j+1}`` into ``C_j``.

    ``C_j`` must be canonical with base ``o_{j+1} o_1`` and ``C_{j+1}``
    canonical with base ``o_1 o_{j+1}``.  The shared diagonal is flipped
    away, each moved vertex costs two flips, and one flip brings the
    diagonal back; ``C_j`` ends canonical with base ``o_{j+1} o_1`` and the
    moved vertices (top first) below its old ones.
    """
    seq = seq if seq is not None else FlipSequence(T)
    T = seq.end
    h = T.h
    if not 2 <= j <= h - 2:
        raise PreconditionError(f"cell index {j} out of range for h={h}")
    o = T.outer
    a, oj, b, c = o[0], o[j - 1], o[j], o[j + 1]
    U = canonical_order(T, b, a, oj)
    W = canonical_order(T, a, b, c)
    if U is None or W is None:
        raise PreconditionError("cells are not canonical on the shared diagonal")
    if not W:
        return seq
    x = U[0] if U else oj
    _expect(seq, (a, b), (x, W[0]), "merge/open")
    prev, hub = x, a
    for k, w in enumerate(W):
        nxt = W[k + 1] if k + 1 < len(W) else c
        for H in (hub, b if hub == a else a):
            trial = FlipSequence(seq.end)
            try:
                trial.flip((H, w), (w, nxt), "merge/down")
                trial.flip((prev, w), (H, w), "merge/down")
            except FlipError:
                continue
            seq.extend(trial)
            hub = b if H == a else a
            break
        else:
            raise SequenceError(f"merge: no hub moves {w} down")
        prev = w
    _expect(seq, (c, W[-1]), (a, b), "merge/close")
    return seq


# -------------------------------------------------------------- ear cuts


def cut_ear(T: Cppt, cycle: Sequence[int] | None = None, seq: FlipSequence | None = None) -> FlipSequence:
    """Introduce the diagonal ``o_1 o_{h-1}`` so that ``o_1 o_{h-1} o_h`` is a face.

    ``cycle`` is the counterclockwise region ``o_1 .. o_h`` (default: the
    outer cycle).  A triangle is first moved onto ``o_h o_1``; then each
    edge at ``o_h`` between ``o_1`` and ``o_{h-1}`` is flipped away, with at
    most one substitute ``o_1'`` for ``o_1`` and one closing flip for it.
    """
    seq = seq if seq is not None else FlipSequence(T)
    cycle = tuple(cycle) if cycle is not None else seq.end.outer
    m = len(cycle)
    if m < 4:
        raise PreconditionError("cut_ear needs at least four boundary vertices")
    o1, oh, oprev = cycle[0], cycle[-1], cycle[-2]
    if seq.end.has_edge(o1, oprev):
        raise PreconditionError(f"diagonal {o1}-{oprev} already present")
    move_triangle_to_edge(seq.end, (oh, o1), cycle, seq, "ear/triangle")
    A = o1
    renamed = False
    while True:
        T = seq.end
        W = inner_neighbours(T, cycle, m - 1)
        p = W.index(A)
        w = W[p + 1]
        if w == oprev:
            break
        nxt = W[p + 2]
        tri = _face_of(T, (oh, A))
        if tri.size != 3 or w not in tri.vertices:
            raise SequenceError(f"ear: no triangle on {oh}-{A}")
        _, case, _, _ = _merged_walk(T, oh, w)
        if case is FlipCase.TT:
            _expect(seq, (oh, w), (A, nxt), "ear/4")
        elif case is FlipCase.DEG5:
            if renamed:
                raise SequenceError("ear: second substitute vertex")
            cands = flip_candidates(T, (A, w))
            if len(cands) != 1:
                raise SequenceError(f"ear/1: expected a unique flip of {A}-{w}")
            seq.push(cands[0], "ear/1")
            A, renamed = w, True
        elif T.has_edge(A, nxt):
            if renamed:
                raise SequenceError("ear: second substitute vertex")
            F = _face_of(T, (oh, w))
            X = [y for y in F.vertices if y not in (oh, A, w, nxt)]
            if len(X) != 1:
                raise SequenceError(f"ear/2: unexpected face {F.vertices}")
            _expect(seq, (oh, w), (X[0], oh), "ear/2")
            A, renamed = X[0], True
        else:
            _expect(seq, (oh, w), (A, nxt), "ear/3")
    # the triangle relocation may already have introduced the diagonal
    if A != o1 and not seq.end.has_edge(o1, oprev):
        _expect(seq, (A, oh), (o1, oprev), "ear/close")
    return seq


def fan_outer_face(T: Cppt, seq: FlipSequence | None = None) -> FlipSequence:
    """Add the diagonals ``o_1 o_j`` from ``j = h-1`` down to ``3``."""
    seq = seq if seq is not None else FlipSequence(T)
    o = seq.end.outer
    for j in range(len(o) - 1, 2, -1):
        if not seq.end.has_edge(o[0], o[j - 1]):
            cut_ear(seq.end, o[:j + 1], seq)
    return seq


def _check_fan(T: Cppt) -> None:
    o = T.outer
    for j in range(3, len(o)):
        if not T.has_edge(o[0], o[j - 1]):
            raise PreconditionError(f"fan diagonal {o[0]}-{o[j - 1]} missing")


def canonicalize_cells(T: Cppt, seq: FlipSequence | None = None) -> FlipSequence:
    """Canonical form with base ``o_1 o_j`` inside every cell ``o_1 o_j o_{j+1}``."""
    seq = seq if seq is not None else FlipSequence(T)
    _check_fan(seq.end)
    for j in range(2, seq.end.h):
        r, s, t = _cell(seq.end, j)
        canonicalize_region(seq.end, r, s, t, seq, f"cell/{j}")
    return seq


def canonicalize_general(T: Cppt, seq: FlipSequence | None = None) -> FlipSequence:
    """Flip to the general canonical form: fan at ``o_1``, every interior
    vertex stacked in ``o_1 o_2 o_3`` with base ``o_1 o_2``."""
    if not validate(T).valid:
        raise PreconditionError("invalid 4-PPT")
    if T.h == 3:
        if seq is None:
            return canonicalize_triangular(T)
        return canonicalize_region(seq.end, *outer_roles(seq.end), seq)
    fresh = seq is None
    seq = seq if seq is not None else FlipSequence(T)
    if classify(seq.end).form == "general-canonical":
        return seq
    fan_outer_face(seq.end, seq)
    canonicalize_cells(seq.end, seq)
    h = seq.end.h
    acc = _cell(seq.end, h - 1)
    for j in range(h - 2, 1, -1):
        o1, oj, oj1 = _cell(seq.end, j)
        if not region_vertices(seq.end, acc):
            acc = (o1, oj, oj1)
            continue
        _rotate(seq, acc, (o1, oj1))
        _rotate(seq, (o1, oj, oj1), (oj1, o1))
        merge_cells(seq.end, j, seq)
        acc = (oj1, o1, oj)
    o = seq.end.outer
    _rotate(seq, acc, (o[0], o[1]))
    return seq.cancel_inverses() if fresh else seq


def _rotate(seq: FlipSequence, roles: Roles, base: tuple[int, int]) -> Roles:
    which, new = _rotated_roles(roles, base)
    if which != "rs":
        rotate_canonical(seq.end, base, roles, seq)
    return new


# -------------------------------------------------------- between two


def _same_outer(T1: Cppt, T2: Cppt) -> None:
    if T1.n != T2.n or T1.outer != T2.outer:
        raise PreconditionError("outer faces or vertex sets differ")
    if T1.labels is not None or T2.labels is not None:
        l1 = [T1.label(v) for v in T1.outer]
        l2 = [T2.label(v) for v in T2.outer]
        if l1 != l2:
            raise PreconditionError("outer labels differ")


def _stack_roles(T: Cppt) -> Roles:
    if T.h == 3:
        return outer_roles(T)
    o = T.outer
    return o[0], o[1], o[2]


def flip_sequence(T1: Cppt, T2: Cppt, labeled: bool = True) -> FlipSequence:
    """A flip sequence from ``T1`` to ``T2`` through the canonical form.

    In labeled mode the interior order is bubble-sorted to match ``T2``'s
    canonical form and the sequence ends exactly at ``T2``.  Unlabeled, the
    sort is skipped and the sequence ends at a relabelling of ``T2`` that
    fixes the outer cycle.
    """
    _same_outer(T1, T2)
    seq = canonicalize_general(T1)
    back = canonicalize_general(T2)
    roles = _stack_roles(T1)
    have = canonical_order(seq.end, *roles)
    want = canonical_order(back.end, *roles)
    if labeled:
        sort = sort_labels(seq.end, want, roles)
        seq.extend(sort)
        for m in reversed(back.moves):
            seq.flip(m.inserted, m.removed, "reverse")
        return seq.cancel_inverses()
    perm = list(range(T1.n))
    for u, v in zip(want, have):
        perm[u] = v
    for m in reversed(back.moves):
        (a, b), (c, d) = m.inserted, m.removed
        seq.flip((perm[a], perm[b]), (perm[c], perm[d]), "reverse")
    return seq.cancel_inverses()


__all__ = [
    "canonicalize_cells",
    "canonicalize_general",
    "cut_ear",
    "fan_outer_face",
    "flip_sequence",
    "merge_cells",
    "rotate_canonical",
]
