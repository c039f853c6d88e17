"""Exhaustive enumeration and flip graphs at small ``n``.

Two independent generators produce the universe of 4-PPTs on a fixed outer
cycle ``0 .. h-1``:

* ``closure``: breadth-first flip closure from the canonical form;
* ``direct``: builds the plane graph face by face, filling holes with
  triangles and quadrilaterals (one reflex corner each), then validates.

Agreement of the two is an empirical connectivity certificate.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .core import Cppt, PreconditionError, StructureError, edge_key, from_faces, validate
from .flips import neighbours

log = logging.getLogger(__name__)

LABELED_CAP = 10
UNLABELED_CAP = 11


# ------------------------------------------------------------------ keys


def labeled_key(T: Cppt) -> str:
    rot = ";".join(",".join(map(str, r)) for r in T.rot)
    return f"{T.n}|{','.join(map(str, T.outer))}|{rot}|{','.join(map(str, T.reflex))}"


def _traverse(T: Cppt, root: tuple[int, int]) -> tuple[tuple, dict[int, int]]:
    """Relabel by a breadth-first traversal from dart ``root``.

    Each vertex is scanned counterclockwise starting at the neighbour it was
    reached from.  Returns the serialised relabelled graph and the map
    ``vertex -> new index``.
    """
    order = {root[0]: 0}
    entry = {root[0]: root[1]}
    seen_v = [root[0]]
    i = 0
    while i < len(seen_v):
        v = seen_v[i]
        i += 1
        r = T.rot[v]
        k = r.index(entry[v])
        for j in range(len(r)):
            w = r[(k + j) % len(r)]
            if w not in order:
                order[w] = len(order)
                seen_v.append(w)
                entry[w] = v
    out = []
    for v in seen_v:
        r = T.rot[v]
        k = r.index(entry[v])
        out.append(tuple(order[r[(k + j) % len(r)]] for j in range(len(r))))
        out.append(order[T.reflex[v]])
    return tuple(out), order


def rooted_key(T: Cppt) -> str:
    """Key with the outer cycle fixed and interior labels forgotten."""
    o = T.outer
    return f"{T.n}|{len(o)}|{_traverse(T, (o[0], o[1]))[0]}"


def unlabeled_key(T: Cppt) -> str:
    """Isomorphism-invariant key for the fixed outer cycle (up to its rotations)."""
    o = T.outer
    h = len(o)
    best = min(_traverse(T, (o[k], o[(k + 1) % h]))[0] for k in range(h))
    return f"{T.n}|{h}|{best}"


MODES = ("labeled", "rooted", "unlabeled")


def key_of(T: Cppt, mode: str) -> str:
    if mode == "labeled":
        return labeled_key(T)
    if mode == "rooted":
        return rooted_key(T)
    if mode == "unlabeled":
        return unlabeled_key(T)
    raise ValueError(f"unknown mode {mode!r}")


# ----------------------------------------------------------- generators


def _seed(n: int, h: int) -> Cppt:
    from .forms import canonical

    return canonical(n, h)


def enumerate_closure(n: int, h: int = 3, mode: str = "labeled") -> dict[str, Cppt]:
    _check_cap(n, mode)
    seed = _seed(n, h)
    found = {key_of(seed, mode): seed}
    q = deque([seed])
    while q:
        T = q.popleft()
        for _, U in neighbours(T):
            k = key_of(U, mode)
            if k not in found:
                found[k] = U
                q.append(U)
    return found


@dataclass
class _State:
    holes: list[tuple[int, ...]]
    faces: list[tuple[int, ...]]
    reflex: dict[int, int]
    adj: set[tuple[int, int]]
    fresh: int
    tri: int
    quad: int


def _fill(state: _State, n: int, h: int, out: list):
    if not state.holes:
        if state.fresh == n and len(state.reflex) == n - h:
            out.append((list(state.faces), dict(state.reflex)))
        return
    hole = state.holes[-1]
    rest = state.holes[:-1]
    m = len(hole)
    p0, p1 = hole[0], hole[1]
    # positions strictly after p1 and before p0, walking forward from p1
    inner = list(range(2, m))
    options = []
    for size in (3, 4):
        if size == 3 and state.tri >= h - 2:
            continue
        if size == 4 and state.quad >= n - h:
            continue
        extra = size - 2
        # each extra corner is a fresh vertex (None) or a hole position
        for corners in itertools.product([None] + inner, repeat=extra):
            pos = [c for c in corners if c is not None]
            if pos != sorted(pos) or len(set(pos)) != len(pos):
                continue
            nfresh = extra - len(pos)
            if state.fresh + nfresh > n:
                continue
            options.append((size, corners))
    for size, corners in options:
        fresh = state.fresh
        verts = [p0, p1]
        anchors = [0, 1]
        for c in corners:
            if c is None:
                verts.append(fresh)
                anchors.append(None)
                fresh += 1
            else:
                verts.append(hole[c])
                anchors.append(c)
        if len(set(verts)) != len(verts):
            continue
        # new holes between consecutive anchored corners, walking p1 -> x -> y -> p0
        seq = list(range(1, size)) + [0]
        anchored = [i for i in seq if anchors[i] is not None]
        new_holes = []
        new_edges = []
        ok = True
        for a_i, b_i in zip(anchored, anchored[1:]):
            pa, pb = anchors[a_i], anchors[b_i]
            if pb == 0:
                pb = m
            between = [verts[j] for j in seq[seq.index(a_i) + 1:seq.index(b_i)]]
            walk = [hole[k] for k in range(pa, pb + 1)] if pb < m else [hole[k] for k in range(pa, m)] + [hole[0]]
            piece = walk + between[::-1]
            chain = [verts[a_i]] + between + [verts[b_i]]
            if len(piece) == 2:
                continue
            for x, y in zip(chain, chain[1:]):
                new_edges.append(edge_key(x, y))
            new_holes.append(tuple(piece))
        keys = set()
        for e in new_edges:
            if e in state.adj or e in keys:
                ok = False
                break
            keys.add(e)
        if not ok:
            continue
        face = tuple(verts)
        reflex_opts: list[dict[int, int]] = [{}]
        if size == 4:
            reflex_opts = []
            for k, v in enumerate(face):
                if v < h or v in state.reflex:
                    continue
                reflex_opts.append({v: face[(k + 1) % 4]})
        for ro in reflex_opts:
            reflex = dict(state.reflex)
            reflex.update(ro)
            holes = rest + [hh for hh in new_holes]
            _fill(
                _State(holes, state.faces + [face], reflex, state.adj | keys, fresh,
                       state.tri + (size == 3), state.quad + (size == 4)),
                n, h, out,
            )


def enumerate_direct(n: int, h: int = 3, mode: str = "labeled") -> dict[str, Cppt]:
    """Face-by-face generation, independent of the flip engine."""
    _check_cap(n, mode)
    if h < 3 or n < h:
        raise PreconditionError("need 3 <= h <= n")
    outer = tuple(range(h))
    adj = {edge_key(k, (k + 1) % h) for k in range(h)}
    raw: list = []
    _fill(_State([outer], [], {}, adj, h, 0, 0), n, h, raw)
    found: dict[str, Cppt] = {}
    interior = list(range(h, n))
    for faces, reflex in raw:
        try:
            T = from_faces(n, outer, faces, reflex)
        except StructureError:
            continue
        if not validate(T).valid:
            continue
        perms = itertools.permutations(interior) if mode == "labeled" else [tuple(interior)]
        for p in perms:
            perm = list(range(h)) + list(p)
            U = T.relabel(perm)
            found.setdefault(key_of(U, mode), U)
    return found


def enumerate_all(n: int, h: int = 3, mode: str = "labeled", method: str = "closure") -> dict[str, Cppt]:
    if method == "closure":
        return enumerate_closure(n, h, mode)
    if method == "direct":
        return enumerate_direct(n, h, mode)
    raise ValueError(f"unknown method {method!r}")


def _check_cap(n: int, mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    cap = LABELED_CAP if mode == "labeled" else UNLABELED_CAP
    if n > cap:
        raise PreconditionError(f"n={n} exceeds the {mode} cap {cap}")


# ----------------------------------------------------------- flip graphs


@dataclass
class FlipGraphIndex:
    keys: list[str]
    adjacency: dict[str, set[str]]
    mode: str
    outer: tuple[int, ...]
    members: dict[str, Cppt] = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.keys)

    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency.values()) // 2


def build_flip_graph(universe: dict[str, Cppt] | Iterable[Cppt], mode: str = "labeled") -> FlipGraphIndex:
    if not isinstance(universe, dict):
        universe = {key_of(T, mode): T for T in universe}
    adjacency: dict[str, set[str]] = {k: set() for k in universe}
    outer = next(iter(universe.values())).outer if universe else ()
    for k, T in universe.items():
        for _, U in neighbours(T):
            ku = key_of(U, mode)
            if ku not in universe:
                raise PreconditionError("flip leaves the given set")
            if ku != k:
                adjacency[k].add(ku)
    return FlipGraphIndex(sorted(universe), adjacency, mode, outer, dict(universe))


def _bfs(g: FlipGraphIndex, src: str) -> dict[str, int]:
    dist = {src: 0}
    q = deque([src])
    while q:
        k = q.popleft()
        for w in g.adjacency[k]:
            if w not in dist:
                dist[w] = dist[k] + 1
                q.append(w)
    return dist


def connectivity_and_diameter(g: FlipGraphIndex) -> tuple[bool, int]:
    if not g.keys:
        return True, 0
    diam = 0
    for k in g.keys:
        d = _bfs(g, k)
        if len(d) != len(g.keys):
            return False, -1
        diam = max(diam, max(d.values()))
    return True, diam


def bfs_distance(T1: Cppt, T2: Cppt, mode: str = "labeled", limit: int | None = None) -> int:
    """Exact flip distance by bidirectional-free plain BFS from ``T1``."""
    if T1.n != T2.n or T1.outer != T2.outer:
        raise PreconditionError("the two 4-PPTs live in different universes")
    target = key_of(T2, mode)
    k1 = key_of(T1, mode)
    if k1 == target:
        return 0
    dist = {k1: 0}
    q = deque([T1])
    while q:
        T = q.popleft()
        d = dist[key_of(T, mode)]
        if limit is not None and d >= limit:
            continue
        for _, U in neighbours(T):
            k = key_of(U, mode)
            if k in dist:
                continue
            if k == target:
                return d + 1
            dist[k] = d + 1
            q.append(U)
    raise PreconditionError("target not reachable")


# ------------------------------------------------- labeled certificates


@dataclass
class LabelCertificate:
    """Labeled flip-graph connectivity, certified on the rooted quotient.

    With the outer cycle fixed every automorphism is trivial, so the labeled
    universe is ``rooted structures x interior permutations``.  Flips commute
    with relabelling; the labeled flip graph is therefore connected iff the
    rooted one is and the relabellings met along closed walks generate the
    full symmetric group on the interior vertices.
    """

    n: int
    h: int
    structures: int
    group_order: int
    labeled_size: int
    connected: bool


def _group_order(gens: Iterable[tuple[int, ...]], k: int) -> int:
    ident = tuple(range(k))
    gens = [g for g in set(gens) if g != ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = tuple(g[x] for x in a)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return len(seen)


def label_certificate(n: int, h: int = 3) -> LabelCertificate:
    """Closure over rooted structures, recording the relabelling of every edge."""
    import math

    seed = _seed(n, h)
    o = seed.outer

    def canon(T):
        ser, order = _traverse(T, (o[0], o[1]))
        return f"{n}|{h}|{ser}", order

    k0, ord0 = canon(seed)
    reps = {k0: ord0}
    q = deque([seed])
    gens = []
    interior = list(range(h, n))
    pos = {v: j for j, v in enumerate(interior)}
    while q:
        T = q.popleft()
        for _, U in neighbours(T):
            k, ordu = canon(U)
            if k not in reps:
                reps[k] = ordu
                q.append(U)
                continue
            inv = {c: v for v, c in reps[k].items()}
            perm = {v: inv[ordu[v]] for v in range(n)}
            if any(perm[v] != v for v in o):
                raise AssertionError("relabelling moved an outer vertex")
            gens.append(tuple(pos[perm[v]] for v in interior))
    order = _group_order(gens, len(interior))
    full = math.factorial(len(interior))
    return LabelCertificate(n, h, len(reps), order, len(reps) * full, order == full)


# ------------------------------------------------- labeled flip graphs


@dataclass
class LabeledQuotient:
    """The labeled flip graph as rooted structures times interior permutations.

    State ``(s, p)`` is ``reps[s].relabel(perms[p])`` (interior part).  A flip
    from ``reps[s]`` landing on ``reps[t].relabel(sigma)`` gives the labeled
    edges ``(s, p) -> (t, p o sigma)`` for every ``p``.
    """

    n: int
    h: int
    reps: list[Cppt]
    perms: "np.ndarray"
    compose: "np.ndarray"
    edges: "np.ndarray"

    @property
    def size(self) -> int:
        return len(self.reps) * len(self.perms)


def labeled_quotient(n: int, h: int = 3) -> LabeledQuotient:
    import math

    import numpy as np

    seed = _seed(n, h)
    o = seed.outer
    interior = list(range(h, n))
    k = len(interior)
    perms = np.array(list(itertools.permutations(range(k))), dtype=np.int64).reshape(math.factorial(k), k)
    weights = k ** np.arange(k)[::-1]
    index = {int(c): i for i, c in enumerate(perms @ weights)}
    # compose[a, b] = index of perms[a][perms[b]]
    compose = np.vectorize(index.__getitem__, otypes=[np.int64])(perms[:, perms] @ weights)

    def traverse(T):
        return _traverse(T, (o[0], o[1]))

    ser0, ord0 = traverse(seed)
    ids = {ser0: 0}
    reps = [seed]
    orders = [ord0]
    edges = []
    q = deque([0])
    while q:
        s = q.popleft()
        for _, U in neighbours(reps[s]):
            ser, ordu = traverse(U)
            t = ids.get(ser)
            if t is None:
                t = ids[ser] = len(reps)
                reps.append(U)
                orders.append(ordu)
                q.append(t)
            # sigma sends a vertex of reps[t] to the vertex of U with the same traversal index
            back = {c: v for v, c in ordu.items()}
            sigma = [back[orders[t][v]] - h for v in interior]
            edges.append((s, t, index[int(np.dot(sigma, weights))]))
    return LabeledQuotient(n, h, reps, perms, compose, np.array(edges, dtype=np.int64).reshape(-1, 3))


def _labeled_csr(Q: LabeledQuotient):
    import numpy as np
    from scipy.sparse import csr_matrix

    m = len(Q.perms)
    p = np.arange(m)
    src = (Q.edges[:, 0:1] * m + p[None, :]).ravel()
    dst = (Q.edges[:, 1:2] * m + Q.compose[p[None, :], Q.edges[:, 2:3]]).ravel()
    N = Q.size
    return csr_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(N, N))


def labeled_diameter(n: int, h: int = 3, batch: int = 32) -> tuple[bool, int, int]:
    """``(connected, diameter, size)`` of the labeled flip graph.

    Relabelling the interior is an automorphism acting transitively on
    each structure's labelings, so one breadth-first search per rooted
    structure covers every eccentricity.
    """
    import numpy as np
    from scipy.sparse.csgraph import shortest_path

    Q = labeled_quotient(n, h)
    G = _labeled_csr(Q)
    m = len(Q.perms)
    sources = np.arange(len(Q.reps)) * m
    diam = 0
    for a in range(0, len(sources), batch):
        d = shortest_path(G, method="D", unweighted=True, indices=sources[a:a + batch])
        if np.isinf(d).any():
            return False, -1, Q.size
        diam = max(diam, int(d.max()))
    return True, diam, Q.size


def labeled_eccentricity(Q: LabeledQuotient, rep: int = 0, chunk: int = 1 << 20) -> tuple[int, int, int]:
    """``(eccentricity, farthest rep, reached)`` of ``reps[rep]`` in the labeled graph.

    Level-synchronous search over ``(structure, permutation)`` ids without
    materialising the labeled edge list; memory is one byte per state.
    """
    import numpy as np

    m = len(Q.perms)
    order = np.argsort(Q.edges[:, 0], kind="stable")
    src, dst, sig = (Q.edges[order, c] for c in range(3))
    start = np.searchsorted(src, np.arange(len(Q.reps) + 1))
    dist = np.full(Q.size, -1, dtype=np.int8)
    frontier = np.array([rep * m], dtype=np.int64)
    dist[frontier] = 0
    level, reached = 0, 1
    while True:
        found = []
        for a in range(0, len(frontier), chunk):
            F = frontier[a:a + chunk]
            s, p = F // m, F % m
            deg = start[s + 1] - start[s]
            owner = np.repeat(np.arange(len(F)), deg)
            first = np.repeat(start[s] - np.cumsum(deg) + deg, deg)
            e = first + np.arange(len(owner))
            nxt = dst[e] * m + Q.compose[p[owner], sig[e]]
            nxt = np.unique(nxt[dist[nxt] < 0])
            dist[nxt] = level + 1
            found.append(nxt)
        nxt = np.unique(np.concatenate(found)) if found else np.empty(0, dtype=np.int64)
        if not len(nxt):
            return level, int(frontier[0] // m), reached
        level += 1
        reached += len(nxt)
        frontier = nxt


def labeled_diameter_bound(n: int, h: int = 3, sweeps: int = 2) -> tuple[int, int, int]:
    """Double-sweep lower bound ``(bound, size, reached)`` on the labeled diameter."""
    Q = labeled_quotient(n, h)
    rep, best, reached = 0, 0, 0
    for _ in range(sweeps):
        ecc, rep, reached = labeled_eccentricity(Q, rep)
        best = max(best, ecc)
    return best, Q.size, reached
