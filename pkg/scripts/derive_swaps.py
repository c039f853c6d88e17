"""Search the local swap gadgets by restricted breadth-first search.

For each case (k = 1, k = 2, k >= 3) and each hub of v_k, find a shortest
flip sequence from "spinal in r s t'" to "spinal in r s v_{k+1}" with v_k and
v_{k+1} exchanged, using only flips among the gadget vertices.  Prints the
sequence in role names.
"""

import sys
from collections import deque

from cppt.canonical import FlipSequence
from cppt.flips import neighbours
from cppt.forms import canonical
from cppt.lab import labeled_key


def spinal_prefix(order, n, steps, side):
    """Canonical with ``order`` followed by the first ``steps`` spinal flips."""
    T = canonical(n, 3, order)
    seq = FlipSequence(T)
    path = list(order) + [2]
    hub = 0 if side == "s" else 1
    for k in range(steps):
        v = order[k]
        seq.flip((hub, v), (v, path[k + 1]))
        hub = 1 if hub == 0 else 0
    return seq.end


def search(n, k, side):
    order = list(range(3, n))
    i = len(order)
    start = spinal_prefix(order, n, k + 1, side)
    sw = list(order)
    sw[k - 1], sw[k] = sw[k], sw[k - 1]
    targets = {labeled_key(spinal_prefix(sw, n, k, sd)) for sd in "rs"}
    tprime = order[k + 1] if k + 1 < i else 2
    roles = {0: "r", 1: "s", tprime: "tp", order[k - 1]: "b", order[k]: "c"}
    if k >= 2:
        roles[order[k - 2]] = "a"
    gad = set(roles)
    prev = {labeled_key(start): None}
    q = deque([start])
    while q:
        T = q.popleft()
        kt = labeled_key(T)
        if kt in targets:
            moves = []
            while prev[kt] is not None:
                kp, m = prev[kt]
                moves.append(m)
                kt = kp
            moves.reverse()
            return [((roles[m.removed[0]], roles[m.removed[1]]), (roles[m.inserted[0]], roles[m.inserted[1]])) for m in moves]
        for m, U in neighbours(T):
            if not (set(m.removed) <= gad and set(m.inserted) <= gad):
                continue
            ku = labeled_key(U)
            if ku not in prev:
                prev[ku] = (kt, m)
                q.append(U)
    return None


if __name__ == "__main__":
    for n in range(5, int(sys.argv[1]) + 1 if len(sys.argv) > 1 else 9):
        for k in range(1, n - 3):
            for side in "sr":
                print(n, k, side, search(n, k, side))
