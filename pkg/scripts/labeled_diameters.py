"""Record labeled flip-graph diameters (triangular outer face).

Exact values come from one breadth-first search per rooted structure on the
label quotient; above ``--exact`` only a double-sweep lower bound is
computed.  Writes tests/data/labeled_diameters.json.

    python scripts/labeled_diameters.py --exact 8 --max 9

``--known 8=21`` records an exact value from an earlier run instead of
recomputing it (n = 8 takes about an hour on one core).
"""

import argparse
import json
import time
from pathlib import Path

from cppt.io import dumps
from cppt.lab import labeled_diameter, labeled_diameter_bound

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "labeled_diameters.json"


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--exact", type=int, default=8)
    ap.add_argument("--max", type=int, default=9)
    ap.add_argument("--sweeps", type=int, default=4)
    ap.add_argument("--known", action="append", default=[], metavar="N=D")
    a = ap.parse_args()
    known = dict(map(int, k.split("=")) for k in a.known)
    rows = []
    for n in range(3, a.max + 1):
        t0 = time.time()
        if n in known:
            from cppt.lab import labeled_quotient

            row = {"n": n, "size": labeled_quotient(n).size, "connected": True, "diameter": known[n],
                   "kind": "exact"}
        elif n <= a.exact:
            connected, diam, size = labeled_diameter(n)
            row = {"n": n, "size": size, "connected": connected, "diameter": diam, "kind": "exact"}
        else:
            bound, size, reached = labeled_diameter_bound(n, sweeps=a.sweeps)
            row = {"n": n, "size": size, "connected": reached == size, "diameter": bound,
                   "kind": "lower-bound"}
        row["seconds"] = None if n in known else round(time.time() - t0, 1)
        print(row, flush=True)
        rows.append(row)
    OUT.parent.mkdir(exist_ok=True)
    OUT.write_text(dumps({"h": 3, "rows": rows}))


if __name__ == "__main__":
    main()
