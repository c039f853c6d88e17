"""Command line interface: ``cppt <command> ...``.

Exit codes: 0 success, 1 domain error (invalid 4-PPT, impossible flip,
failed verification), 2 malformed input or usage.
"""

from __future__ import annotations

import argparse
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from . import canonical as canon
from . import general, induced, io, lab
from .core import PreconditionError, StructureError, validate
from .flips import FlipError, find_move, flip_candidates, flippable_edges

DEFAULT_SEED = 0


class UsageError(ValueError):
    pass


def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected 'u,v', got {text!r}") from None
    return a, b


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(str(exc)) from None


def _graph(path: str):
    return io.load_graph(_read(path))


def _emit(doc: dict) -> None:
    sys.stdout.write(io.dumps(doc))


def _checked(T):
    rep = validate(T)
    if not rep.valid:
        raise StructureError("; ".join(f"{v.rule} at {v.location}" for v in rep.violations))
    return T


# ------------------------------------------------------------ commands


def cmd_validate(a) -> int:
    T = _graph(a.file)
    rep = validate(T)
    _emit({"valid": rep.valid, "violations": [[v.rule, str(v.location)] for v in rep.violations]})
    return 0 if rep.valid else 1


def cmd_info(a) -> int:
    T = _checked(_graph(a.file))
    n, e, t, q, h = validate(T).counts()
    _emit({"n": n, "e": e, "t": t, "q": q, "h": h})
    return 0


def cmd_faces(a) -> int:
    T = _checked(_graph(a.file))
    _emit({"faces": [{"vertices": list(f.vertices), "outer": f.outer} for f in T.faces]})
    return 0


def cmd_flippable(a) -> int:
    T = _checked(_graph(a.file))
    _emit({"edges": [list(e) for e in flippable_edges(T)]})
    return 0


def cmd_candidates(a) -> int:
    T = _checked(_graph(a.file))
    ms = flip_candidates(T, _pair(a.edge))
    _emit({"candidates": [{"insert": list(m.inserted), "case": m.case.value} for m in ms]})
    return 0


def cmd_flip(a) -> int:
    T = _checked(_graph(a.file))
    rem = _pair(a.remove)
    if a.insert is None:
        ms = flip_candidates(T, rem)
        if len(ms) != 1:
            _emit({"error": "insert edge required", "candidates": [list(m.inserted) for m in ms]})
            return 1
        m = ms[0]
    else:
        m = find_move(T, rem, _pair(a.insert))
    seq = canon.FlipSequence(T)
    seq.push(m, "flip")
    sys.stdout.write(io.dump_graph(seq.end))
    return 0


def cmd_canonicalize(a) -> int:
    T = _checked(_graph(a.file))
    seq = general.canonicalize_general(T) if a.general or T.h != 3 else canon.canonicalize_triangular(T)
    sys.stdout.write(io.dump_sequence(seq))
    return 0


def cmd_to_spinal(a) -> int:
    T = _checked(_graph(a.file))
    sys.stdout.write(io.dump_sequence(canon.canonical_to_spinal(T, a.side)))
    return 0


def cmd_sort(a) -> int:
    T = _checked(_graph(a.file))
    order = [int(x) for x in a.order.split(",")] if a.order else []
    sys.stdout.write(io.dump_sequence(canon.sort_labels(T, order)))
    return 0


def cmd_sequence(a) -> int:
    T1 = _checked(_graph(a.a))
    T2 = _checked(_graph(a.b))
    sys.stdout.write(io.dump_sequence(general.flip_sequence(T1, T2, labeled=a.labeled)))
    return 0


def cmd_verify_seq(a) -> int:
    doc = io.loads(_read(a.file))
    try:
        seq, target = io.from_sequence_document(doc)
    except FlipError as exc:
        _emit({"ok": False, "error": str(exc)})
        return 1
    if not validate(seq.start).valid:
        _emit({"ok": False, "error": "start is not a valid 4-PPT"})
        return 1
    ok, bad = canon.verify_sequence(seq)
    out = {"ok": ok, "moves": len(seq), "endpoint_hash": io.graph_hash(seq.end)}
    if not ok:
        out["first_invalid"] = bad
    if target is not None and seq.end.key() != target.key():
        out["ok"] = False
        out["error"] = "endpoint differs from target"
    _emit(out)
    return 0 if out["ok"] else 1


def cmd_enumerate(a) -> int:
    U = lab.enumerate_all(a.n, a.outer, "labeled" if a.labeled else a.mode, a.method)
    doc = {"n": a.n, "h": a.outer, "mode": "labeled" if a.labeled else a.mode, "count": len(U)}
    if a.sample:
        keys = sorted(U)
        pick = random.Random(a.seed).sample(keys, min(a.sample, len(keys)))
        doc["sample"] = [io.graph_document(U[k]) for k in pick]
    _emit(doc)
    return 0


def _stats(job: tuple[int, int, str]) -> dict:
    n, h, mode = job
    g = lab.build_flip_graph(lab.enumerate_closure(n, h, mode), mode)
    connected, diam = lab.connectivity_and_diameter(g)
    return {"n": n, "count": len(g), "edges": g.num_edges(), "connected": connected, "diameter": diam}


def cmd_flipgraph(a) -> int:
    mode = "labeled" if a.labeled else a.mode
    jobs = [(n, a.outer, mode) for n in range(a.outer, a.n + 1)]
    if a.workers > 1:
        with ProcessPoolExecutor(a.workers) as ex:
            rows = list(ex.map(_stats, jobs))
    else:
        rows = [_stats(j) for j in jobs]
    _emit({"h": a.outer, "mode": mode, "per_n": rows})
    return 0


def cmd_bfs_dist(a) -> int:
    T1 = _checked(_graph(a.a))
    T2 = _checked(_graph(a.b))
    _emit({"distance": lab.bfs_distance(T1, T2, a.mode)})
    return 0


def cmd_induced(a) -> int:
    T = _checked(_graph(a.file))
    _emit(io.triangulation_document(induced.induced_triangulation(T)))
    return 0


def cmd_emulate(a) -> int:
    T = _checked(_graph(a.file))
    m = find_move(T, _pair(a.remove), _pair(a.insert))
    _emit(io.tri_flips_document(induced.emulate_flip(T, m)))
    return 0


def cmd_fixtures(a) -> int:
    if a.name == "double-wheel":
        _emit(io.triangulation_document(induced.double_wheel(a.n)))
    else:
        sys.stdout.write(io.dump_graph(induced.lower_bound_instance(a.n)))
    return 0


# --------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cppt", description="Combinatorial 4-PPT toolkit.")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomised output")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *files, help=None):
        sp = sub.add_parser(name, help=help)
        for f in files:
            sp.add_argument(f)
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "file", help="check the 4-PPT axioms")
    add("info", cmd_info, "file", help="counts n, e, t, q, h")
    add("faces", cmd_faces, "file")
    add("flippable", cmd_flippable, "file")
    sp = add("flip", cmd_flip, "file")
    sp.add_argument("--remove", required=True)
    sp.add_argument("--insert")
    sp = add("candidates", cmd_candidates, "file")
    sp.add_argument("--edge", required=True)
    sp = add("canonicalize", cmd_canonicalize, "file")
    sp.add_argument("--general", action="store_true")
    sp = add("to-spinal", cmd_to_spinal, "file")
    sp.add_argument("--side", choices=("r", "s"), default="s")
    sp = add("sort", cmd_sort, "file")
    sp.add_argument("--order", required=True, help="comma separated interior vertices, bottom first")
    sp = add("sequence", cmd_sequence, "a", "b")
    sp.add_argument("--labeled", action=argparse.BooleanOptionalAction, default=True)
    add("verify-seq", cmd_verify_seq, help="read a sequence document (default stdin)").add_argument(
        "file", nargs="?", default="-")
    for name, fn in (("enumerate", cmd_enumerate), ("flipgraph", cmd_flipgraph)):
        sp = add(name, fn)
        sp.add_argument("-n", type=int, required=True)
        sp.add_argument("--outer", type=int, default=3, help="outer face size h")
        sp.add_argument("--labeled", action="store_true")
        sp.add_argument("--mode", choices=lab.MODES, default="unlabeled")
        sp.add_argument("--workers", type=int, default=1)
    sub.choices["enumerate"].add_argument("--method", choices=("closure", "direct"), default="closure")
    sub.choices["enumerate"].add_argument("--sample", type=int, default=0)
    sub.choices["flipgraph"].add_argument("--stats", action="store_true")
    sp = add("bfs-dist", cmd_bfs_dist, "a", "b")
    sp.add_argument("--mode", choices=lab.MODES, default="labeled")
    add("induced", cmd_induced, "file")
    sp = add("emulate", cmd_emulate, "file")
    sp.add_argument("--remove", required=True)
    sp.add_argument("--insert", required=True)
    sp = add("fixtures", cmd_fixtures)
    sp.add_argument("--name", choices=("double-wheel", "lower-bound"), required=True)
    sp.add_argument("-n", type=int, required=True)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return a.fn(a)
    except (UsageError, io.DocumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (StructureError, PreconditionError, FlipError, canon.SequenceError,
            induced.ConstructionError, induced.EmulationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
