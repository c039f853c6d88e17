"""Byte-stable JSON documents for 4-PPTs, flip sequences and triangulations."""

from __future__ import annotations

import hashlib
import json
from typing import Any

from .canonical import FlipSequence
from .core import Cppt, StructureError, build, edge_key
from .flips import FlipError, find_move
from .induced import CombTriangulation

FORMAT_VERSION = 1


class DocumentError(ValueError):
    """Malformed input document."""


def _flat(o: Any) -> bool:
    return not isinstance(o, (dict, list)) or (
        isinstance(o, list) and all(not isinstance(x, (dict, list)) for x in o))


def _encode(o: Any, depth: int) -> str:
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(o, dict):
        if not o:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_encode(o[k], depth + 1)}" for k in sorted(o)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(o, list) and o and not all(_flat(x) for x in o):
        return "[\n" + ",\n".join(inner + _encode_item(x, depth + 1) for x in o) + "\n" + pad + "]"
    if isinstance(o, list) and o and all(isinstance(x, list) for x in o):
        return "[" + ", ".join(json.dumps(x, separators=(", ", ": ")) for x in o) + "]"
    return json.dumps(o, separators=(", ", ": "))


def _encode_item(o: Any, depth: int) -> str:
    # small records inside arrays (moves, faces) stay on one line
    if isinstance(o, dict) and all(_flat(v) for v in o.values()):
        return json.dumps(o, sort_keys=True, separators=(", ", ": "))
    return _encode(o, depth)


def dumps(doc: dict) -> str:
    """Sorted keys, one line per field, short arrays kept on one line."""
    return _encode(doc, 0) + "\n"


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise DocumentError("top level must be an object")
    return doc


def graph_document(T: Cppt) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "n": T.n,
        "labels": list(T.labels) if T.labels is not None else None,
        "outer": list(T.outer),
        "rotations": [list(r) for r in T.rot],
        "reflex": [[a, T.succ(v, a)] for v, a in enumerate(T.reflex)],
    }


def _field(doc: dict, name: str, kind) -> Any:
    if name not in doc:
        raise DocumentError(f"field '{name}': missing")
    val = doc[name]
    if not isinstance(val, kind):
        raise DocumentError(f"field '{name}': expected {getattr(kind, '__name__', kind)}")
    return val


def _int_list(val: Any, name: str) -> list[int]:
    if not isinstance(val, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in val):
        raise DocumentError(f"field '{name}': expected a list of integers")
    return val


def _pair(val: Any, name: str) -> tuple[int, int]:
    val = _int_list(val, name)
    if len(val) != 2:
        raise DocumentError(f"field '{name}': expected a pair")
    return val[0], val[1]


def from_graph_document(doc: dict) -> Cppt:
    """Rebuild a 4-PPT; structural problems raise :class:`StructureError`."""
    version = _field(doc, "format_version", int)
    if version != FORMAT_VERSION:
        raise DocumentError(f"field 'format_version': unsupported {version}")
    n = _field(doc, "n", int)
    outer = _int_list(_field(doc, "outer", list), "outer")
    rots = _field(doc, "rotations", list)
    if len(rots) != n:
        raise DocumentError("field 'rotations': expected one list per vertex")
    rots = [_int_list(r, f"rotations[{v}]") for v, r in enumerate(rots)]
    refl = _field(doc, "reflex", list)
    if len(refl) != n:
        raise DocumentError("field 'reflex': expected one pair per vertex")
    reflex = []
    for v, p in enumerate(refl):
        a, b = _pair(p, f"reflex[{v}]")
        r = rots[v]
        if a not in r or b not in r or r[(r.index(a) + 1) % len(r)] != b:
            raise StructureError(f"reflex[{v}]: {a}, {b} are not consecutive neighbours")
        reflex.append(a)
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or not all(isinstance(x, str) for x in labels)):
        raise DocumentError("field 'labels': expected a list of strings or null")
    return build(rots, outer, reflex, labels)


def dump_graph(T: Cppt) -> str:
    return dumps(graph_document(T))


def load_graph(text: str) -> Cppt:
    return from_graph_document(loads(text))


def graph_hash(T: Cppt) -> str:
    return hashlib.sha256(dump_graph(T).encode()).hexdigest()


def sequence_document(seq: FlipSequence) -> dict:
    end = seq.end
    return {
        "format_version": FORMAT_VERSION,
        "start": graph_document(seq.start),
        "moves": [{"remove": list(m.removed), "insert": list(m.inserted), "stage": st}
                  for m, st in zip(seq.moves, seq.stages)],
        "target": graph_document(end),
        "target_hash": graph_hash(end),
    }


def dump_sequence(seq: FlipSequence) -> str:
    return dumps(sequence_document(seq))


def from_sequence_document(doc: dict) -> tuple[FlipSequence, Cppt | None]:
    """The replayed sequence and the claimed target (if any).

    Every move is re-derived from its edge pair on the current 4-PPT, so
    nothing the producer computed is trusted.
    """
    start = from_graph_document(_field(doc, "start", dict))
    seq = FlipSequence(start)
    for k, mv in enumerate(_field(doc, "moves", list)):
        if not isinstance(mv, dict):
            raise DocumentError(f"field 'moves[{k}]': expected an object")
        rem = _pair(mv.get("remove"), f"moves[{k}].remove")
        ins = _pair(mv.get("insert"), f"moves[{k}].insert")
        try:
            seq.push(find_move(seq.end, rem, ins), str(mv.get("stage", "")))
        except FlipError as exc:
            raise FlipError(f"move {k}: {exc}") from None
    target = doc.get("target")
    return seq, from_graph_document(target) if target is not None else None


def triangulation_document(G: CombTriangulation) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "n": G.n,
        "outer": list(G.outer),
        "rotations": [list(r) for r in G.rot],
    }


def tri_flips_document(flips) -> dict:
    return {"format_version": FORMAT_VERSION, "flips": [list(edge_key(*e)) for e in flips]}


__all__ = [
    "DocumentError",
    "FORMAT_VERSION",
    "dump_graph",
    "dump_sequence",
    "dumps",
    "from_graph_document",
    "from_sequence_document",
    "graph_document",
    "graph_hash",
    "load_graph",
    "loads",
    "sequence_document",
    "triangulation_document",
    "tri_flips_document",
]
