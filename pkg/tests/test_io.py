import json
import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cppt.canonical import FlipSequence, spinal
from cppt.core import StructureError
from cppt.flips import FlipError
from cppt.forms import canonical
from cppt.general import flip_sequence
from cppt.induced import double_wheel, lower_bound_instance
from cppt.io import (
    DocumentError,
    dump_graph,
    dump_sequence,
    dumps,
    from_sequence_document,
    graph_document,
    graph_hash,
    load_graph,
    loads,
    triangulation_document,
)
from cppt.lab import enumerate_closure

GOLDEN = Path(__file__).parent / "golden"

FIXTURES = {
    "canonical_4.graph": lambda: dump_graph(canonical(4)),
    "spinal_5.graph": lambda: dump_graph(spinal(5)),
    "general_canonical_7_5.graph": lambda: dump_graph(canonical(7, 5)),
    "lower_bound_6.graph": lambda: dump_graph(lower_bound_instance(6)),
    "double_wheel_6.tri": lambda: dumps(triangulation_document(double_wheel(6))),
}


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_golden_bytes(name):
    assert FIXTURES[name]() == (GOLDEN / name).read_text()


def test_canonical_four_document():
    doc = json.loads((GOLDEN / "canonical_4.graph").read_text())
    assert doc["n"] == 4 and doc["outer"] == [0, 1, 2]
    assert doc["reflex"][3] == [1, 0]


def test_keys_sorted():
    text = dump_graph(canonical(5))
    keys = [line.split('"')[1] for line in text.splitlines() if line.startswith('  "')]
    assert keys == sorted(keys)


def test_round_trip_universe():
    rng = random.Random(0)
    pool = []
    for n, h in [(6, 3), (7, 3), (6, 4), (7, 5)]:
        pool += list(enumerate_closure(n, h, "labeled").values())
    for T in rng.sample(pool, 1000):
        U = load_graph(dump_graph(T))
        assert U.key() == T.key() and U.labels == T.labels


def test_labels_survive():
    T = canonical(5, labels=["a", "b", "c", "x", "y"])
    assert load_graph(dump_graph(T)).labels == T.labels


def test_parse_error_position():
    with pytest.raises(DocumentError, match="line 2"):
        loads('{\n  "n": ,\n}')


def test_missing_field():
    doc = graph_document(canonical(4))
    del doc["outer"]
    with pytest.raises(DocumentError, match="outer"):
        load_graph(dumps(doc))


def test_wrong_version():
    doc = graph_document(canonical(4))
    doc["format_version"] = 9
    with pytest.raises(DocumentError, match="format_version"):
        load_graph(dumps(doc))


def test_reflex_not_consecutive():
    doc = graph_document(canonical(4))
    doc["reflex"][0] = [2, 2]
    with pytest.raises(StructureError):
        load_graph(dumps(doc))


def test_top_level_array():
    with pytest.raises(DocumentError):
        loads("[1, 2]")


def test_hash_stable():
    assert graph_hash(canonical(6)) == graph_hash(load_graph(dump_graph(canonical(6))))
    assert graph_hash(canonical(6)) != graph_hash(spinal(6))


def test_sequence_round_trip():
    U = list(enumerate_closure(6, 3, "labeled").values())
    seq = flip_sequence(U[5], U[100])
    doc = loads(dump_sequence(seq))
    back, target = from_sequence_document(doc)
    assert back.pairs() == seq.pairs()
    assert back.stages == seq.stages
    assert target.key() == U[100].key()
    assert doc["target_hash"] == graph_hash(U[100])


def test_sequence_bad_move():
    seq = FlipSequence(canonical(4))
    seq.flip((0, 3), (2, 3))
    doc = loads(dump_sequence(seq))
    doc["moves"][0]["insert"] = [1, 3]
    with pytest.raises(FlipError, match="move 0"):
        from_sequence_document(doc)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 9), st.integers(0, 10**6))
def test_round_trip_canonical_orders(n, seed):
    order = list(range(3, n))
    random.Random(seed).shuffle(order)
    T = canonical(n, 3, order)
    assert load_graph(dump_graph(T)).key() == T.key()
