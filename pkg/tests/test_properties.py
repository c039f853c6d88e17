"""Hypothesis properties over random flip walks."""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from cppt.canonical import FlipSequence, canonicalize_triangular, sort_labels, verify_sequence
from cppt.core import validate
from cppt.flips import apply_flip, flip_candidates, flippable_edges, neighbours, reverse_move
from cppt.forms import canonical, canonical_order, classify
from cppt.general import canonicalize_general, flip_sequence
from cppt.induced import emulate_flip, induced_triangulation, replay_tri_flips
from cppt.io import dump_sequence, from_sequence_document, loads
from cppt.lab import labeled_key

C = 3


def walk(n, h, steps, seed):
    rng = random.Random(seed)
    T = canonical(n, h)
    for _ in range(steps):
        options = neighbours(T)
        if not options:
            break
        T = rng.choice(options)[1]
    return T


shapes = st.tuples(st.integers(3, 5), st.integers(0, 4)).map(lambda p: (p[0] + p[1], p[0]))
seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=40, deadline=None)
@given(shapes, st.integers(0, 40), seeds)
def test_walk_keeps_counts(shape, steps, seed):
    n, h = shape
    rep = validate(walk(n, h, steps, seed))
    assert rep.valid
    assert (rep.e, rep.t, rep.q, rep.h) == (2 * n - 3, h - 2, n - h, h)


@settings(max_examples=40, deadline=None)
@given(shapes, st.integers(0, 30), seeds)
def test_flip_is_invertible(shape, steps, seed):
    T = walk(*shape, steps, seed)
    for m, U in neighbours(T):
        assert apply_flip(U, reverse_move(T, m)).key() == T.key()


@settings(max_examples=40, deadline=None)
@given(shapes, st.integers(0, 30), seeds)
def test_candidates_match_cases(shape, steps, seed):
    T = walk(*shape, steps, seed)
    for e in flippable_edges(T):
        ms = flip_candidates(T, e)
        assert len(ms) == 1 if ms[0].case.value in ("TT", "DEG5") else len(ms) >= 2


@settings(max_examples=30, deadline=None)
@given(shapes, st.integers(0, 40), st.integers(0, 40), seeds)
def test_sequences_between_walks(shape, s1, s2, seed):
    n, h = shape
    a, b = walk(n, h, s1, seed), walk(n, h, s2, seed + 1)
    seq = flip_sequence(a, b)
    assert verify_sequence(seq) == (True, None)
    assert labeled_key(seq.end) == labeled_key(b)
    assert len(seq) <= C * n * n


@settings(max_examples=30, deadline=None)
@given(shapes, st.integers(0, 40), seeds)
def test_canonicalize_reaches_form(shape, steps, seed):
    n, h = shape
    seq = canonicalize_general(walk(n, h, steps, seed))
    assert verify_sequence(seq) == (True, None)
    assert classify(seq.end).form == ("canonical" if h == 3 else "general-canonical")


@settings(max_examples=30, deadline=None)
@given(st.integers(4, 9), seeds, seeds)
def test_sort_conserves_labels(n, s1, s2):
    start, target = list(range(3, n)), list(range(3, n))
    random.Random(s1).shuffle(start)
    random.Random(s2).shuffle(target)
    seq = sort_labels(canonical(n, 3, start), target)
    assert verify_sequence(seq) == (True, None)
    assert canonical_order(seq.end, 0, 1, 2) == target


@settings(max_examples=30, deadline=None)
@given(st.integers(4, 8), st.integers(0, 40), seeds)
def test_relabelling_commutes_with_flips(n, steps, seed):
    T = walk(n, 3, steps, seed)
    perm = list(range(n))
    inner = perm[3:]
    random.Random(seed).shuffle(inner)
    perm[3:] = inner
    P = T.relabel(perm)
    ours = sorted(labeled_key(U.relabel(perm)) for _, U in neighbours(T))
    theirs = sorted(labeled_key(U) for _, U in neighbours(P))
    assert ours == theirs


@settings(max_examples=30, deadline=None)
@given(st.integers(4, 9), st.integers(0, 40), seeds)
def test_emulation_lands_on_induced(n, steps, seed):
    T = walk(n, 3, steps, seed)
    G = induced_triangulation(T)
    for m, U in neighbours(T):
        flips = emulate_flip(T, m)
        assert len(flips) <= 2
        assert replay_tri_flips(G, flips).key() == induced_triangulation(U).key()


@settings(max_examples=25, deadline=None)
@given(st.integers(5, 8), st.integers(0, 40), seeds, st.data())
def test_verifier_accepts_exactly_valid(n, steps, seed, data):
    T = walk(n, 3, steps, seed)
    seq = canonicalize_triangular(T)
    doc = loads(dump_sequence(seq))
    back, target = from_sequence_document(doc)
    assert verify_sequence(back) == (True, None) and back.end.key() == target.key()
    if len(seq) >= 2:
        k = data.draw(st.integers(0, len(seq) - 2))
        cut = FlipSequence(seq.start, seq.moves[:k], seq.stages[:k])
        assert verify_sequence(cut)[0]
        assert cut.end.key() != target.key() or k == 0
