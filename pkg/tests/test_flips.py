import random

import pytest

from cppt.core import validate
from cppt.flips import (
    FlipCase,
    FlipError,
    FlipMove,
    NoTriangleError,
    OuterEdgeError,
    apply_flip,
    find_move,
    flip_candidates,
    flippable_edges,
    neighbours,
    reverse_move,
)
from cppt.forms import canonical
from cppt.lab import enumerate_closure

from conftest import R, S, T, V1, V2, cycle_up_to_direction


def test_flippable_canonical_four(canon4):
    assert set(flippable_edges(canon4)) == {(R, V1), (S, V1)}


def test_bare_triangle_has_no_flips():
    assert flippable_edges(canonical(3)) == []


@pytest.mark.parametrize("n", range(4, 9))
def test_flippable_canonical_any_size(n):
    assert set(flippable_edges(canonical(n))) == {(R, V1), (S, V1)}


def test_deg5_unique_candidate(canon4):
    (m,) = flip_candidates(canon4, (R, V1))
    assert m.case is FlipCase.DEG5
    assert m.inserted == (T, V1)


def test_nondeg5_on_spinal(spinal5):
    ms = flip_candidates(spinal5, (R, V2))
    assert {m.case for m in ms} == {FlipCase.NONDEG5}
    assert {m.inserted for m in ms} == {(T, V1), (R, V1)}
    assert all(V1 in m.inserted for m in ms)


def test_tt_on_outer_square():
    Q = canonical(4, 4)
    (m,) = flip_candidates(Q, (0, 2))
    assert m.case is FlipCase.TT and m.inserted == (1, 3)


def test_outer_edge_error(canon4):
    with pytest.raises(OuterEdgeError):
        flip_candidates(canon4, (R, S))


def test_no_triangle_error():
    U = canonical(6)
    # s v2 borders two quadrilaterals only
    with pytest.raises(NoTriangleError):
        flip_candidates(U, (S, 4))


def test_apply_deg5(canon4):
    U = apply_flip(canon4, find_move(canon4, (R, V1), (T, V1)))
    assert validate(U).valid
    assert U.degree(R) == 2
    faces = [f.vertices for f in U.faces if not f.outer]
    assert any(cycle_up_to_direction(f, (S, T, V1)) for f in faces)
    assert any(cycle_up_to_direction(f, (R, T, V1, S)) for f in faces)
    quad = next(f for f in U.faces if f.size == 4)
    assert any(d.origin == V1 and U.reflex[V1] == d.target for d in quad.darts)


def test_flip_then_reverse_restores(canon4):
    m = find_move(canon4, (R, V1), (T, V1))
    U = apply_flip(canon4, m)
    assert apply_flip(U, reverse_move(canon4, m)).key() == canon4.key()


def test_existing_edge_rejected(canon4):
    with pytest.raises(FlipError):
        find_move(canon4, (R, V1), (S, V1))
    fake = FlipMove((R, V1), (R, S), FlipCase.DEG5, (), ((R, S), (S, R)))
    with pytest.raises(FlipError):
        apply_flip(canon4, fake)


def test_stale_move_rejected(canon4):
    m = find_move(canon4, (R, V1), (T, V1))
    U = apply_flip(canon4, m)
    with pytest.raises(FlipError):
        apply_flip(U, m)


def test_flip_cases_over_universe():
    # every interior edge of an interior triangle has a candidate, with the
    # case-dependent count
    for h in (3, 4, 5):
        for n in range(h, 7):
            for U in enumerate_closure(n, h, "labeled").values():
                for e in flippable_edges(U):
                    ms = flip_candidates(U, e)
                    assert ms
                    case = ms[0].case
                    if case in (FlipCase.DEG5, FlipCase.TT):
                        assert len(ms) == 1
                    else:
                        assert len(ms) >= 2


def test_random_walk_stays_valid():
    rng = random.Random(7)
    U = canonical(9)
    for _ in range(300):
        m, nxt = rng.choice(neighbours(U))
        assert validate(nxt).valid
        assert apply_flip(nxt, reverse_move(U, m)).key() == U.key()
        U = nxt
