import itertools

import pytest

from cppt.canonical import (
    FlipSequence,
    SequenceError,
    canonical_spine_positions,
    canonical_to_spinal,
    canonicalize_triangular,
    clear_tip,
    move_triangle_to_edge,
    sort_labels,
    spinal,
    spinal_to_canonical,
    swap_gadget,
    swap_neighbors,
    verify_sequence,
)
from cppt.core import PreconditionError, build, validate
from cppt.flips import find_move, neighbours
from cppt.forms import canonical, canonical_order, classify
from cppt.lab import enumerate_closure

from conftest import R, S, T, V1

C = 3


def _valid(seq):
    assert verify_sequence(seq) == (True, None)


# ------------------------------------------------------------- classify


def test_classify_canonical(canon4):
    p = classify(canon4)
    assert (p.form, p.base_edge, p.order) == ("canonical", (R, S), [V1])


def test_classify_spinal(spinal5):
    p = classify(spinal5)
    assert (p.form, p.order) == ("s-spinal", [3, 4])


@pytest.mark.parametrize("n", [5, 6, 7])
def test_classify_after_one_flip(n):
    for _, U in neighbours(canonical(n)):
        assert classify(U).form == "other"


# ------------------------------------------------- triangle to boundary


def test_triangle_already_on_base(canon4):
    assert len(move_triangle_to_edge(canon4, (R, S))) == 0


def test_triangle_to_tr(canon4):
    seq = move_triangle_to_edge(canon4, (T, R))
    assert seq.pairs() == [((S, V1), (T, V1))]
    assert any(f.size == 3 and set(f.vertices) == {R, V1, T} for f in seq.end.faces)


def test_triangle_to_st_six():
    seq = move_triangle_to_edge(canonical(6), (S, T))
    assert len(seq) <= 5
    _valid(seq)
    assert any(f.size == 3 and {S, T} <= set(f.vertices) and not f.outer for f in seq.end.faces)


# ------------------------------------------------------------ clear tip


def test_clear_tip_single_edge(canon4):
    # tip 0 with the interior triangle on edge 0 1
    seq = clear_tip(canon4, 1, 0)
    assert len(seq) <= 2
    assert seq.stages == ["clear-tip/1.1"]
    assert seq.end.degree(0) == 2


def test_clear_tip_noop():
    U = move_triangle_to_edge(canonical(5), (T, R)).end
    U = clear_tip(U, R, T).end
    assert U.degree(T) == 2
    assert len(clear_tip(U, R, T)) == 0


def test_clear_tip_second_phase():
    rot = [(1, 3, 4, 5, 2), (0, 2), (0, 5, 4, 3, 1), (0, 2), (0, 2), (0, 2)]
    U = build(rot, (0, 1, 2), [2, 0, 1, 0, 0, 0])
    assert validate(U).valid
    seq = clear_tip(U, R, T)
    assert any(st.startswith("clear-tip/2") for st in seq.stages)
    _valid(seq)
    assert seq.end.degree(T) == 2


def test_clear_tip_needs_triangle_region(canon4):
    with pytest.raises(PreconditionError):
        clear_tip(canon4, R, S)


# ---------------------------------------------------- canonicalization


def test_canonical_fixed_point():
    assert len(canonicalize_triangular(canonical(6))) == 0


def test_spinal_to_canonical_exact(spinal5):
    seq = canonicalize_triangular(spinal5)
    assert len(seq) == 2
    assert classify(seq.end).form == "canonical"


def test_canonicalize_every_six():
    for U in enumerate_closure(6, 3, "labeled").values():
        seq = canonicalize_triangular(U)
        _valid(seq)
        assert canonical_order(seq.end, *classify(seq.end).roles) is not None
        assert classify(seq.end).form == "canonical"
        assert len(seq) <= C * 36


def test_canonicalize_rejects_square():
    with pytest.raises(PreconditionError):
        canonicalize_triangular(canonical(5, 4))


# ---------------------------------------------------- spinal transforms


def test_to_spinal_bare_triangle():
    assert len(canonical_to_spinal(canonical(3))) == 0


def test_to_spinal_four(canon4):
    seq = canonical_to_spinal(canon4)
    assert len(seq) == 1
    assert classify(seq.end).order == [V1]


@pytest.mark.parametrize("side", ["r", "s"])
def test_to_spinal_seven(side):
    seq = canonical_to_spinal(canonical(7), side)
    assert len(seq) == 4
    p = classify(seq.end)
    assert p.form == f"{side}-spinal" and p.order == [3, 4, 5, 6]


def test_spinal_round_trip():
    for side in "rs":
        U = spinal(8, side)
        seq = spinal_to_canonical(U)
        assert len(seq) == 5
        assert seq.end.key() == canonical(8).key()


def test_to_spinal_rejects_other(spinal5):
    with pytest.raises(PreconditionError):
        canonical_to_spinal(spinal5)


# ---------------------------------------------------------------- swaps


def test_swap_first_pair(spinal5):
    assert len(swap_gadget(spinal5, 1)) == 3
    seq = swap_neighbors(spinal5, 1)
    assert len(seq) == 4
    p = classify(seq.end)
    assert p.form == "s-spinal" and p.order == [4, 3]


def test_swap_twice_restores(spinal5):
    once = swap_neighbors(spinal5, 1).end
    assert swap_neighbors(once, 1).end.key() == spinal5.key()


def test_swap_inside_longer_spine():
    seq = canonical_to_spinal(canonical(8))
    hub = R if seq.end.has_edge(7, R) else S
    seq.flip((7, T), (7, S if hub == R else R))
    U = seq.end
    assert canonical_spine_positions(U, R, S, T, 3) == ([3, 4, 5, 6], 7)
    sw = swap_neighbors(U, 3)
    assert len(sw) == 7
    _valid(sw)
    assert canonical_spine_positions(sw.end, R, S, T, 3) == ([3, 4, 6, 5], 7)


def test_swap_wrong_shape(canon4):
    with pytest.raises(PreconditionError):
        swap_gadget(canonical(6), 1)


# -------------------------------------------------------------- sorting


def test_sort_identity():
    U = canonical(7)
    seq = sort_labels(U, [3, 4, 5, 6])
    assert 0 < len(seq) <= 4 * 7
    assert seq.end.key() == U.key()


def test_sort_reversal():
    seq = sort_labels(canonical(7), [6, 5, 4, 3])
    _valid(seq)
    assert classify(seq.end).order == [6, 5, 4, 3]


def test_sort_single_vertex(canon4):
    assert len(sort_labels(canon4, [V1])) == 0


def test_sort_every_order_six():
    for order in itertools.permutations([3, 4, 5]):
        start = canonical(6, 3, order)
        for target in itertools.permutations([3, 4, 5]):
            seq = sort_labels(start, list(target))
            _valid(seq)
            assert seq.end.key() == canonical(6, 3, target).key()


def test_sort_bad_target(canon4):
    with pytest.raises(PreconditionError):
        sort_labels(canonical(5), [3, 3])


# ---------------------------------------------------------- sequences


def test_cancel_inverses_keeps_endpoint(canon4):
    seq = FlipSequence(canon4)
    seq.flip((R, V1), (T, V1))
    seq.flip((T, V1), (R, V1))
    seq.flip((S, V1), (T, V1))
    end = seq.end
    seq.cancel_inverses()
    assert len(seq) == 1
    assert seq.end.key() == end.key()


def test_verify_reports_first_bad_move(canon4):
    seq = FlipSequence(canon4)
    seq.flip((R, V1), (T, V1))
    U = seq.end
    seq.moves.append(find_move(canon4, (S, V1), (T, V1)))
    seq.stages.append("stale")
    assert verify_sequence(seq) == (False, 1)
    assert U.key() != canon4.key()


def test_sequence_error_is_runtime():
    assert issubclass(SequenceError, RuntimeError)
