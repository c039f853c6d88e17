import pytest

from cppt.core import PreconditionError, validate
from cppt.flips import FlipCase, _apply, find_move, neighbours
from cppt.forms import canonical
from cppt.induced import (
    CombTriangulation,
    EmulationError,
    check_triangulation,
    double_wheel,
    emulate_flip,
    induced_triangulation,
    is_double_wheel,
    lower_bound_instance,
    one_flip_from_double_wheel,
    replay_tri_flips,
    tri_flip,
)
from cppt.lab import enumerate_closure

from conftest import R, S, T, V1


def test_induced_four_is_k4(canon4):
    G = induced_triangulation(canon4)
    assert G.has_edge(T, V1)
    assert G.num_edges == 6
    assert all(len(r) == 3 for r in G.rot)
    assert G.outer == (R, S, T)


def test_induced_bare_triangle():
    G = induced_triangulation(canonical(3))
    assert G.rot == canonical(3).rot


def test_induced_six_chain():
    U = canonical(6)
    G = induced_triangulation(U)
    assert G.num_edges == 12
    assert G.has_edge(3, 4) and G.has_edge(4, 5) and G.has_edge(T, 5)


def test_induced_needs_triangle():
    with pytest.raises(PreconditionError):
        induced_triangulation(canonical(5, 4))


def test_tri_flip_blocked_in_k4(canon4):
    G = induced_triangulation(canon4)
    with pytest.raises(PreconditionError, match="duplicate"):
        tri_flip(G, (R, V1))


def test_tri_flip_square():
    # two triangles 0 1 3 and 1 2 3 in the square 0 1 2 3 (outer face)
    G = CombTriangulation(((1, 3), (0, 2, 3), (1, 3), (0, 1, 2)), (0, 3, 2, 1))
    H = tri_flip(G, (1, 3))
    assert H.has_edge(0, 2) and not H.has_edge(1, 3)


def test_tri_flip_outer_edge(canon4):
    with pytest.raises(PreconditionError, match="outer"):
        tri_flip(induced_triangulation(canon4), (R, S))


def test_double_wheel_cycle_flip():
    G = double_wheel(6)
    H = tri_flip(G, (3, 4))
    check_triangulation(H)
    assert H.has_edge(0, 1) and not H.has_edge(3, 4)


def test_double_wheel_sizes():
    G = double_wheel(5)
    assert G.num_edges == 9
    assert is_double_wheel(G)
    with pytest.raises(PreconditionError):
        double_wheel(4)


@pytest.mark.parametrize("n", range(5, 10))
def test_lower_bound_instance(n):
    U = lower_bound_instance(n)
    assert validate(U).valid
    G = induced_triangulation(U)
    e = one_flip_from_double_wheel(G)
    assert e is not None
    assert is_double_wheel(tri_flip(G, e))


def test_induced_is_triangulation_everywhere():
    for n in range(3, 7):
        for U in enumerate_closure(n, 3, "labeled").values():
            G = induced_triangulation(U)
            check_triangulation(G)
            assert G.num_edges == 3 * n - 6


def test_emulate_degenerate_is_empty(canon4):
    m = find_move(canon4, (R, V1), (T, V1))
    assert m.case is FlipCase.DEG5
    assert emulate_flip(canon4, m) == []
    assert induced_triangulation(canon4).key() == induced_triangulation(_apply(canon4, m)).key()


def test_emulate_pentagon(spinal5):
    for m in (find_move(spinal5, (R, 4), (T, V1)), find_move(spinal5, (R, 4), (R, V1))):
        flips = emulate_flip(spinal5, m)
        assert len(flips) <= 2
        end = replay_tri_flips(induced_triangulation(spinal5), flips)
        assert end.key() == induced_triangulation(_apply(spinal5, m)).key()


def test_emulate_cases_over_six():
    sizes = set()
    for U in enumerate_closure(6, 3, "labeled").values():
        G = induced_triangulation(U)
        for m, V in neighbours(U):
            assert m.case is not FlipCase.TT
            flips = emulate_flip(U, m)
            sizes.add((m.case, len(flips)))
            assert replay_tri_flips(G, flips).key() == induced_triangulation(V).key()
    assert all(k <= 2 for _, k in sizes)
    assert {k for c, k in sizes if c is FlipCase.DEG5} == {0}


def test_emulation_error_is_assertion():
    assert issubclass(EmulationError, AssertionError)
