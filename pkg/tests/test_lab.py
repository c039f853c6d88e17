import pytest

from cppt.core import PreconditionError, validate
from cppt.forms import canonical
from cppt.lab import (
    bfs_distance,
    build_flip_graph,
    connectivity_and_diameter,
    enumerate_all,
    enumerate_closure,
    enumerate_direct,
    label_certificate,
    labeled_diameter,
    labeled_key,
    rooted_key,
    unlabeled_key,
)

# frozen after cross-checking the two generators
LABELED_COUNTS = {3: 1, 4: 3, 5: 30, 6: 552}
ROOTED_COUNTS = {3: 1, 4: 3, 5: 15, 6: 92, 7: 636}


@pytest.mark.parametrize("n", sorted(LABELED_COUNTS))
def test_labeled_counts(n):
    assert len(enumerate_closure(n, 3, "labeled")) == LABELED_COUNTS[n]


@pytest.mark.parametrize("n", sorted(ROOTED_COUNTS))
def test_rooted_counts(n):
    assert len(enumerate_closure(n, 3, "rooted")) == ROOTED_COUNTS[n]


def test_four_attachments():
    pairs = set()
    for T in enumerate_closure(4, 3, "labeled").values():
        assert T.degree(3) == 2
        pairs.add(frozenset(T.rot[3]))
    assert pairs == {frozenset(p) for p in [(0, 1), (1, 2), (2, 0)]}


@pytest.mark.parametrize("h,nmax", [(3, 7), (4, 7), (5, 7)])
@pytest.mark.parametrize("mode", ["labeled", "unlabeled"])
def test_generators_agree(h, nmax, mode):
    for n in range(h, nmax + 1):
        if mode == "labeled" and n > 6:
            continue
        a = enumerate_closure(n, h, mode)
        b = enumerate_direct(n, h, mode)
        assert set(a) == set(b)


def test_direct_output_is_valid():
    for T in enumerate_direct(6, 4, "labeled").values():
        assert validate(T).valid


def test_enumerate_all_dispatch():
    assert set(enumerate_all(5, 3, method="direct")) == set(enumerate_all(5, 3))
    with pytest.raises(ValueError):
        enumerate_all(5, 3, method="nope")


def test_caps():
    with pytest.raises(PreconditionError, match="cap"):
        enumerate_closure(11, 3, "labeled")


def test_keys_distinguish_modes():
    T = canonical(6, 3, [5, 4, 3])
    U = canonical(6)
    assert labeled_key(T) != labeled_key(U)
    assert rooted_key(T) == rooted_key(U)
    assert unlabeled_key(T) == unlabeled_key(U)


def test_unlabeled_ignores_outer_rotation():
    T = canonical(6)
    rot = T.relabel([1, 2, 0, 3, 4, 5])
    rot = type(T)(rot.rot, rot.reflex, T.outer, None)
    assert unlabeled_key(rot) == unlabeled_key(T)


def test_flip_graph_three():
    g = build_flip_graph(enumerate_closure(3))
    assert len(g) == 1 and g.num_edges() == 0
    assert connectivity_and_diameter(g) == (True, 0)


def test_flip_graph_four_is_triangle():
    g = build_flip_graph(enumerate_closure(4))
    assert len(g) == 3 and g.num_edges() == 3
    assert all(len(a) == 2 for a in g.adjacency.values())
    assert connectivity_and_diameter(g) == (True, 1)


def test_flip_graph_six_connected():
    g = build_flip_graph(enumerate_closure(6))
    assert connectivity_and_diameter(g)[0]


def test_flip_graph_rejects_partial_set():
    U = enumerate_closure(5)
    part = dict(list(U.items())[:3])
    with pytest.raises(PreconditionError):
        build_flip_graph(part)


def test_bfs_distance_basics():
    U = list(enumerate_closure(4).values())
    assert bfs_distance(U[0], U[0]) == 0
    assert bfs_distance(U[0], U[1]) == 1
    with pytest.raises(PreconditionError):
        bfs_distance(canonical(4), canonical(5))


def test_quotient_diameter_matches_brute_force():
    for n in range(3, 7):
        brute = connectivity_and_diameter(build_flip_graph(enumerate_closure(n)))
        connected, diam, size = labeled_diameter(n)
        assert (connected, diam) == brute
        assert size == LABELED_COUNTS[n]


def test_seven_diameter():
    connected, diam, size = labeled_diameter(7)
    assert connected and size == 15264
    assert diam == 15 <= 3 * 49


@pytest.mark.parametrize("n,h", [(6, 3), (7, 3), (6, 4), (7, 5)])
def test_label_certificate(n, h):
    cert = label_certificate(n, h)
    assert cert.connected
    assert cert.structures == len(enumerate_closure(n, h, "rooted"))
