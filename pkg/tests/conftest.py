import pytest

from cppt.canonical import spinal
from cppt.forms import canonical

R, S, T, V1, V2 = 0, 1, 2, 3, 4


def same_cycle(a, b):
    a, b = tuple(a), tuple(b)
    return len(a) == len(b) and any(b == a[i:] + a[:i] for i in range(len(a)))


def cycle_up_to_direction(a, b):
    return same_cycle(a, b) or same_cycle(tuple(reversed(a)), b)


@pytest.fixture
def canon4():
    return canonical(4)


@pytest.fixture
def spinal5():
    return spinal(5, "s")
