import itertools

import pytest

from polysumset.errors import HypothesisNotMet
from polysumset.permutations import (
    check_hall,
    check_parker,
    check_snevily,
    hall_permutation,
    parker_decomposition,
    snevily_counterexamples,
    snevily_permutation,
)


def test_snevily_examples():
    assert snevily_permutation(5, 3, (0, 0, 0)) == (1, 2, 3)
    assert snevily_permutation(3, 2, (0, 1)) == (1, 2)
    sigma = snevily_permutation(5, 3, (2, 4, 1))
    assert sigma is not None and check_snevily(5, (2, 4, 1), sigma)


def test_snevily_can_fail_for_even_modulus():
    # m = 2, n = 2, b = (0, 1): sums are {1+0, 2+1} or {1+1, 2+0}, both collide mod 2
    assert snevily_permutation(2, 2, (0, 1)) is None


@pytest.mark.parametrize("m", range(1, 8))
def test_snevily_exhaustive(m):
    for n in range(1, (m + 1) // 2 + 1):
        for b in itertools.product(range(m), repeat=n):
            sigma = snevily_permutation(m, n, b)
            assert sigma is not None and check_snevily(m, b, sigma), (m, b)


def test_snevily_exploration_reports_without_asserting():
    assert snevily_counterexamples(5, 4) == []
    assert (0, 1) in snevily_counterexamples(2, 2)


def test_hall_examples():
    assert hall_permutation(2, (0, 1), (0, 0)) == (1, 2)
    assert hall_permutation(3, (0, 1, 2), (0, 1, 2)) == (1, 2, 3)
    assert hall_permutation(3, (0, 1, 2), (0, 0, 0)) == (1, 2, 3)


def test_hall_hypothesis():
    with pytest.raises(HypothesisNotMet):
        hall_permutation(3, (0, 1, 2), (0, 0, 1))
    assert hall_permutation(3, (0, 1, 2), (0, 0, 1), enforce=False) is None
    with pytest.raises(ValueError):
        hall_permutation(3, (0, 1, 1), (0, 0, 0))


@pytest.mark.parametrize("n", range(1, 7))
def test_hall_exhaustive(n):
    a = tuple(range(n))
    for b in itertools.product(range(n), repeat=n):
        if sum(b) % n == 0:
            sigma = hall_permutation(n, a, b)
            assert sigma is not None and check_hall(n, a, b, sigma), b


def test_parker_examples():
    assert parker_decomposition(2, (0, 0)) == ((1,), (1,))
    sp, tau = parker_decomposition(3, (1, 2, 0))
    assert (sp, tau) == ((2, 1), (2, 1))
    sp, tau = parker_decomposition(3, (0, 0, 0))
    assert (sp, tau) == ((1, 2), (2, 1))


def test_parker_hypothesis():
    with pytest.raises(HypothesisNotMet):
        parker_decomposition(3, (1, 1, 1))
    with pytest.raises(HypothesisNotMet):
        parker_decomposition(3, (1, 1, 0))


@pytest.mark.parametrize("n", range(2, 7))
def test_parker_exhaustive(n):
    for head in itertools.product(range(n), repeat=n - 2):
        b = list(head) + [-sum(head) % n, 0]
        sp, tau = parker_decomposition(n, b)
        assert check_parker(n, b, sp, tau), b
