import itertools
import random
from fractions import Fraction

import pytest

from polysumset.matrix import (
    determinant,
    determinant_naive,
    monomial_matrix_det,
    permanent,
    permanent_naive,
    permutation_sign,
    roots_permanent_nonzero,
    vandermonde_matrix,
)
from polysumset.multipoly import MultiPoly, build_difference_product, gens, parse_poly
from polysumset.rings import ModP, cyclo_is_zero, cyclo_root_pow


def test_determinant_examples():
    assert determinant([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert determinant([[1, 2], [3, 4]]) == -2
    assert determinant(vandermonde_matrix([1, 2, 3])) == 2
    assert determinant([]) == 1


def test_permanent_examples():
    assert permanent([[1, 1], [1, 1]]) == 2
    assert permanent([[1, 2], [3, 4]]) == 10
    z = cyclo_root_pow(3, 1)
    assert permanent([[1, 1], [1, z]]) == 1 + z


def test_permutation_sign():
    assert permutation_sign((0, 1, 2)) == 1
    assert permutation_sign((1, 0, 2)) == -1
    assert permutation_sign((1, 2, 0)) == 1


def test_non_square_rejected():
    with pytest.raises(ValueError):
        determinant([[1, 2]])
    with pytest.raises(ValueError):
        permanent([[1, 2], [3]])


def _random_matrix(rng, n, ring):
    if ring == "Q":
        return [[Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)] for _ in range(n)]
    return [[ModP(rng.randint(0, 6), 7) for _ in range(n)] for _ in range(n)]


@pytest.mark.parametrize("ring", ["Q", "F7"])
def test_fast_algorithms_match_naive(ring):
    rng = random.Random(11)
    for _ in range(60):
        M = _random_matrix(rng, rng.randint(1, 6), ring)
        assert permanent(M) == permanent_naive(M)
        assert determinant(M) == determinant_naive(M)


def test_singular_and_pivoting_cases():
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([[1, 2], [2, 4]]) == 0
    assert determinant([[0, 0, 1], [0, 1, 0], [1, 0, 0]]) == -1
    assert determinant([[ModP(0, 7), ModP(3, 7)], [ModP(2, 7), ModP(1, 7)]]) == ModP(1, 7)


def test_permutation_invariance():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(2, 5)
        M = _random_matrix(rng, n, "Q")
        rows = rng.sample(range(n), n)
        cols = rng.sample(range(n), n)
        shuffled = [[M[r][c] for c in cols] for r in rows]
        assert permanent(shuffled) == permanent(M)
        swapped = [M[1], M[0]] + M[2:]
        assert determinant(swapped) == -determinant(M)


@pytest.mark.parametrize("n", range(1, 5))
def test_vandermonde_duality(n):
    # reversing the rows of (x_j^{i-1}) costs a sign (-1)^{C(n,2)}
    x = gens(n)
    reversed_rows = [[x[j] ** (n - 1 - i) for j in range(n)] for i in range(n)]
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    assert determinant(reversed_rows) * sign == build_difference_product(n, 1)


def test_monomial_matrix_det_examples():
    assert monomial_matrix_det([[1, 1], [1, 1]], [0, 1]) == parse_poly("x2 - x1")
    assert monomial_matrix_det([[1, 0], [0, 1]], [0, 0]) == MultiPoly.constant(2, 1)
    a1, a2 = Fraction(3, 2), Fraction(-7)
    assert monomial_matrix_det([[1, 1], [a1, a2]], [0, 1]) == parse_poly("-7*x2 - 3/2*x1")


def test_roots_permanent_examples():
    r = roots_permanent_nonzero(1, [0])
    assert r["nonzero"] and r["value"] == 1
    z = cyclo_root_pow(3, 1)
    r = roots_permanent_nonzero(3, [0, 1])
    assert r["nonzero"] and r["value"] == 1 + z
    r = roots_permanent_nonzero(9, [0, 1, 2])
    assert r["nonzero"] and not cyclo_is_zero(r["value"])


def test_roots_permanent_guards():
    with pytest.raises(ValueError):
        roots_permanent_nonzero(4, [0, 1])
    with pytest.raises(ValueError):
        roots_permanent_nonzero(5, [1, 6])


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_roots_permanent_never_vanishes(q):
    for n in (1, 2, 3):
        for exps in itertools.permutations(range(q), n):
            assert roots_permanent_nonzero(q, exps)["nonzero"]
