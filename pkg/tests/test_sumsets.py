import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polysumset.errors import CapExceeded
from polysumset.multipoly import parse_poly
from polysumset.rings import Cyclotomic, ModP
from polysumset.sumsets import (
    Congruence,
    DiffAvoid,
    PairwiseDistinct,
    PolyImageDistinct,
    PolyNonzero,
    Ring,
    ScaledDistinct,
    SumsetProblem,
    centered_residue,
    enumerate_restricted_sumset,
)


def test_pairwise_distinct_mod7():
    problem = SumsetProblem(Ring("prime", 7), [[0, 1], [0, 1, 2]], [PairwiseDistinct()])
    assert enumerate_restricted_sumset(problem) == {ModP(v, 7) for v in (1, 2, 3)}


def test_congruence_over_rationals():
    problem = SumsetProblem(
        Ring("rational"),
        [[0, 1, 2], [0, 1, 2]],
        [PairwiseDistinct(), Congruence(1, 2, 5, (0, 0))],
    )
    assert enumerate_restricted_sumset(problem) == {1, 2, 3}


@pytest.mark.parametrize("ring", [Ring("prime", 5), Ring("rational"), Ring("cyclotomic", q=3)])
def test_singletons(ring):
    problem = SumsetProblem(ring, [[1], [2], [Fraction(1, 3) if ring.kind != "prime" else 4]])
    assert len(enumerate_restricted_sumset(problem)) == 1


def test_diff_avoid_both_orders():
    base = SumsetProblem(Ring("rational"), [[1], [0, 1, 2]])
    forward = base.with_constraint(DiffAvoid(1, 2, (1,)))
    backward = base.with_constraint(DiffAvoid(2, 1, (1,)))
    # a1 - a2 = 1 forbids (1, 0); a2 - a1 = 1 forbids (1, 2)
    assert enumerate_restricted_sumset(forward) == {2, 3}
    assert enumerate_restricted_sumset(backward) == {1, 2}
    with pytest.raises(ValueError):
        DiffAvoid(1, 1, (0,)).compile(Ring("rational"), 2)


def test_scaled_distinct_with_roots_of_unity():
    ring = Ring("cyclotomic", q=3)
    problem = SumsetProblem(ring, [[0, 1], [0, 1]], [ScaledDistinct(zeta_exps=(0, 1))])
    # only (0,0) collides: 1*0 == z*0
    assert len(enumerate_restricted_sumset(problem)) == 2
    plain = SumsetProblem(ring, [[0, 1], [0, 1]])
    assert len(enumerate_restricted_sumset(plain)) == 3


def test_poly_image_and_nonzero_constraints():
    ring = Ring("prime", 7)
    squares = PolyImageDistinct(((0, 0, 1), (0, 0, 1)))
    problem = SumsetProblem(ring, [[1, 2, 3], [4, 5, 6]], [squares])
    sums = enumerate_restricted_sumset(problem)
    # 1,6 / 2,5 / 3,4 have equal squares mod 7 and are removed
    assert ModP(0, 7) not in sums
    nonzero = SumsetProblem(ring, [[0, 1], [0, 1]], [PolyNonzero(parse_poly("x1 - x2"))])
    assert enumerate_restricted_sumset(nonzero) == {ModP(1, 7)}


def test_centered_residue():
    assert centered_residue(3, 5) == -2
    assert centered_residue(2, 5) == 2
    assert centered_residue(2, 4) == 2
    assert centered_residue(-2, 4) == 2
    assert centered_residue(-7, 10) == 3


def test_problem_validation():
    with pytest.raises(ValueError):
        SumsetProblem(Ring("rational"), [])
    with pytest.raises(ValueError):
        SumsetProblem(Ring("rational"), [[1, 1]])
    with pytest.raises(ValueError):
        SumsetProblem(Ring("rational"), [[]])
    with pytest.raises(ValueError):
        Ring("prime", 9)
    with pytest.raises(ValueError):
        SumsetProblem(Ring("prime", 5), [[0, 5]])


def test_congruence_needs_integers():
    problem = SumsetProblem(Ring("rational"), [[Fraction(1, 2), 1], [0, 1]], [Congruence(1, 2, 5, (0, 0))])
    with pytest.raises(ValueError):
        enumerate_restricted_sumset(problem)


def test_cap():
    problem = SumsetProblem(Ring("prime", 7), [list(range(7))] * 3)
    with pytest.raises(CapExceeded):
        enumerate_restricted_sumset(problem, cap=300)
    assert len(enumerate_restricted_sumset(problem, cap=343)) == 7


def test_json_round_trip():
    doc = {
        "ring": {"kind": "cyclotomic", "q": 5},
        "sets": [["1/2", 3], [0, ["1", "0", "0", "2"]]],
        "constraints": [
            {"kind": "diff_avoid", "i": 1, "j": 2, "S": ["1/2"]},
            {"kind": "scaled_distinct", "zeta_exps": [0, 2]},
            {"kind": "pairwise_distinct"},
        ],
    }
    problem = SumsetProblem.from_json(json.dumps(doc))
    assert problem.sets[1][1] == Cyclotomic(5, (1, 0, 0, 2))
    again = SumsetProblem.from_json(problem.to_json())
    assert enumerate_restricted_sumset(again) == enumerate_restricted_sumset(problem)
    rational = {"ring": {"kind": "rational"}, "sets": [[0, 1]], "constraints": [
        {"kind": "congruence", "i": 1, "j": 2, "m": 3, "b": [0, 1]},
        {"kind": "poly_image_distinct", "polys": [[0, 1], ["1/2", 1]]},
        {"kind": "poly_nonzero", "poly": "x1 - 1"},
        {"kind": "scaled_distinct", "alpha": ["1/2", 2]},
    ]}
    p2 = SumsetProblem.from_json(rational)
    assert SumsetProblem.from_json(p2.to_json()).to_json() == p2.to_json()
    with pytest.raises(ValueError):
        SumsetProblem.from_json({"ring": {"kind": "rational"}, "sets": [[0]], "constraints": [{"kind": "bogus"}]})


# --- monotonicity --------------------------------------------------------

def _random_constraint(rng, n, p):
    kind = rng.randrange(4)
    i, j = rng.sample(range(1, n + 1), 2)
    if kind == 0:
        return DiffAvoid(i, j, tuple(rng.sample(range(p), rng.randint(0, 2))))
    if kind == 1:
        return PairwiseDistinct()
    if kind == 2:
        return ScaledDistinct(alphas=tuple(rng.randint(1, p - 1) for _ in range(n)))
    return PolyImageDistinct(tuple(tuple(rng.randint(0, p - 1) for _ in range(3)) for _ in range(n)))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([5, 7, 11]), st.integers(2, 3), st.integers(0, 10**6))
def test_adding_a_constraint_never_enlarges(p, n, seed):
    rng = random.Random(seed)
    sets = [rng.sample(range(p), rng.randint(1, 4)) for _ in range(n)]
    problem = SumsetProblem(Ring("prime", p), sets)
    current = enumerate_restricted_sumset(problem)
    for _ in range(3):
        problem = problem.with_constraint(_random_constraint(rng, n, p))
        smaller = enumerate_restricted_sumset(problem)
        assert smaller <= current
        current = smaller
