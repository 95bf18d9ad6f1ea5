import random
from fractions import Fraction

import pytest

from polysumset import bounds
from polysumset.bounds import bound_for, check_bound, coefficient_lower_bound
from polysumset.errors import CounterexampleError
from polysumset.multipoly import MultiPoly, parse_poly
from polysumset.rings import ModP
from polysumset.sumsets import (
    Congruence,
    DiffAvoid,
    PairwiseDistinct,
    PolyImageDistinct,
    PolyNonzero,
    Ring,
    ScaledDistinct,
    SumsetProblem,
    enumerate_restricted_sumset,
)


def test_bound_formulas():
    assert bound_for("i", {"k": [3, 4], "p": 5}) == 5
    assert bound_for("i", {"k": [3, 4]}) == 6
    assert bound_for("ii", {"n": 2, "size": 4, "p": 11}) == 5
    assert bound_for("iii", {"k": [2, 3], "p": 7}) == 3
    assert bound_for("thm1.1", {"k": 3, "n": 2, "m": 1}) == 3
    assert bound_for("thm1.2", {"k": 3, "n": 2, "m": 1}) == 3
    assert bound_for("thm1.3", {"k": 3, "n": 2}) == 2
    with pytest.raises(ValueError):
        bound_for("vii", {})


def test_difference_avoiding_bound_example():
    problem = SumsetProblem(Ring("prime", 11), [[0, 1], [0, 1, 2]], [DiffAvoid(1, 2, (0,))])
    report = check_bound(problem, "thm1.1", {"m": 1})
    assert report.hypotheses_met and report.passed
    assert report.actual_cardinality >= 3
    assert report.details["h"] == "1"


def test_difference_avoiding_bound_guard_on_large_S():
    problem = SumsetProblem(Ring("prime", 5), [[0, 1], [0, 1, 2]], [DiffAvoid(1, 2, (0, 1))])
    report = check_bound(problem, "thm1.1", {"m": 1})
    assert not report.hypotheses_met
    assert not report.passed
    assert any("|S_12|" in r for r in report.reasons)


def test_congruence_bound_example():
    problem = SumsetProblem(
        Ring("rational"),
        [[0, 1, 2], [0, 1, 2]],
        [ScaledDistinct(alphas=(1, 1)), Congruence(1, 2, 5, (0, 0))],
    )
    report = check_bound(problem, "thm1.3")
    assert report.hypotheses_met and report.passed
    assert (report.actual_cardinality, report.claimed_bound) == (3, 2)
    assert report.to_json()["comparison"] == ">"
    assert report.details["r"] == {"1,2": 0}


def test_congruence_bound_rejects_small_modulus():
    problem = SumsetProblem(Ring("rational"), [[0, 1, 2], [0, 1, 2]], [Congruence(1, 2, 4, (0, 0))])
    report = check_bound(problem, "thm1.3")
    assert not report.hypotheses_met


def test_roots_of_unity_bound_records_permanent():
    problem = SumsetProblem(
        Ring("cyclotomic", q=3),
        [[0, 1, 2], [0, 1, Fraction(1, 2)]],
        [ScaledDistinct(zeta_exps=(0, 1)), DiffAvoid(1, 2, (1,))],
    )
    report = check_bound(problem, "thm1.2", {"m": 1})
    assert report.hypotheses_met and report.passed
    assert report.details["roots_permanent_nonzero"] is True


def test_roots_of_unity_bound_rejects_even_q_and_repeated_roots():
    sets = [[0, 1], [0, 1]]
    even = SumsetProblem(Ring("cyclotomic", q=4), sets, [ScaledDistinct(zeta_exps=(0, 1))])
    assert not check_bound(even, "thm1.2", {"m": 1}).hypotheses_met
    repeated = SumsetProblem(Ring("cyclotomic", q=5), sets, [ScaledDistinct(zeta_exps=(1, 6))])
    assert not check_bound(repeated, "thm1.2", {"m": 1}).hypotheses_met


def test_wrong_constraint_kind_is_a_hypothesis_failure():
    problem = SumsetProblem(Ring("prime", 7), [[0, 1], [0, 1, 2]], [PairwiseDistinct()])
    report = check_bound(problem, "i")
    assert not report.hypotheses_met


def test_strict_mode_dumps_counterexample(monkeypatch):
    problem = SumsetProblem(Ring("prime", 7), [[0, 1], [0, 1, 2]])
    monkeypatch.setattr(bounds, "bound_for", lambda rid, params: 100)
    assert not check_bound(problem, "i").passed
    with pytest.raises(CounterexampleError) as info:
        check_bound(problem, "i", strict=True)
    assert info.value.dump["problem"] == problem.to_json()


def test_missing_m_parameter():
    problem = SumsetProblem(Ring("prime", 11), [[0, 1], [0, 1, 2]])
    with pytest.raises(ValueError):
        check_bound(problem, "thm1.1", {})


# --- results (iv) to (vi) on random small instances ----------------------

def test_result_iv_random():
    rng = random.Random(4)
    met = 0
    for _ in range(150):
        p, n, m = rng.choice([11, 13]), rng.randint(2, 3), rng.randint(0, 2)
        k = rng.randint(m * (n - 1) + 1, 5)
        sets = [rng.sample(range(p), k) for _ in range(n)]
        cons = []
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i != j:
                    cons.append(DiffAvoid(i, j, tuple(rng.sample(range(p), rng.randint(0, m)))))
        report = check_bound(SumsetProblem(Ring("prime", p), sets, cons), "iv", {"m": m}, strict=True)
        met += report.hypotheses_met
    assert met > 50


def test_result_v_random():
    rng = random.Random(5)
    met = 0
    for _ in range(150):
        p, n, m = 13, rng.randint(2, 3), rng.randint(1, 2)
        top = rng.randint(m * (n - 1) + 1, 5)
        sizes = sorted(max(1, top - rng.randint(0, 1) * t) for t in range(n))
        sizes = [min(s, top) for s in sizes]
        polys = tuple(tuple(rng.randint(0, p - 1) for _ in range(m)) + (1,) for _ in range(n))
        sets = [rng.sample(range(p), s) for s in sizes]
        problem = SumsetProblem(Ring("prime", p), sets, [PolyImageDistinct(polys)])
        met += check_bound(problem, "v", strict=True).hypotheses_met
    assert met > 50


def test_result_vi_random():
    rng = random.Random(6)
    met = 0
    for _ in range(150):
        p, n, m = 13, rng.randint(2, 3), rng.randint(1, 2)
        k = rng.randint(m * (n - 1) + 1, 5)
        polys = tuple(tuple(rng.randint(0, p - 1) for _ in range(m)) + (rng.randint(1, p - 1),) for _ in range(n))
        sets = [rng.sample(range(p), k) for _ in range(n)]
        problem = SumsetProblem(Ring("prime", p), sets, [PairwiseDistinct(), PolyImageDistinct(polys)])
        met += check_bound(problem, "vi", strict=True).hypotheses_met
    assert met > 30


# --- coefficient-to-bound driver ----------------------------------------

def test_coefficient_bound_examples():
    r = coefficient_lower_bound(parse_poly("x2 - x1"), [[0, 1], [0, 1, 2]])
    assert (r.coefficient, r.bound) == (1, 3)
    r = coefficient_lower_bound(MultiPoly.constant(2, 1), [[0, 1, 2], [0, 1, 2, 3]])
    assert r.bound == 3 + 4 - 1
    # x1 - x2 on {0,1}^2: the target coefficient of x1^1 x2^1 in x1 - x2 is 0, so no bound
    r = coefficient_lower_bound(parse_poly("x1 - x2"), [[0, 1], [0, 1]])
    assert r.coefficient == 0 and r.bound is None


def test_coefficient_bound_guards():
    with pytest.raises(ValueError):
        coefficient_lower_bound(parse_poly("x1^3"), [[0, 1], [0, 1]])
    with pytest.raises(ValueError):
        coefficient_lower_bound(MultiPoly(2), [[0, 1], [0, 1]])
    with pytest.raises(ValueError):
        coefficient_lower_bound(parse_poly("x1"), [[0, 1]] * 3)


def _random_poly(rng, n):
    terms = {tuple(rng.randint(0, 2) for _ in range(n)): rng.randint(-3, 3) for _ in range(rng.randint(1, 4))}
    P = MultiPoly(n, terms)
    return P if not P.is_zero() else MultiPoly.constant(n, 1)


@pytest.mark.parametrize("ring", [Ring("rational"), Ring("prime", 101)])
def test_coefficient_bound_is_respected(ring):
    rng = random.Random(7)
    certified = 0
    for _ in range(200):
        n = rng.randint(1, 3)
        P = _random_poly(rng, n)
        sets = [rng.sample(range(-8, 9), rng.randint(1, 5)) for _ in range(n)]
        if P.degree > sum(len(A) - 1 for A in sets):
            continue
        coeffP = P if ring.kind == "rational" else P.map_coefficients(lambda c: ModP(c, ring.p))
        result = coefficient_lower_bound(coeffP, sets)
        if result.bound is None:
            continue
        certified += 1
        problem = SumsetProblem(ring, sets, [PolyNonzero(P)])
        assert len(enumerate_restricted_sumset(problem)) >= result.bound
    assert certified > 40
