"""The acceptance suite: every check is exact, failures carry a reproducible dump."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

from .bounds import check_bound
from .errors import CounterexampleError
from .identities import IDENTITY_IDS, closed_form, verify_identity
from .matrix import determinant, determinant_naive, permanent, permanent_naive, roots_permanent_nonzero
from .multipoly import (
    MultiPoly,
    build_difference_product,
    coefficient_of,
    poly_mul,
    poly_pow,
    power_sum_linear,
)
from .permutations import (
    check_hall,
    check_parker,
    check_snevily,
    hall_permutation,
    parker_decomposition,
    snevily_permutation,
)
from .rings import Cyclotomic, ModP
from .star import coeff_via_star, star_diagonal
from .sumsets import (
    Congruence,
    DiffAvoid,
    PairwiseDistinct,
    Ring,
    ScaledDistinct,
    SumsetProblem,
)
from .upoly import UPoly


@dataclass
class CriterionResult:
    id: str
    title: str
    passed: bool = True
    checks: int = 0
    elapsed: float = 0.0
    failures: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def fail(self, what):
        self.passed = False
        if len(self.failures) < 20:
            self.failures.append(what)

    def to_json(self):
        return {
            "criterion": self.id,
            "title": self.title,
            "status": "pass" if self.passed else "fail",
            "checks": self.checks,
            "elapsed_s": f"{self.elapsed:.2f}",
            "failures": self.failures,
            "notes": self.notes,
        }


def _rand_fraction(rng, lo=-5, hi=5, den=4):
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def _rand_gaussian(rng):
    # element of ℚ(i) = ℚ(ζ_4)
    return Cyclotomic(4, [_rand_fraction(rng), _rand_fraction(rng)])


def _encode(v):
    if isinstance(v, Cyclotomic):
        return {"q": v.q, "coords": [str(c) for c in v.coords]}
    if isinstance(v, Fraction):
        return str(v)
    return v


def identity_cases(rng, max_n=4):
    """Parameter sets covering the identity criterion."""
    for n in range(1, max_n + 1):
        for _ in range(20):
            m = [rng.randint(0, 5) for _ in range(n)]
            A = [[_encode(_rand_fraction(rng)) for _ in range(n)] for _ in range(n)]
            yield "eq2.2", {"n": n, "m": m, "A": A, "delta": rng.randint(0, 1)}
            yield "eq2.3", {"n": n, "m": m}
        for m in range(0, 3):
            yield "eq2.4", {"n": n, "m": m}
        for m in (1, 2):
            yield "eq2.5", {"n": n, "m": m}
            yield "hs3.1", {"n": n, "m": m}
            yield "eq2.8", {"n": n, "m": m}
            for _ in range(3):
                yield "eq2.6", {"n": n, "m": m, "a": [_encode(_rand_fraction(rng)) for _ in range(n)]}
            for k in range(m * (n - 1) + 1, 10):
                yield "eq2.7", {"n": n, "m": m, "k": k}
        for m in itertools.product(range(3), repeat=n):
            yield "dyson", {"n": n, "m": list(m)}
    for n in range(1, min(max_n, 3) + 1):
        for P in ("1", "vandermonde", "vandermonde^2"):
            for _ in range(3):
                A = [[_encode(_rand_gaussian(rng)) for _ in range(n)] for _ in range(n)]
                m = [rng.randint(0, 3) for _ in range(n)]
                yield "thm2.1", {"n": n, "m": m, "A": A, "P": P}


def criterion_identities(seed=0, max_n=4):
    res = CriterionResult("1", "identity suite against expansion oracles")
    rng = random.Random(seed)
    counts = dict.fromkeys(IDENTITY_IDS, 0)
    for identity, params in identity_cases(rng, max_n):
        report = verify_identity(identity, params)
        res.checks += 1
        counts[identity] += 1
        if not report.passed:
            res.fail({"id": identity, "params": params, "lhs": str(report.lhs), "rhs": str(report.rhs)})
    res.notes["per_identity"] = counts
    return res


def random_homogeneous(rng, n, deg, max_terms=8):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        cuts = sorted(rng.randint(0, deg) for _ in range(n - 1))
        mono = tuple(b - a for a, b in zip([0] + cuts, cuts + [deg]))
        terms[mono] = rng.randint(-5, 5)
    P = MultiPoly(n, terms)
    return P if not P.is_zero() else MultiPoly.monomial((deg,) + (0,) * (n - 1), 1)


def criterion_lemma21(seed=0, max_n=4, trials=200):
    res = CriterionResult("2", "coefficient via star transform equals direct expansion")
    rng = random.Random(seed + 1)
    for _ in range(trials):
        n = rng.randint(1, max_n)
        deg = rng.randint(0, 6)
        P = random_homogeneous(rng, n, deg)
        extra = rng.randint(0, 4)
        cuts = sorted(rng.randint(0, deg + extra) for _ in range(n - 1))
        k = [b - a for a, b in zip([0] + cuts, cuts + [deg + extra])]
        via_star = coeff_via_star(P, k)
        direct = coefficient_of(poly_mul(P, poly_pow(power_sum_linear(n), sum(k) - deg)), k)
        res.checks += 1
        if via_star != direct:
            res.fail({"P": P.render(), "k": k, "star": str(via_star), "direct": str(direct)})
    return res


def criterion_spot_values(seed=0, max_n=4):
    res = CriterionResult("3", "spot values of the closed forms")
    x = UPoly.x()
    spots = [
        ("eq2.8", {"n": 2, "m": 2}, -3, coefficient_of(build_difference_product(2, 3), (1, 2))),
        ("dyson", {"n": 2, "m": [1, 1]}, -2, coefficient_of(poly_pow(build_difference_product(2, 1), 2), (1, 1))),
        ("hs3.1", {"n": 2, "m": 1}, x * -2, star_diagonal(build_difference_product(2, 2))),
    ]
    for identity, params, expected, oracle in spots:
        value = closed_form(identity, params)
        res.checks += 1
        if not (value == expected and oracle == expected):
            res.fail({"id": identity, "closed_form": str(value), "oracle": str(oracle), "expected": str(expected)})
    return res


# --- sumset bound suites -----------------------------------------------------

def _random_subset(rng, pool, size):
    return rng.sample(pool, size)


def _run_bound(res, problem, result_id, params=None):
    try:
        report = check_bound(problem, result_id, params, strict=True)
    except CounterexampleError as exc:
        res.fail({"counterexample": exc.dump})
        return None
    res.checks += 1
    res.notes.setdefault("met", {}).setdefault(result_id, 0)
    if report.hypotheses_met:
        res.notes["met"][result_id] += 1
    return report


def sumset_suite_i(res, rng):
    for p in (3, 5, 7):
        for n in (1, 2, 3):
            for k in itertools.combinations_with_replacement(range(1, p + 1), n):
                if prod(k) > 500:
                    continue
                sets = [_random_subset(rng, list(range(p)), ki) for ki in k]
                _run_bound(res, SumsetProblem(Ring("prime", p), sets), "i")


def sumset_suite_ii(res, rng):
    for p in (5, 7, 11):
        for n in (2, 3):
            for size in range(1, 5):
                for A in itertools.combinations(range(p), size):
                    problem = SumsetProblem(Ring("prime", p), [list(A)] * n, [PairwiseDistinct()])
                    _run_bound(res, problem, "ii")


def sumset_suite_iii(res, rng):
    for p in (7, 11):
        for n in (2, 3):
            for _ in range(100):
                k = sorted(rng.sample(range(1, p + 1), n))
                sets = [_random_subset(rng, list(range(p)), ki) for ki in k]
                _run_bound(res, SumsetProblem(Ring("prime", p), sets, [PairwiseDistinct()]), "iii")


def sumset_suite_thm11(res, rng, m=1):
    for p in (7, 11, 13):
        for n in (2, 3):
            for k in range(n, p + 1):
                if not p > max(m * n, (k - 1) * n - m * n * (n - 1)):
                    continue
                for _ in range(50):
                    sets = [_random_subset(rng, list(range(p)), k - n + 1 + i) for i in range(n)]
                    constraints = []
                    for i in range(1, n + 1):
                        for j in range(i + 1, n + 1):
                            size = rng.randint(0, 2 * m - 1)
                            constraints.append(DiffAvoid(i, j, tuple(rng.sample(range(p), size))))
                    _run_bound(res, SumsetProblem(Ring("prime", p), sets, constraints), "thm1.1", {"m": m})


def _random_rationals(rng, size):
    pool = {Fraction(a, b) for a in range(-6, 7) for b in (1, 2, 3)}
    return rng.sample(sorted(pool), size)


def sumset_suite_thm12(res, rng, m=1):
    permanent_ok = {}
    for q in (3, 5, 7, 9):
        for n in (2, 3):
            for exps in itertools.permutations(range(q), n):
                key = (q, tuple(sorted(exps)))
                if key not in permanent_ok:
                    permanent_ok[key] = roots_permanent_nonzero(q, exps)["nonzero"]
                    if not permanent_ok[key]:
                        res.fail({"roots_permanent_zero": {"q": q, "exps": list(exps)}})
                for k in range(1, 5):
                    sets = [_random_rationals(rng, k) for _ in range(n)]
                    constraints = [ScaledDistinct(zeta_exps=exps)]
                    for i in range(1, n + 1):
                        for j in range(i + 1, n + 1):
                            if rng.random() < 0.7:
                                a, b = rng.choice(sets[i - 1]), rng.choice(sets[j - 1])
                                constraints.append(DiffAvoid(i, j, (a - b,)))
                    problem = SumsetProblem(Ring("cyclotomic", q=q), sets, constraints)
                    report = _run_bound(res, problem, "thm1.2", {"m": m})
                    if report is not None and not report.details.get("roots_permanent_nonzero", False):
                        res.fail({"thm1.2_permanent": report.to_json()})
    res.notes["root_choices"] = len(permanent_ok)


def sumset_suite_thm13(res, rng, trials=100):
    for _ in range(trials):
        n = rng.randint(1, 3)
        k = rng.randint(1, 5)
        sets = [rng.sample(range(-6, 7), k) for _ in range(n)]
        alphas = tuple(Fraction(rng.randint(1, 6), rng.randint(1, 3)) for _ in range(n))
        b = tuple(rng.randint(-10, 10) for _ in range(n))
        constraints = [ScaledDistinct(alphas=alphas)]
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                spread = max(abs(x - y) for x in sets[i - 1] for y in sets[j - 1])
                constraints.append(Congruence(i, j, 2 * spread + 1, b))
        _run_bound(res, SumsetProblem(Ring("rational"), sets, constraints), "thm1.3")


def criterion_sumsets(seed=0, max_n=4):
    res = CriterionResult("4", "restricted-sumset lower bounds by exhaustive enumeration")
    rng = random.Random(seed + 2)
    for suite in (sumset_suite_i, sumset_suite_ii, sumset_suite_iii, sumset_suite_thm11, sumset_suite_thm12, sumset_suite_thm13):
        suite(res, rng)
    for rid, met in res.notes.get("met", {}).items():
        if met == 0:
            res.fail({"no_instance_met_hypotheses": rid})
    return res


def criterion_permutations(seed=0, max_n=4):
    res = CriterionResult("5", "Snevily (m <= 7), Hall (n <= 6) and Parker (n <= 6) searches")
    for m in range(1, 8):
        for n in range(1, (m + 1) // 2 + 1):
            for b in itertools.product(range(m), repeat=n):
                sigma = snevily_permutation(m, n, b)
                res.checks += 1
                if sigma is None or not check_snevily(m, b, sigma):
                    res.fail({"snevily": {"m": m, "b": list(b)}})
    for n in range(1, 7):
        a = list(range(n))
        for b in itertools.product(range(n), repeat=n):
            if sum(b) % n:
                continue
            sigma = hall_permutation(n, a, b)
            res.checks += 1
            if sigma is None or not check_hall(n, a, b, sigma):
                res.fail({"hall": {"n": n, "b": list(b)}})
    for n in range(2, 7):
        for head in itertools.product(range(n), repeat=n - 2):
            b = list(head) + [-sum(head) % n, 0]
            res.checks += 1
            try:
                sigma_p, tau = parker_decomposition(n, b)
            except RuntimeError:
                res.fail({"parker": {"n": n, "b": b}})
                continue
            if not check_parker(n, b, sigma_p, tau):
                res.fail({"parker": {"n": n, "b": b}})
    return res


def criterion_matrices(seed=0, max_n=4):
    res = CriterionResult("6", "Ryser and Bareiss against naive expansion; root permanents")
    rng = random.Random(seed + 3)
    for ring in ("rational", "mod7"):
        for _ in range(100):
            n = rng.randint(1, 6)
            if ring == "rational":
                M = [[_rand_fraction(rng) for _ in range(n)] for _ in range(n)]
            else:
                M = [[ModP(rng.randint(0, 6), 7) for _ in range(n)] for _ in range(n)]
            res.checks += 1
            if permanent(M) != permanent_naive(M) or determinant(M) != determinant_naive(M):
                res.fail({"ring": ring, "matrix": [[str(e) for e in r] for r in M]})
    for q in (3, 5, 7, 9):
        for n in (1, 2, 3):
            for exps in itertools.permutations(range(q), n):
                res.checks += 1
                if not roots_permanent_nonzero(q, exps)["nonzero"]:
                    res.fail({"q": q, "exps": list(exps)})
    return res


def criterion_cli(seed=0, max_n=4):
    import json
    import os
    import tempfile

    from .cli import run_command

    res = CriterionResult("7", "CLI round trip")
    doc = {
        "ring": {"kind": "rational"},
        "sets": [[0, 1, 2], [0, 1, 2]],
        "constraints": [
            {"kind": "scaled_distinct", "alpha": [1, 1]},
            {"kind": "congruence", "i": 1, "j": 2, "m": 5, "b": [0, 0]},
        ],
    }
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "thm13.json")
        with open(path, "w") as fh:
            json.dump(doc, fh)
        runs = [
            ["identity", "--id", "dyson", "--params", '{"n":2,"m":[1,1]}'],
            ["sumset", "--config", path, "--check", "thm1.3"],
            ["perm", "--snevily", "--m", "5", "--n", "3", "--b", "0,0,0"],
            ["coeff", "--poly", "x2 - x1", "--k", "1,2"],
            ["star", "--poly", "x2^2 - 2*x1*x2 + x1^2", "--at", "4,4"],
        ]
        for argv in runs:
            code, report = run_command(argv, emit=False)
            res.checks += 1
            if code != 0 or report["status"] != "pass":
                res.fail({"argv": argv, "exit": code, "report": report})
    return res


CRITERIA = (
    criterion_identities,
    criterion_lemma21,
    criterion_spot_values,
    criterion_sumsets,
    criterion_permutations,
    criterion_matrices,
    criterion_cli,
)


def run_suite(seed=0, max_n=4, only=None, progress=None):
    results = []
    for fn in CRITERIA:
        start = time.perf_counter()
        res = fn(seed=seed, max_n=max_n)
        res.elapsed = time.perf_counter() - start
        if only is None or res.id in only:
            results.append(res)
        if progress:
            progress(res)
    return results
