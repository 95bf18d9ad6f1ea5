"""Lower bounds for restricted sumsets and checkers that compare them with enumeration."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import CounterexampleError
from .identities import difference_coefficient
from .matrix import permanent, roots_permanent_nonzero
from .multipoly import MultiPoly, poly_pow, power_sum_linear, product_coefficient
from .rings import Cyclotomic
from .star import coeff_via_star
from .sumsets import (
    PolyImageDistinct,
    DEFAULT_CAP,
    SumsetProblem,
    centered_residue,
    encode_element,
    enumerate_restricted_sumset,
)

RESULT_IDS = ("i", "ii", "iii", "iv", "v", "vi", "thm1.1", "thm1.2", "thm1.3")


def _cap_by_char(p, value):
    return value if p is None else min(p, value)


def bound_for(result_id: str, params: dict) -> int:
    """Claimed lower bound (for thm1.3, the threshold the size must exceed).

    ``p`` is the characteristic; omit it or pass None for characteristic zero.
    """
    p = params.get("p")
    if result_id == "i":
        k = params["k"]
        return _cap_by_char(p, sum(k) - len(k) + 1)
    if result_id == "ii":
        n, size = params["n"], params["size"]
        return _cap_by_char(p, n * size - n * n + 1)
    if result_id == "iii":
        k = params["k"]
        n = len(k)
        return _cap_by_char(p, sum(k) - n * (n + 1) // 2 + 1)
    if result_id == "iv":
        k, n, m = params["k"], params["n"], params["m"]
        return (k - 1 - m * (n - 1)) * n + 1
    if result_id == "v":
        k, m = params["k"], params["m"]
        n = len(k)
        return (k[-1] - 1) * n - (m + 1) * comb(n, 2) + 1
    if result_id == "vi":
        k, n, m = params["k"], params["n"], params["m"]
        return (k - 1) * n - (m + 1) * comb(n, 2) + 1
    if result_id in ("thm1.1", "thm1.2"):
        k, n, m = params["k"], params["n"], params["m"]
        return (k - 1 - m * (n - 1)) * n + 1
    if result_id == "thm1.3":
        k, n = params["k"], params["n"]
        return (k - n) * n
    raise ValueError(f"unknown result id {result_id!r}")


@dataclass
class BoundReport:
    result_id: str
    hypotheses_met: bool
    reasons: list
    claimed_bound: int
    actual_cardinality: int
    passed: bool
    strict: bool = False
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "result_id": self.result_id,
            "hypotheses_met": self.hypotheses_met,
            "reasons": list(self.reasons),
            "claimed_bound": str(self.claimed_bound),
            "comparison": ">" if self.strict else ">=",
            "actual_cardinality": str(self.actual_cardinality),
            "pass": self.passed,
            "details": self.details,
        }


def _gt(p, value) -> bool:
    """p > value, with p=None standing for characteristic zero."""
    return p is None or p > value


def _by_kind(problem):
    groups: dict = {}
    for c in problem.constraints:
        groups.setdefault(c.kind, []).append(c)
    return groups


def _only(groups, allowed, reasons):
    extra = sorted(set(groups) - set(allowed))
    if extra:
        reasons.append(f"constraint kinds {extra} are not part of this result")


def _hyp_i(problem, params, reasons):
    _only(_by_kind(problem), (), reasons)
    return {"k": problem.sizes, "p": problem.ring.characteristic}


def _hyp_ii(problem, params, reasons):
    groups = _by_kind(problem)
    _only(groups, ("pairwise_distinct",), reasons)
    if "pairwise_distinct" not in groups:
        reasons.append("missing pairwise_distinct constraint")
    if any(set(A) != set(problem.sets[0]) for A in problem.sets):
        reasons.append("sets must all equal A")
    return {"n": problem.n, "size": len(problem.sets[0]), "p": problem.ring.characteristic}


def _hyp_iii(problem, params, reasons):
    groups = _by_kind(problem)
    _only(groups, ("pairwise_distinct",), reasons)
    if "pairwise_distinct" not in groups:
        reasons.append("missing pairwise_distinct constraint")
    k = problem.sizes
    if any(a >= b for a, b in zip(k, k[1:])):
        reasons.append(f"sizes {k} are not strictly increasing")
    return {"k": k, "p": problem.ring.characteristic}


def _diff_sets(groups):
    out: dict = {}
    for c in groups.get("diff_avoid", []):
        out.setdefault((c.i, c.j), set()).update(c.S)
    return out


def _hyp_iv(problem, params, reasons):
    groups = _by_kind(problem)
    _only(groups, ("diff_avoid",), reasons)
    n, p = problem.n, problem.ring.characteristic
    m = params.get("m")
    if not isinstance(m, int) or m < 0:
        raise ValueError("result iv needs integer parameter m >= 0")
    k = problem.sizes[0]
    if any(s != k for s in problem.sizes):
        reasons.append("sets must have equal size")
    for (i, j), S in _diff_sets(groups).items():
        if len(S) > m:
            reasons.append(f"|S_{i}{j}| = {len(S)} exceeds m = {m}")
    l = k - 1 - m * (n - 1)
    if not _gt(p, max(l * n, m * n)):
        reasons.append(f"need p > max(ln, mn) = {max(l * n, m * n)}")
    return {"k": k, "n": n, "m": m}


def _poly_degree_and_leads(c: PolyImageDistinct, ring):
    ups = c.upolys(ring)
    return [u.degree for u in ups], [u.coeffs[-1] if u.coeffs else 0 for u in ups]


def _hyp_v(problem, params, reasons):
    groups = _by_kind(problem)
    _only(groups, ("poly_image_distinct",), reasons)
    p, n, k = problem.ring.characteristic, problem.n, problem.sizes
    pid = groups.get("poly_image_distinct", [])
    m = 0
    if len(pid) != 1:
        reasons.append("need exactly one poly_image_distinct constraint")
    else:
        degrees, leads = _poly_degree_and_leads(pid[0], problem.ring)
        m = degrees[0]
        if m <= 0 or any(d != m for d in degrees):
            reasons.append(f"polynomials must share a positive degree, got {degrees}")
        if any(c != 1 for c in leads):
            reasons.append("polynomials must be monic")
    if any(b - a not in (0, 1) for a, b in zip(k, k[1:])):
        reasons.append(f"size steps of {k} must be 0 or 1")
    if not k[-1] > m * (n - 1):
        reasons.append(f"need k_n > m(n-1) = {m * (n - 1)}")
    K = (k[-1] - 1) * n - (m + 1) * comb(n, 2)
    if not _gt(p, K):
        reasons.append(f"need p > K = {K}")
    return {"k": k, "m": m}


def _hyp_vi(problem, params, reasons):
    groups = _by_kind(problem)
    _only(groups, ("poly_image_distinct", "pairwise_distinct"), reasons)
    p, n = problem.ring.characteristic, problem.n
    k = problem.sizes[0]
    if any(s != k for s in problem.sizes):
        reasons.append("sets must have equal size")
    if "pairwise_distinct" not in groups:
        reasons.append("missing pairwise_distinct constraint")
    pid = groups.get("poly_image_distinct", [])
    m = 0
    if len(pid) != 1:
        reasons.append("need exactly one poly_image_distinct constraint")
    else:
        degrees, leads = _poly_degree_and_leads(pid[0], problem.ring)
        m = degrees[0]
        if m <= 0 or any(d != m for d in degrees):
            reasons.append(f"polynomials must share a positive degree, got {degrees}")
        per = permanent([[b**i if i else 1 for b in leads] for i in range(n)])
        if per == 0:
            reasons.append("permanent of (b_j^(i-1)) vanishes")
    if not k > m * (n - 1):
        reasons.append(f"need k > m(n-1) = {m * (n - 1)}")
    K = (k - 1) * n - (m + 1) * comb(n, 2)
    if not _gt(p, K):
        reasons.append(f"need K = {K} < p")
    return {"k": k, "n": n, "m": m}


def _require_m(params, low=1):
    m = params.get("m")
    if isinstance(m, bool) or not isinstance(m, int) or m < low:
        raise ValueError(f"parameter m must be an integer >= {low}")
    return m


def _hyp_thm11(problem, params, reasons, details):
    groups = _by_kind(problem)
    _only(groups, ("diff_avoid",), reasons)
    m = _require_m(params)
    p, n, sizes = problem.ring.characteristic, problem.n, problem.sizes
    k = sizes[-1]
    if any(b != a + 1 for a, b in zip(sizes, sizes[1:])):
        reasons.append(f"need |A_(i+1)| = |A_i| + 1, got sizes {sizes}")
    for c in groups.get("diff_avoid", []):
        if c.i >= c.j:
            reasons.append(f"diff_avoid ({c.i}, {c.j}) must have i < j")
    for (i, j), S in _diff_sets(groups).items():
        if len(S) >= 2 * m:
            reasons.append(f"|S_{i}{j}| = {len(S)} is not < 2m = {2 * m}")
    threshold = max(m * n, (k - 1) * n - m * n * (n - 1))
    if not _gt(p, threshold):
        reasons.append(f"need p > max(mn, (k-1)n - mn(n-1)) = {threshold}")
    l = k - 1 - m * (n - 1)
    if n >= 2 and l >= 0:
        h = difference_coefficient(n, m, k)
        details["h"] = str(h)
        if p is not None and Fraction(h).numerator % p == 0:
            reasons.append(f"p = {p} divides h = {h}")
    return {"k": k, "n": n, "m": m}


def _hyp_thm12(problem, params, reasons, details):
    groups = _by_kind(problem)
    _only(groups, ("diff_avoid", "scaled_distinct"), reasons)
    m = _require_m(params)
    ring, n = problem.ring, problem.n
    k = problem.sizes[0]
    if ring.kind != "cyclotomic" or ring.q % 2 == 0:
        reasons.append("ring must be ℚ(ζ_q) with q odd")
    if any(s != k for s in problem.sizes):
        reasons.append("sets must have equal size k")
    if any(isinstance(a, Cyclotomic) and not a.is_rational() for A in problem.sets for a in A):
        reasons.append("set elements must be rationals")
    for c in groups.get("diff_avoid", []):
        if c.i >= c.j:
            reasons.append(f"diff_avoid ({c.i}, {c.j}) must have i < j")
    for (i, j), S in _diff_sets(groups).items():
        if len(S) > 2 * m - 1:
            reasons.append(f"|S_{i}{j}| = {len(S)} exceeds 2m - 1 = {2 * m - 1}")
    scaled = groups.get("scaled_distinct", [])
    if len(scaled) != 1 or scaled[0].zeta_exps is None:
        reasons.append("need exactly one scaled_distinct constraint given by zeta exponents")
    elif ring.kind == "cyclotomic" and ring.q % 2 == 1:
        exps = scaled[0].zeta_exps
        if len({e % ring.q for e in exps}) != len(exps):
            reasons.append("roots of unity must be distinct")
        else:
            res = roots_permanent_nonzero(ring.q, exps)
            details["roots_permanent"] = encode_element(res["value"])
            details["roots_permanent_nonzero"] = res["nonzero"]
            if not res["nonzero"]:
                reasons.append("permanent of root powers vanishes")
    return {"k": k, "n": n, "m": m}


def _hyp_thm13(problem, params, reasons, details):
    groups = _by_kind(problem)
    _only(groups, ("scaled_distinct", "congruence"), reasons)
    ring, n = problem.ring, problem.n
    k = problem.sizes[0]
    if ring.kind != "rational" or any(Fraction(a).denominator != 1 for A in problem.sets for a in A):
        reasons.append("sets must be sets of integers")
    if any(s != k for s in problem.sizes):
        reasons.append("sets must have equal size k")
    for c in groups.get("scaled_distinct", []):
        if c.alphas is None or any(Fraction(a) <= 0 for a in c.alphas):
            reasons.append("alphas must be positive")
    b_vectors = {c.b for c in groups.get("congruence", [])}
    if len(b_vectors) > 1:
        reasons.append("congruence constraints disagree on b")
    residues = {}
    integral = ring.kind == "rational" and all(Fraction(a).denominator == 1 for A in problem.sets for a in A)
    for c in groups.get("congruence", []) if integral else []:
        A_i, A_j = problem.sets[c.i - 1], problem.sets[c.j - 1]
        spread = max(abs(x - y) for x in A_i for y in A_j)
        if not c.modulus > 2 * spread:
            reasons.append(f"m_{c.i}{c.j} = {c.modulus} is not > 2*{spread}")
        residues[f"{c.i},{c.j}"] = centered_residue(c.b[c.i - 1] - c.b[c.j - 1], c.modulus)
    details["r"] = residues
    return {"k": k, "n": n}


_HYPOTHESES = {
    "i": _hyp_i,
    "ii": _hyp_ii,
    "iii": _hyp_iii,
    "iv": _hyp_iv,
    "v": _hyp_v,
    "vi": _hyp_vi,
}
_THEOREMS = {"thm1.1": _hyp_thm11, "thm1.2": _hyp_thm12, "thm1.3": _hyp_thm13}


def check_bound(
    problem: SumsetProblem,
    result_id: str,
    params: dict | None = None,
    strict: bool = False,
    cap: int = DEFAULT_CAP,
) -> BoundReport:
    """Check the hypotheses of ``result_id`` on ``problem`` and compare the
    enumerated cardinality with the claimed bound.

    With ``strict=True`` a failure under met hypotheses raises
    CounterexampleError carrying the full problem as a dump.
    """
    params = dict(params or {})
    reasons: list = []
    details: dict = {}
    if result_id in _HYPOTHESES:
        bound_params = _HYPOTHESES[result_id](problem, params, reasons)
    elif result_id in _THEOREMS:
        bound_params = _THEOREMS[result_id](problem, params, reasons, details)
    else:
        raise ValueError(f"unknown result id {result_id!r}")
    claimed = bound_for(result_id, bound_params)
    actual = len(enumerate_restricted_sumset(problem, cap=cap))
    is_strict = result_id == "thm1.3"
    holds = actual > claimed if is_strict else actual >= claimed
    met = not reasons
    report = BoundReport(result_id, met, reasons, claimed, actual, met and holds, is_strict, details)
    if strict and met and not holds:
        raise CounterexampleError(
            f"{result_id}: |sumset| = {actual} but bound is {claimed}",
            dump={"problem": problem.to_json(), "report": report.to_json(), "params": params},
        )
    return report


@dataclass
class CoefficientBound:
    bound: int | None
    coefficient: object


def coefficient_lower_bound(P: MultiPoly, sets: Sequence[Sequence]) -> CoefficientBound:
    """Coefficient of ∏x_i^{k_i-1} in P·(Σx)^{Σ(k_i-1) - deg P} and the bound it certifies."""
    if P.arity != len(sets):
        raise ValueError("arity of P must equal the number of sets")
    if P.is_zero():
        raise ValueError("P must be nonzero")
    target = [len(A) - 1 for A in sets]
    D = sum(target) - P.degree
    if D < 0:
        raise ValueError(f"deg P = {P.degree} exceeds Σ(k_i - 1) = {sum(target)}")
    if P.is_homogeneous():
        coeff = coeff_via_star(P, target)
    else:
        coeff = product_coefficient(P, poly_pow(power_sum_linear(P.arity), D), target)
    return CoefficientBound(D + 1 if coeff != 0 else None, coeff)
