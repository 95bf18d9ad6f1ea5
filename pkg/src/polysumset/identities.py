"""Closed-form coefficient identities for difference products, each paired
with a brute-force expansion oracle.

Identity ids and their parameter schemas (all integers unless noted):

=========  ==============================================================
eq2.2      n, m (list of n), A (n×n matrix), delta (0 or 1)
eq2.3      n, m (list of n)
eq2.4      n, m
eq2.5      n, m >= 1
eq2.6      n, m >= 1, a (list of n scalars)
eq2.7      n, m >= 1, k > m(n-1)
eq2.8      n, m >= 1
hs3.1      n, m >= 1
thm2.1     n, A (n×n matrix), m (list of n), P ("1", "vandermonde",
           "vandermonde^2" or polynomial text)
dyson      n, m (list of n)
=========  ==============================================================

Scalars may be ints, ``"num/den"`` strings, Fractions, ring elements, or
``{"q": q, "coords": [...]}`` for elements of ℚ(ζ_q).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, prod
from typing import Any, Mapping

from .errors import CapExceeded, HypothesisNotMet
from .matrix import determinant, monomial_matrix_det, permanent
from .multipoly import (
    MultiPoly,
    build_difference_product,
    coefficient_of,
    gens,
    parse_poly,
    poly_pow,
    power_sum_linear,
    product_coefficient,
    symmetry_signature,
)
from .rings import Cyclotomic, ModP
from .star import falling_factorial, star_diagonal, star_shifted_diagonal
from .upoly import UPoly

IDENTITY_IDS = ("eq2.2", "eq2.3", "eq2.4", "eq2.5", "eq2.6", "eq2.7", "eq2.8", "hs3.1", "thm2.1", "dyson")

DEFAULT_DEGREE_CAP = 48


def decode_scalar(value):
    if isinstance(value, bool):
        raise ValueError(f"bad scalar {value!r}")
    if isinstance(value, (int, Fraction, ModP, Cyclotomic)):
        return value
    if isinstance(value, str):
        try:
            f = Fraction(value.strip())
        except ValueError:
            raise ValueError(f"bad rational {value!r}") from None
        return f.numerator if f.denominator == 1 else f
    if isinstance(value, Mapping) and "q" in value and "coords" in value:
        return Cyclotomic(int(value["q"]), [decode_scalar(c) for c in value["coords"]])
    raise ValueError(f"bad scalar {value!r}")


def _int(params, key, low=None):
    if key not in params:
        raise ValueError(f"missing parameter {key!r}")
    v = params[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValueError(f"parameter {key!r} must be an integer")
    if low is not None and v < low:
        raise HypothesisNotMet(f"parameter {key}={v} must be >= {low}")
    return v


def _int_list(params, key, n):
    v = params.get(key)
    if not isinstance(v, (list, tuple)) or len(v) != n:
        raise ValueError(f"parameter {key!r} must be a list of length {n}")
    if any(isinstance(x, bool) or not isinstance(x, int) for x in v):
        raise ValueError(f"parameter {key!r} must contain integers")
    if any(x < 0 for x in v):
        raise HypothesisNotMet(f"entries of {key!r} must be nonnegative")
    return [int(x) for x in v]


def _matrix(params, key, n):
    v = params.get(key)
    if not isinstance(v, (list, tuple)) or len(v) != n or any(
        not isinstance(r, (list, tuple)) or len(r) != n for r in v
    ):
        raise ValueError(f"parameter {key!r} must be an {n}x{n} matrix")
    return [[decode_scalar(e) for e in r] for r in v]


def _weight_poly(value, n) -> MultiPoly:
    if value in (None, "1", 1):
        return MultiPoly.constant(n, 1)
    if value == "vandermonde":
        return build_difference_product(n, 1)
    if value == "vandermonde^2":
        return build_difference_product(n, 2)
    if isinstance(value, MultiPoly):
        if value.arity != n:
            raise ValueError("P has the wrong arity")
        return value
    if isinstance(value, str):
        return parse_poly(value, n)
    raise ValueError(f"bad polynomial {value!r}")


def normalize_params(identity: str, params: Mapping[str, Any]) -> dict:
    """Validate and decode a parameter mapping for ``identity``."""
    if identity not in IDENTITY_IDS:
        raise ValueError(f"unknown identity id {identity!r}")
    n = _int(params, "n", 1)
    out: dict = {"n": n}
    if identity in ("eq2.2", "eq2.3", "thm2.1", "dyson"):
        out["m"] = _int_list(params, "m", n)
    elif identity == "eq2.4":
        out["m"] = _int(params, "m", 0)
    else:
        out["m"] = _int(params, "m", 1)
    if identity == "eq2.2":
        out["A"] = _matrix(params, "A", n)
        delta = _int(params, "delta")
        if delta not in (0, 1):
            raise HypothesisNotMet("delta must be 0 or 1")
        out["delta"] = delta
    elif identity == "eq2.6":
        a = params.get("a")
        if not isinstance(a, (list, tuple)) or len(a) != n:
            raise ValueError(f"parameter 'a' must be a list of length {n}")
        out["a"] = [decode_scalar(x) for x in a]
    elif identity == "eq2.7":
        k = _int(params, "k", 1)
        if k <= out["m"] * (n - 1):
            raise HypothesisNotMet(f"need k > m(n-1) = {out['m'] * (n - 1)}, got k={k}")
        out["k"] = k
    elif identity == "thm2.1":
        out["A"] = _matrix(params, "A", n)
        P = _weight_poly(params.get("P"), n)
        if not P.is_homogeneous():
            raise HypothesisNotMet("P must be homogeneous")
        sig = symmetry_signature(P)
        if sig == "neither":
            raise HypothesisNotMet("P must be symmetric or antisymmetric")
        out["P"] = P
        out["signature"] = sig
    return out


def expanded_degree(identity: str, p: Mapping) -> int:
    n, m = p["n"], p["m"]
    pairs = comb(n, 2)
    if identity == "eq2.2":
        return sum(m) + p["delta"] * pairs
    if identity == "eq2.3":
        return sum(m)
    if identity == "eq2.4":
        return m * pairs
    if identity in ("eq2.5", "eq2.8"):
        return (2 * m - 1) * pairs
    if identity in ("eq2.6", "hs3.1"):
        return 2 * m * pairs
    if identity == "eq2.7":
        return (p["k"] - 1) * n - m * n * (n - 1) + (2 * m - 1) * pairs
    if identity == "thm2.1":
        return sum(m) + max(p["P"].degree, 0)
    return (n - 1) * sum(m)


# --- shared closed-form pieces -------------------------------------------

def factorial_ratio(n: int, m: int) -> Fraction:
    """m!(2m)!...(nm)! / ((m!)^n n!)."""
    return Fraction(prod(factorial(r * m) for r in range(1, n + 1)), factorial(m) ** n * factorial(n))


def _falling_product(orders) -> UPoly:
    out = UPoly((1,))
    for s in orders:
        out = out * falling_factorial(s)
    return out


def _staircase_quotient(n: int, m: int) -> UPoly:
    """(x)_0 (x)_m ... (x)_{(n-1)m} / ((x)_0 (x)_1 ... (x)_{n-1}), exact."""
    return _falling_product(r * m for r in range(n)).exact_div(_falling_product(range(n)))


def _scalar(value):
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


# --- right-hand sides ------------------------------------------------------

def _rhs_eq22(p):
    n, m, A = p["n"], p["m"], p["A"]
    if p["delta"] == 0:
        scalar = determinant(A)
    else:
        scalar = permanent(A) * prod(m[i] - m[j] for i in range(n) for j in range(i + 1, n))
    return _falling_product(m) * scalar


def _rhs_eq23(p):
    n, m = p["n"], p["m"]
    const = prod(m[j] - m[i] for i in range(n) for j in range(i + 1, n))
    return (_falling_product(m) * const).exact_div(_falling_product(range(n)))


def _rhs_eq24(p):
    n, m = p["n"], p["m"]
    const = prod(factorial(r) for r in range(1, n)) * m ** (n * (n - 1) // 2)
    if const == 0:
        # m = 0 with n > 1: the quotient is not a polynomial but the product vanishes
        return UPoly(())
    return _staircase_quotient(n, m) * const


def _rhs_eq25(p):
    n, m = p["n"], p["m"]
    const = _scalar(_sign((m - 1) * comb(n, 2)) * factorial_ratio(n, m))
    return _staircase_quotient(n, m) * const


def _rhs_eq26(p):
    n, m, a = p["n"], p["m"], p["a"]
    per = permanent([[a[j] ** i if i else 1 for j in range(n)] for i in range(n)])
    const = _scalar(_sign(m * comb(n, 2)) * factorial_ratio(n, m))
    return _falling_product(r * m for r in range(n)) * const * per


def difference_coefficient(n: int, m: int, k: int):
    """Signed closed form for [x_1^{k-n}...x_n^{k-1}] (Σx)^{(k-1)n-mn(n-1)} ∏(x_j-x_i)^{2m-1}."""
    l = k - 1 - m * (n - 1)
    if l < 0:
        raise HypothesisNotMet(f"need k > m(n-1) = {m * (n - 1)}")
    value = _sign((m - 1) * comb(n, 2)) * factorial_ratio(n, m)
    value *= Fraction(factorial(l * n), prod(factorial(k - 1 - r * m) for r in range(n)))
    return _scalar(value)


def _rhs_eq27(p):
    return difference_coefficient(p["n"], p["m"], p["k"])


def _rhs_eq28(p):
    n, m = p["n"], p["m"]
    return _scalar(_sign((m - 1) * comb(n, 2)) * Fraction(factorial(m * n), factorial(m) ** n * factorial(n)))


def _rhs_hs31(p):
    n, m = p["n"], p["m"]
    const = _scalar(_sign(m * comb(n, 2)) * factorial_ratio(n, m) * factorial(n))
    return _falling_product(r * m for r in range(n)) * const


def _rhs_thm21(p):
    m, A, P = p["m"], p["A"], p["P"]
    scalar = determinant(A) if p["signature"] == "symmetric" else permanent(A)
    return star_shifted_diagonal(P, m) * _falling_product(m) * scalar


def _rhs_dyson(p):
    m = p["m"]
    total = factorial(sum(m)) // prod(factorial(v) for v in m)
    return _sign(sum(j * v for j, v in enumerate(m))) * total


# --- left-hand sides by expansion -------------------------------------------

def _shifts_down(n):
    return [n - 1 - i for i in range(n)]


def _lhs_eq22(p):
    f = monomial_matrix_det(p["A"], p["m"])
    if p["delta"]:
        f = f * build_difference_product(p["n"], 1)
    return star_diagonal(f)


def _lhs_eq23(p):
    n = p["n"]
    ones = [[1] * n for _ in range(n)]
    return star_shifted_diagonal(monomial_matrix_det(ones, p["m"]), _shifts_down(n))


def _lhs_eq24(p):
    n, m = p["n"], p["m"]
    xs = gens(n)
    P = MultiPoly.constant(n, 1)
    for j in range(n):
        for i in range(j):
            P = P * (xs[j] ** m - xs[i] ** m)
    return star_shifted_diagonal(P, _shifts_down(n))


def _lhs_eq25(p):
    n = p["n"]
    return star_shifted_diagonal(build_difference_product(n, 2 * p["m"] - 1), _shifts_down(n))


def _lhs_eq26(p):
    n, a = p["n"], p["a"]
    xs = gens(n)
    P = build_difference_product(n, 2 * p["m"] - 1)
    for j in range(n):
        for i in range(j):
            P = P * (xs[j] * a[j] - xs[i] * a[i])
    return star_diagonal(P)


def _lhs_eq27(p):
    n, m, k = p["n"], p["m"], p["k"]
    K = (k - 1) * n - m * n * (n - 1)
    target = [k - n + i for i in range(n)]
    return product_coefficient(build_difference_product(n, 2 * m - 1), poly_pow(power_sum_linear(n), K), target)


def _lhs_eq28(p):
    n, m = p["n"], p["m"]
    target = [(m - 1) * (n - 1) + i for i in range(n)]
    return coefficient_of(build_difference_product(n, 2 * m - 1), target)


def _lhs_hs31(p):
    return star_diagonal(build_difference_product(p["n"], 2 * p["m"]))


def _lhs_thm21(p):
    return star_diagonal(monomial_matrix_det(p["A"], p["m"]) * p["P"])


def _lhs_dyson(p):
    n, m = p["n"], p["m"]
    xs = gens(n)
    P = MultiPoly.constant(n, 1)
    for i in range(n):
        for j in range(i + 1, n):
            P = P * poly_pow(xs[i] - xs[j], m[i] + m[j])
    return coefficient_of(P, [v * (n - 1) for v in m])


_CATALOG = {
    "eq2.2": (_lhs_eq22, _rhs_eq22),
    "eq2.3": (_lhs_eq23, _rhs_eq23),
    "eq2.4": (_lhs_eq24, _rhs_eq24),
    "eq2.5": (_lhs_eq25, _rhs_eq25),
    "eq2.6": (_lhs_eq26, _rhs_eq26),
    "eq2.7": (_lhs_eq27, _rhs_eq27),
    "eq2.8": (_lhs_eq28, _rhs_eq28),
    "hs3.1": (_lhs_hs31, _rhs_hs31),
    "thm2.1": (_lhs_thm21, _rhs_thm21),
    "dyson": (_lhs_dyson, _rhs_dyson),
}


def closed_form(identity: str, params: Mapping[str, Any]):
    """Right-hand side of ``identity``: a UPoly in x or a ring element."""
    p = normalize_params(identity, params)
    return _CATALOG[identity][1](p)


@dataclass
class IdentityReport:
    identity: str
    params: dict
    lhs: Any
    rhs: Any
    passed: bool


def verify_identity(identity: str, params: Mapping[str, Any], cap: int = DEFAULT_DEGREE_CAP) -> IdentityReport:
    """Compare the closed form against brute expansion, exactly."""
    p = normalize_params(identity, params)
    degree = expanded_degree(identity, p)
    if degree > cap:
        raise CapExceeded(f"expanded degree {degree} exceeds cap {cap}")
    lhs_fn, rhs_fn = _CATALOG[identity]
    lhs = lhs_fn(p)
    rhs = rhs_fn(p)
    return IdentityReport(identity, dict(params), lhs, rhs, lhs == rhs)
