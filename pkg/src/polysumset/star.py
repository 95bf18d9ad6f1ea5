"""The falling-factorial transform P -> P* and coefficient extraction through it.

For P = Σ c_j x^j, P* = Σ c_j (x_1)_{j_1} ... (x_n)_{j_n}. The transform is
always applied by evaluation, either at ring elements or along a shifted
diagonal x_i = x - s_i, never by re-expansion into monomials.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Sequence

from .multipoly import MultiPoly
from .rings import ModP
from .upoly import UPoly


@lru_cache(maxsize=None)
def _shifted_falling(shift: int, s: int) -> UPoly:
    poly = UPoly((1,))
    for t in range(s):
        poly = poly * UPoly((-(shift + t), 1))
    return poly


def falling_factorial(s: int) -> UPoly:
    """(x)_s = x(x-1)...(x-s+1) as a polynomial in x."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    return _shifted_falling(0, s)


def falling_factorial_value(a, s: int):
    if s < 0:
        raise ValueError("s must be nonnegative")
    acc = 1
    for t in range(s):
        acc = acc * (a - t)
    return acc


def star_evaluate(P: MultiPoly, args: Sequence):
    """P*(args)."""
    if len(args) != P.arity:
        raise ValueError(f"expected {P.arity} arguments, got {len(args)}")
    cache: dict = {}
    total = 0
    for mono, c in P.terms.items():
        term = c
        for i, j in enumerate(mono):
            if j:
                key = (i, j)
                if key not in cache:
                    cache[key] = falling_factorial_value(args[i], j)
                term = term * cache[key]
        total = total + term
    return total


def star_shifted_diagonal(P: MultiPoly, shifts: Sequence[int]) -> UPoly:
    """P*(x - s_1, ..., x - s_n) as a univariate polynomial in x."""
    if len(shifts) != P.arity:
        raise ValueError(f"expected {P.arity} shifts, got {len(shifts)}")
    # (x - s)_j = ∏_{t<j} (x - s - t)
    acc: dict[int, object] = {}
    for mono, c in P.terms.items():
        basis = UPoly((1,))
        for s, j in zip(shifts, mono):
            if j:
                basis = basis * _shifted_falling(s, j)
        for power, b in enumerate(basis.coeffs):
            if b:
                acc[power] = acc[power] + c * b if power in acc else c * b
    if not acc:
        return UPoly()
    return UPoly([acc.get(i, 0) for i in range(max(acc) + 1)])


def star_diagonal(P: MultiPoly) -> UPoly:
    """P*(x, ..., x)."""
    return star_shifted_diagonal(P, [0] * P.arity)


def _lift_modp(P: MultiPoly):
    primes = {c.p for c in P.terms.values() if isinstance(c, ModP)}
    if not primes:
        return P, None
    if len(primes) > 1 or any(not isinstance(c, ModP) for c in P.terms.values()):
        raise TypeError("mixed coefficient rings")
    return P.map_coefficients(lambda c: c.value), primes.pop()


def coeff_via_star(P: MultiPoly, k: Sequence[int]):
    """[x^k] P·(x1+...+xn)^(Σk - deg P), computed as (K!/∏k_i!)·P*(k).

    P must be homogeneous. ModP coefficients are lifted to ℤ first; every
    term of the sum is then an integer multinomial, so the result reduces
    cleanly mod p.
    """
    k = tuple(k)
    if len(k) != P.arity:
        raise ValueError("arity mismatch")
    if any(v < 0 for v in k):
        raise ValueError("k must be nonnegative")
    if P.is_zero():
        return 0
    if not P.is_homogeneous():
        raise ValueError("P must be homogeneous")
    K = sum(k) - P.degree
    if K < 0:
        raise ValueError(f"deg P = {P.degree} exceeds sum of k = {sum(k)}")
    lifted, p = _lift_modp(P)
    value = Fraction(factorial(K), prod(factorial(v) for v in k)) * star_evaluate(lifted, k)
    if p is not None:
        value = Fraction(value)
        if value.denominator != 1:
            raise ArithmeticError("non-integral lifted coefficient")
        return ModP(value.numerator, p)
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value
