"""Sparse multivariate polynomials with exponent-vector keys."""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .rings import render_element

Monomial = tuple  # exponent vector, one nonnegative int per variable


def _grlex_key(mono):
    return (sum(mono), mono)


class MultiPoly:
    """Polynomial in x1..xn stored as ``{exponent tuple: nonzero coefficient}``.

    Instances are treated as immutable. Coefficients come from one exact ring
    (int/Fraction, ModP or Cyclotomic); mixing rings raises TypeError from the
    coefficient arithmetic itself.
    """

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: Mapping[Monomial, object] | None = None):
        self.arity = arity
        clean = {}
        if terms:
            for mono, c in terms.items():
                mono = tuple(mono)
                if len(mono) != arity:
                    raise ValueError(f"monomial {mono} does not have arity {arity}")
                if c != 0:
                    clean[mono] = c
        self.terms = clean

    @classmethod
    def _raw(cls, arity, terms):
        out = object.__new__(cls)
        out.arity = arity
        out.terms = terms
        return out

    @classmethod
    def constant(cls, arity: int, c=1) -> "MultiPoly":
        return cls(arity, {(0,) * arity: c})

    @classmethod
    def variable(cls, arity: int, index: int, coeff=1) -> "MultiPoly":
        """The variable x_{index+1} (``index`` is 0-based)."""
        mono = [0] * arity
        mono[index] = 1
        return cls(arity, {tuple(mono): coeff})

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff=1) -> "MultiPoly":
        return cls(len(exponents), {tuple(exponents): coeff})

    # --- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def sorted_terms(self):
        """Terms in descending graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def coefficient(self, mono: Sequence[int]):
        mono = tuple(mono)
        if len(mono) != self.arity:
            raise ValueError("arity mismatch")
        return self.terms.get(mono, 0)

    def map_coefficients(self, fn) -> "MultiPoly":
        return MultiPoly(self.arity, {m: fn(c) for m, c in self.terms.items()})

    def permute_variables(self, perm: Sequence[int]) -> "MultiPoly":
        """Substitute x_i -> x_{perm[i]} (0-based)."""
        out = {}
        for mono, c in self.terms.items():
            new = [0] * self.arity
            for i, e in enumerate(mono):
                new[perm[i]] += e
            out[tuple(new)] = c
        return MultiPoly._raw(self.arity, out)

    def swap(self, i: int, j: int) -> "MultiPoly":
        perm = list(range(self.arity))
        perm[i], perm[j] = j, i
        return self.permute_variables(perm)

    def evaluate(self, point: Sequence):
        if len(point) != self.arity:
            raise ValueError("arity mismatch")
        total = 0
        for mono, c in self.terms.items():
            term = c
            for v, e in zip(point, mono):
                if e:
                    term = term * v**e
            total = total + term
        return total

    # --- arithmetic ------------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if other.arity != self.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.arity, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            if mono in out:
                s = out[mono] + c
                if s == 0:
                    del out[mono]
                else:
                    out[mono] = s
            else:
                out[mono] = c
        return MultiPoly._raw(self.arity, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.arity, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if other == 0:
                return MultiPoly._raw(self.arity, {})
            return MultiPoly(self.arity, {m: c * other for m, c in self.terms.items()})
        self._check(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                prod = c1 * c2
                if mono in out:
                    out[mono] = out[mono] + prod
                else:
                    out[mono] = prod
        return MultiPoly(self.arity, out)

    def __rmul__(self, other):
        if other == 0:
            return MultiPoly._raw(self.arity, {})
        return MultiPoly(self.arity, {m: other * c for m, c in self.terms.items()})

    def __pow__(self, e: int):
        return poly_pow(self, e)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.arity == other.arity and self.terms == other.terms
        try:
            return self.terms == MultiPoly.constant(self.arity, other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MultiPoly({self.arity}, {self.render()!r})"

    def __str__(self):
        return self.render()

    def render(self) -> str:
        return render_poly(self)


def poly_add(P: MultiPoly, Q: MultiPoly) -> MultiPoly:
    return P + Q


def poly_mul(P: MultiPoly, Q: MultiPoly) -> MultiPoly:
    return P * Q


def poly_pow(P: MultiPoly, e: int) -> MultiPoly:
    """P**e by repeated squaring."""
    if e < 0:
        raise ValueError("negative exponent")
    result = MultiPoly.constant(P.arity, 1)
    base = P
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def gens(n: int):
    return tuple(MultiPoly.variable(n, i) for i in range(n))


def power_sum_linear(n: int) -> MultiPoly:
    """x1 + ... + xn."""
    return sum(gens(n), MultiPoly(n))


def coefficient_of(P: MultiPoly, mono: Sequence[int]):
    return P.coefficient(mono)


def product_coefficient(P: MultiPoly, Q: MultiPoly, mono: Sequence[int]):
    """[mono](P*Q) without forming the full product."""
    P._check(Q)
    mono = tuple(mono)
    total = 0
    for m1, c1 in P.terms.items():
        rest = tuple(a - b for a, b in zip(mono, m1))
        if min(rest, default=0) < 0:
            continue
        c2 = Q.terms.get(rest)
        if c2 is not None:
            total = total + c1 * c2
    return total


def _binomial_power(n: int, i: int, j: int, e: int) -> MultiPoly:
    # (x_j - x_i)^e by the binomial theorem
    out = {}
    for t in range(e + 1):
        mono = [0] * n
        mono[j] += e - t
        mono[i] += t
        out[tuple(mono)] = comb(e, t) * (-1) ** t
    return MultiPoly(n, out)


def build_difference_product(n: int, e: int) -> MultiPoly:
    """∏_{1<=i<j<=n} (x_j - x_i)^e."""
    if n < 1 or e < 0:
        raise ValueError("need n >= 1 and e >= 0")
    result = MultiPoly.constant(n, 1)
    for j in range(n):
        for i in range(j):
            result = result * _binomial_power(n, i, j, e)
    return result


def vandermonde_polynomial(n: int) -> MultiPoly:
    return build_difference_product(n, 1)


def symmetry_signature(P: MultiPoly) -> str:
    """Return "symmetric", "antisymmetric" or "neither" under transpositions of variables."""
    swaps = [P.swap(i, i + 1) for i in range(P.arity - 1)]
    if all(s == P for s in swaps):
        return "symmetric"
    neg = -P
    if all(s == neg for s in swaps):
        return "antisymmetric"
    return "neither"


# --- text format ---------------------------------------------------------

def render_poly(P: MultiPoly) -> str:
    """Render as e.g. ``-3*x1^2*x2 + 1/2*x3 - 1`` in descending grlex order."""
    if P.is_zero():
        return "0"
    pieces = []
    for mono, c in P.sorted_terms():
        factors = []
        for idx, e in enumerate(mono, start=1):
            if e == 1:
                factors.append(f"x{idx}")
            elif e > 1:
                factors.append(f"x{idx}^{e}")
        text = render_element(c)
        negative = text.startswith("-")
        if negative:
            text = text[1:]
        if factors and text == "1":
            body = "*".join(factors)
        else:
            body = "*".join([text] + factors)
        if not pieces:
            pieces.append(("-" if negative else "") + body)
        else:
            pieces.append(("- " if negative else "+ ") + body)
    return " ".join(pieces)


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR_RE = re.compile(r"^x(\d+)(?:\^(\d+))?$")
_NUMBER_RE = re.compile(r"^\d+(?:/\d+)?$")


def parse_poly(text: str, arity: int | None = None) -> MultiPoly:
    """Parse the output format of :func:`render_poly` (rational coefficients).

    Arity defaults to the largest variable index that appears.
    """
    src = text.strip()
    if not src:
        raise ValueError("empty polynomial")
    raw_terms = []
    pos = 0
    while pos < len(src):
        m = _TERM_RE.match(src, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {src[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2).strip()
        if not body:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = Fraction(sign)
        exps: dict[int, int] = {}
        for factor in body.split("*"):
            factor = factor.strip()
            fm = _FACTOR_RE.match(factor)
            if fm:
                idx = int(fm.group(1))
                if idx < 1:
                    raise ValueError("variables are numbered from x1")
                exps[idx] = exps.get(idx, 0) + int(fm.group(2) or 1)
            elif _NUMBER_RE.match(factor):
                coeff *= Fraction(factor)
            else:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
        raw_terms.append((coeff, exps))
        pos = m.end()
    top = max((max(e, default=0) for _, e in raw_terms), default=0)
    if arity is None:
        arity = max(top, 1)
    elif top > arity:
        raise ValueError(f"variable x{top} exceeds arity {arity}")
    out = MultiPoly(arity)
    for coeff, exps in raw_terms:
        mono = [0] * arity
        for idx, e in exps.items():
            mono[idx - 1] = e
        c = coeff.numerator if coeff.denominator == 1 else coeff
        out = out + MultiPoly(arity, {tuple(mono): c})
    return out
