"""Exact coefficient rings: ℚ (via ``fractions.Fraction``), ℤ/pℤ and ℚ(ζ_q)."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .upoly import UPoly, inverse_mod

Rational = Fraction


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class ModP:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.value = value % p
        self.p = p

    @classmethod
    def from_rational(cls, r, p: int) -> "ModP":
        r = Fraction(r)
        if r.denominator % p == 0:
            raise ZeroDivisionError(f"denominator {r.denominator} divisible by {p}")
        return cls(r.numerator * pow(r.denominator, -1, p), p)

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise TypeError(f"mixed moduli {self.p} and {other.p}")
            return other.value
        if isinstance(other, int):
            return other
        raise TypeError(f"cannot combine ModP({self.p}) with {type(other).__name__}")

    def _new(self, v):
        out = object.__new__(ModP)
        out.value = v % self.p
        out.p = self.p
        return out

    def __add__(self, other):
        return self._new(self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._new(self.value - self._coerce(other))

    def __rsub__(self, other):
        return self._new(self._coerce(other) - self.value)

    def __mul__(self, other):
        return self._new(self.value * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.value)

    def __pow__(self, e: int):
        if e < 0:
            return modp_inv(self) ** (-e)
        return self._new(pow(self.value, e, self.p))

    def __truediv__(self, other):
        return self * modp_inv(self._new(self._coerce(other)))

    def __rtruediv__(self, other):
        return self._new(self._coerce(other)) * modp_inv(self)

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return (other - self.value) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"ModP({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


def modp_inv(a: ModP) -> ModP:
    if a.value == 0:
        raise ZeroDivisionError("not invertible")
    return ModP(pow(a.value, -1, a.p), a.p)


# Φ_q memo: lru_cache serializes insertion under the GIL and reads are lock-free.
@lru_cache(maxsize=None)
def cyclotomic_polynomial(q: int) -> UPoly:
    """Φ_q as an integer UPoly, via (x^q - 1) / ∏_{d | q, d < q} Φ_d."""
    if q < 1:
        raise ValueError("q must be positive")
    num = UPoly([-1] + [0] * (q - 1) + [1])
    den = UPoly((1,))
    for d in range(1, q):
        if q % d == 0:
            den = den * cyclotomic_polynomial(d)
    return num.exact_div(den)


def euler_phi(q: int) -> int:
    return sum(1 for k in range(1, q + 1) if gcd(k, q) == 1)


@lru_cache(maxsize=None)
def _reduction_table(q: int):
    # rows[k] = coordinates of x^(phi + k) mod Φ_q, for k in [0, phi - 1)
    phi_poly = cyclotomic_polynomial(q)
    phi = phi_poly.degree
    rows = []
    cur = [-c for c in phi_poly.coeffs[:phi]]
    for _ in range(max(phi - 1, 0)):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [cur[i] - top * phi_poly.coeffs[i] for i in range(phi)]
    return phi, tuple(rows)


class Cyclotomic:
    """Element of ℚ(ζ_q), stored as the residue of a rational polynomial modulo Φ_q.

    ``coords[i]`` is the coefficient of ζ_q^i for ``0 <= i < φ(q)``. Coordinates
    are ints or Fractions.
    """

    __slots__ = ("q", "coords")

    def __init__(self, q: int, coords):
        coords = tuple(coords)
        phi = cyclotomic_polynomial(q).degree
        if len(coords) != phi:
            raise ValueError(f"expected {phi} coordinates for q={q}, got {len(coords)}")
        for c in coords:
            if not isinstance(c, (int, Fraction)):
                raise TypeError(f"coordinate {c!r} is not rational")
        self.q = q
        self.coords = coords

    @classmethod
    def _raw(cls, q, coords):
        out = object.__new__(cls)
        out.q = q
        out.coords = coords
        return out

    @classmethod
    def from_rational(cls, q: int, r) -> "Cyclotomic":
        phi = cyclotomic_polynomial(q).degree
        return cls._raw(q, (r,) + (0,) * (phi - 1))

    @classmethod
    def from_poly(cls, q: int, poly: UPoly) -> "Cyclotomic":
        _, rem = poly.divmod_monic(cyclotomic_polynomial(q))
        phi = cyclotomic_polynomial(q).degree
        coords = tuple(rem[i] for i in range(phi))
        return cls._raw(q, coords)

    def to_poly(self) -> UPoly:
        return UPoly(self.coords)

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.q != self.q:
                raise TypeError(f"mixed conductors {self.q} and {other.q}")
            return other.coords
        if isinstance(other, (int, Fraction)):
            return (other,) + (0,) * (len(self.coords) - 1)
        raise TypeError(f"cannot combine Cyclotomic({self.q}) with {type(other).__name__}")

    def __add__(self, other):
        o = self._coerce(other)
        return Cyclotomic._raw(self.q, tuple(a + b for a, b in zip(self.coords, o)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return Cyclotomic._raw(self.q, tuple(a - b for a, b in zip(self.coords, o)))

    def __rsub__(self, other):
        return -self + other

    def __neg__(self):
        return Cyclotomic._raw(self.q, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic._raw(self.q, tuple(a * other for a in self.coords))
        o = self._coerce(other)
        a = self.coords
        phi, rows = _reduction_table(self.q)
        full = [0] * (2 * phi - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(o):
                if cb:
                    full[i + j] += ca * cb
        out = full[:phi]
        for k in range(phi - 1):
            c = full[phi + k]
            if c:
                row = rows[k]
                for i in range(phi):
                    if row[i]:
                        out[i] += c * row[i]
        return Cyclotomic._raw(self.q, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = Cyclotomic.from_rational(self.q, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "Cyclotomic":
        if cyclo_is_zero(self):
            raise ZeroDivisionError("not invertible")
        inv = inverse_mod(self.to_poly(), cyclotomic_polynomial(self.q))
        return Cyclotomic.from_poly(self.q, inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Cyclotomic.from_rational(self.q, Fraction(other)) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            return self.q == other.q and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.coords[0] == other and all(c == 0 for c in self.coords[1:])
        return NotImplemented

    def __hash__(self):
        if all(c == 0 for c in self.coords[1:]):
            return hash(self.coords[0])
        return hash((self.q, self.coords))

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def __repr__(self):
        return f"Cyclotomic({self.q}, {[str(c) for c in self.coords]})"

    def __str__(self):
        return render_element(self)


def cyclo_root_pow(q: int, k: int) -> Cyclotomic:
    """ζ_q^k as an element of ℚ(ζ_q)."""
    k %= q
    return Cyclotomic.from_poly(q, UPoly([0] * k + [1]))


def cyclo_is_zero(e: Cyclotomic) -> bool:
    return all(c == 0 for c in e.coords)


def render_element(c) -> str:
    """Exact string form of a ring element: integer, "num/den", or ζ-expansion."""
    if isinstance(c, Cyclotomic):
        return "(" + render_upoly_zeta(c) + ")"
    if hasattr(c, "render"):
        return "(" + c.render() + ")"
    return str(c)


def render_upoly_zeta(c: Cyclotomic) -> str:
    from .upoly import render_upoly

    return render_upoly(UPoly(c.coords), var=f"z{c.q}")


def to_rational(c):
    """Return ``c`` as a Fraction, raising if it is not a rational value."""
    if isinstance(c, Cyclotomic):
        if not c.is_rational():
            raise ValueError(f"{c} is not rational")
        return Fraction(c.coords[0])
    if isinstance(c, ModP):
        raise TypeError("ModP element has no rational value")
    return Fraction(c)
