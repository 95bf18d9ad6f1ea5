"""Dense univariate polynomials over an exact coefficient ring."""

from __future__ import annotations

from fractions import Fraction


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class UPoly:
    """Polynomial in one variable; ``coeffs[i]`` is the coefficient of x^i.

    Coefficients may be ints, Fractions, ModP or Cyclotomic elements.
    Trailing zeros are trimmed, so the zero polynomial has ``coeffs == ()``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trim(coeffs)

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def constant(cls, c):
        return cls((c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _coerce(self, other):
        if isinstance(other, UPoly):
            return other
        return UPoly((other,))

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return UPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            return UPoly(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
        return UPoly(out)

    def __rmul__(self, other):
        return UPoly(other * c for c in self.coeffs)

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative exponent")
        result, base = UPoly((1,)), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        return self == UPoly((other,))

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def divmod_monic(self, divisor):
        """Quotient and remainder by a monic divisor; no coefficient division needed."""
        d = divisor.coeffs
        if not d or d[-1] != 1:
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        dd = len(d) - 1
        if len(rem) <= dd:
            return UPoly(), UPoly(rem)
        quot = [0] * (len(rem) - dd)
        for top in range(len(rem) - 1, dd - 1, -1):
            c = rem[top]
            if c == 0:
                continue
            quot[top - dd] = c
            for k in range(dd + 1):
                rem[top - dd + k] = rem[top - dd + k] - c * d[k]
        return UPoly(quot), UPoly(rem[:dd])

    def exact_div(self, divisor):
        q, r = self.divmod_monic(divisor)
        if r:
            raise ArithmeticError(f"division not exact: remainder {r}")
        return q

    def __repr__(self):
        return f"UPoly({list(self.coeffs)!r})"

    def __str__(self):
        return render_upoly(self)


def render_upoly(poly, var="x"):
    from .rings import render_element

    if not poly.coeffs:
        return "0"
    parts = []
    for power in range(poly.degree, -1, -1):
        c = poly.coeffs[power]
        if c == 0:
            continue
        text = render_element(c)
        if power == 0:
            mono = ""
        elif power == 1:
            mono = var
        else:
            mono = f"{var}^{power}"
        simple = not text.startswith("(")
        negative = simple and text.startswith("-")
        if negative:
            text = text[1:]
        if mono and text == "1":
            body = mono
        elif mono:
            body = f"{text}*{mono}"
        else:
            body = text
        if not parts:
            parts.append(("-" if negative else "") + body)
        else:
            parts.append(("- " if negative else "+ ") + body)
    return " ".join(parts)


def _as_field(poly):
    return [c if not isinstance(c, int) else Fraction(c) for c in poly.coeffs]


def divmod_field(a, b):
    """Division with remainder over ℚ (leading coefficient of ``b`` may be any nonzero rational)."""
    b_coeffs = _as_field(b)
    if not b_coeffs:
        raise ZeroDivisionError("polynomial division by zero")
    rem = _as_field(a)
    lead = b_coeffs[-1]
    db = len(b_coeffs) - 1
    quot = [Fraction(0)] * max(len(rem) - db, 0)
    for top in range(len(rem) - 1, db - 1, -1):
        c = rem[top]
        if c == 0:
            continue
        f = c / lead
        quot[top - db] = f
        for k in range(db + 1):
            rem[top - db + k] -= f * b_coeffs[k]
    return UPoly(quot), UPoly(rem[:db])


def inverse_mod(a, modulus):
    """Inverse of ``a`` modulo ``modulus`` in ℚ[x] by the extended Euclidean algorithm."""
    r0, r1 = modulus, a
    s0, s1 = UPoly(), UPoly((1,))
    while r1:
        q, r = divmod_field(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree != 0:
        raise ZeroDivisionError("not invertible")
    return s0 * (1 / Fraction(r0.coeffs[0]))
