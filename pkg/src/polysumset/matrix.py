"""Exact determinants and permanents over the coefficient rings."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .multipoly import MultiPoly
from .rings import Cyclotomic, ModP, cyclo_is_zero, cyclo_root_pow

Matrix = Sequence[Sequence]


def _square(M) -> list[list]:
    rows = [list(r) for r in M]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    return rows


def permutation_sign(perm: Sequence[int]) -> int:
    """+1 for even permutations of range(n), -1 for odd ones."""
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _product_over(rows, perm):
    acc = 1
    for i, j in enumerate(perm):
        acc = acc * rows[i][j]
    return acc


def determinant_naive(M: Matrix):
    """Signed sum over S_n."""
    rows = _square(M)
    total = 0
    for perm in permutations(range(len(rows))):
        total = total + permutation_sign(perm) * _product_over(rows, perm)
    return total


def permanent_naive(M: Matrix):
    rows = _square(M)
    total = 0
    for perm in permutations(range(len(rows))):
        total = total + _product_over(rows, perm)
    return total


def _divides_exactly(entries) -> bool:
    return all(isinstance(e, (int, Fraction, ModP, Cyclotomic)) for e in entries)


def _exact_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact division in Bareiss elimination")
        return q
    return a / b


def determinant(M: Matrix):
    """Determinant by fraction-free Bareiss elimination.

    Rings without division (e.g. polynomial entries) fall back to the
    signed permutation expansion.
    """
    rows = _square(M)
    n = len(rows)
    if n == 0:
        return 1
    if not _divides_exactly(e for r in rows for e in r):
        return determinant_naive(rows)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for r in range(k + 1, n):
                if rows[r][k] != 0:
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return 0 * rows[0][0]
        pivot = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = _exact_div(rows[i][j] * pivot - rows[i][k] * rows[k][j], prev)
        prev = pivot
    det = rows[n - 1][n - 1]
    return det if sign == 1 else -det


def permanent(M: Matrix):
    """Permanent by Ryser's formula, walking subsets in Gray-code order.

    per(A) = (-1)^n Σ_{S ⊆ cols} (-1)^{|S|} ∏_i Σ_{j ∈ S} a_ij
    """
    rows = _square(M)
    n = len(rows)
    if n == 0:
        return 1
    sums = [0] * n
    total = 0
    in_set = [False] * n
    size = 0
    for step in range(1, 1 << n):
        col = (step & -step).bit_length() - 1
        if in_set[col]:
            in_set[col] = False
            size -= 1
            for i in range(n):
                sums[i] = sums[i] - rows[i][col]
        else:
            in_set[col] = True
            size += 1
            for i in range(n):
                sums[i] = sums[i] + rows[i][col]
        prod = 1
        for s in sums:
            prod = prod * s
        total = total + prod if size % 2 == 0 else total - prod
    return total if n % 2 == 0 else -total


def vandermonde_matrix(values: Sequence) -> list[list]:
    """Rows are powers: entry (i, j) = values[j]^i."""
    n = len(values)
    return [[v**i if i else 1 for v in values] for i in range(n)]


def monomial_matrix_det(A: Matrix, m: Sequence[int]) -> MultiPoly:
    """Expanded det(a_ij * x_j^{m_i})."""
    rows = _square(A)
    n = len(rows)
    if len(m) != n:
        raise ValueError("length of m must equal the dimension of A")
    terms: dict = {}
    for perm in permutations(range(n)):
        coeff = permutation_sign(perm) * _product_over(rows, perm)
        if coeff == 0:
            continue
        mono = [0] * n
        for i, j in enumerate(perm):
            mono[j] += m[i]
        mono = tuple(mono)
        terms[mono] = terms[mono] + coeff if mono in terms else coeff
    return MultiPoly(n, terms)


def roots_permanent_nonzero(q: int, exps: Sequence[int]) -> dict:
    """per(ζ_t^{s-1}) for ζ_t = ζ_q^{exps[t]}, with a nonvanishing flag."""
    if q < 1 or q % 2 == 0:
        raise ValueError("q must be a positive odd integer")
    if len({e % q for e in exps}) != len(exps):
        raise ValueError("exponents must be distinct modulo q")
    n = len(exps)
    M = [[cyclo_root_pow(q, s * e) for e in exps] for s in range(n)]
    value = permanent(M)
    if not isinstance(value, Cyclotomic):
        value = Cyclotomic.from_rational(q, value)
    return {"nonzero": not cyclo_is_zero(value), "value": value}
