"""Backtracking searches for permutations with pairwise-distinct shifted values.

Permutations are returned as tuples of 1-based images: ``sigma[i - 1]`` is
σ(i), matching the usual {1, ..., n} convention.
"""

from __future__ import annotations

from itertools import product
from typing import Sequence

from .errors import HypothesisNotMet


def _distinct_assignment(n: int, value, modulus: int):
    """Find σ with value(i, σ(i)) pairwise distinct mod ``modulus`` (0-based internally)."""
    used_vals: set = set()
    used_idx = [False] * n
    sigma = [0] * n

    def place(i):
        if i == n:
            return True
        for j in range(n):
            if used_idx[j]:
                continue
            v = value(i, j) % modulus
            if v in used_vals:
                continue
            used_idx[j] = True
            used_vals.add(v)
            sigma[i] = j
            if place(i + 1):
                return True
            used_idx[j] = False
            used_vals.discard(v)
        return False

    if place(0):
        return tuple(j + 1 for j in sigma)
    return None


def snevily_permutation(m: int, n: int, b: Sequence[int]):
    """σ with 1 + b_σ(1), ..., n + b_σ(n) pairwise distinct mod m, or None."""
    if m < 1 or n < 1:
        raise ValueError("need m >= 1 and n >= 1")
    if len(b) != n:
        raise ValueError("b must have n entries")
    return _distinct_assignment(n, lambda i, j: (i + 1) + b[j], m)


def check_snevily(m: int, b: Sequence[int], sigma: Sequence[int]) -> bool:
    vals = [(t + 1 + b[s - 1]) % m for t, s in enumerate(sigma)]
    return sorted(sigma) == list(range(1, len(b) + 1)) and len(set(vals)) == len(vals)


def snevily_counterexamples(m: int, n: int):
    """All b in (ℤ/m)^n admitting no valid σ.

    The guaranteed range is n <= (m+1)/2; for (m+1)/2 < n < m this explores
    the stronger conjectured range and simply reports what it finds.
    """
    return [b for b in product(range(m), repeat=n) if snevily_permutation(m, n, b) is None]


def hall_permutation(n: int, a: Sequence[int], b: Sequence[int], enforce: bool = True):
    """σ with a_i + b_σ(i) pairwise distinct in ℤ/nℤ.

    ``a`` must enumerate ℤ/nℤ. If Σb ≢ 0 (mod n) the hypothesis fails:
    raise HypothesisNotMet, or with ``enforce=False`` search anyway and
    possibly return None.
    """
    if len(a) != n or len(b) != n:
        raise ValueError("a and b must have n entries")
    if sorted(x % n for x in a) != list(range(n)):
        raise ValueError("a must enumerate Z/nZ")
    if sum(b) % n != 0 and enforce:
        raise HypothesisNotMet("hypothesis violated: sum of b is not 0 mod n")
    return _distinct_assignment(n, lambda i, j: a[i] + b[j], n)


def check_hall(n: int, a, b, sigma) -> bool:
    vals = [(a[i] + b[s - 1]) % n for i, s in enumerate(sigma)]
    return sorted(sigma) == list(range(1, n + 1)) and len(set(vals)) == n


def parker_decomposition(n: int, b: Sequence[int]):
    """Permutations σ', τ of {1..n-1} with b_i = a_σ'(i) + a_τ(i) and a_σ'(i) ≠ 0.

    Uses the enumeration a = (1, 2, ..., n-1, 0) of ℤ/nℤ and requires
    b_n = 0 and Σb ≡ 0 (mod n). A Hall permutation σ making b_i - a_σ(i)
    distinct is normalized by a_σ(n), which leaves the nonzero residues.
    """
    if n < 2:
        raise ValueError("need n > 1")
    if len(b) != n:
        raise ValueError("b must have n entries")
    b = [x % n for x in b]
    if b[-1] != 0 or sum(b) % n != 0:
        raise HypothesisNotMet("need b_n = 0 and sum of b = 0 mod n")
    a = list(range(1, n)) + [0]
    index_of = {v: i for i, v in enumerate(a)}
    # b_i - a_σ(i) distinct over i  <=>  (-a_j) + b_{π(j)} distinct over j, π = σ^-1
    pi = hall_permutation(n, [-x % n for x in a], b)
    if pi is None:
        raise RuntimeError(f"no Hall permutation found for b={b}")
    sigma = [0] * n
    for j, image in enumerate(pi):
        sigma[image - 1] = j
    shift = a[sigma[n - 1]]
    sigma_p, tau = [], []
    for i in range(n - 1):
        s = index_of[(a[sigma[i]] - shift) % n]
        t = index_of[(b[i] - a[s]) % n]
        if s == n - 1 or t == n - 1:
            raise RuntimeError(f"Parker decomposition failed for b={b}")
        sigma_p.append(s + 1)
        tau.append(t + 1)
    if sorted(sigma_p) != list(range(1, n)) or sorted(tau) != list(range(1, n)):
        raise RuntimeError(f"Parker decomposition failed for b={b}")
    return tuple(sigma_p), tuple(tau)


def check_parker(n: int, b, sigma_p, tau) -> bool:
    a = list(range(1, n)) + [0]
    return (
        sorted(sigma_p) == list(range(1, n))
        and sorted(tau) == list(range(1, n))
        and all((a[s - 1] + a[t - 1] - b[i]) % n == 0 for i, (s, t) in enumerate(zip(sigma_p, tau)))
        and all(a[s - 1] % n != 0 for s in sigma_p)
    )
