"""Restricted-sumset problems: rings, constraints, JSON form and brute-force enumeration."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

from .errors import CapExceeded
from .multipoly import MultiPoly, parse_poly
from .rings import Cyclotomic, ModP, cyclo_root_pow, is_prime
from .upoly import UPoly

DEFAULT_CAP = int(os.environ.get("POLYSUMSET_CAP", 10**7))


@dataclass(frozen=True)
class Ring:
    kind: str  # "prime", "rational" or "cyclotomic"
    p: int | None = None
    q: int | None = None

    def __post_init__(self):
        if self.kind == "prime":
            if self.p is None or not is_prime(self.p):
                raise ValueError(f"prime ring needs a prime p, got {self.p}")
        elif self.kind == "cyclotomic":
            if self.q is None or self.q < 1:
                raise ValueError("cyclotomic ring needs q >= 1")
        elif self.kind != "rational":
            raise ValueError(f"unknown ring kind {self.kind!r}")

    @property
    def characteristic(self) -> int | None:
        """p for prime fields, None (i.e. zero) otherwise."""
        return self.p if self.kind == "prime" else None

    def element(self, value):
        """Coerce an int, Fraction or ring element into this ring."""
        if self.kind == "prime":
            if isinstance(value, ModP):
                if value.p != self.p:
                    raise TypeError("wrong modulus")
                return value
            if isinstance(value, Fraction):
                return ModP.from_rational(value, self.p)
            return ModP(int(value), self.p)
        if self.kind == "rational":
            if isinstance(value, (ModP, Cyclotomic)):
                raise TypeError("not a rational")
            f = Fraction(value)
            return f.numerator if f.denominator == 1 else f
        if isinstance(value, Cyclotomic):
            if value.q != self.q:
                raise TypeError("wrong conductor")
            return value
        return Cyclotomic.from_rational(self.q, Fraction(value))

    def decode(self, raw):
        """Decode a JSON element: int, "num/den" string, or coordinate array."""
        if isinstance(raw, bool):
            raise ValueError(f"bad element {raw!r}")
        if self.kind == "cyclotomic" and isinstance(raw, list):
            return Cyclotomic(self.q, [_decode_rational(c) for c in raw])
        return self.element(_decode_rational(raw))

    def to_json(self) -> dict:
        if self.kind == "prime":
            return {"kind": "prime", "p": self.p}
        if self.kind == "cyclotomic":
            return {"kind": "cyclotomic", "q": self.q}
        return {"kind": "rational"}


def _decode_rational(raw):
    if isinstance(raw, bool):
        raise ValueError(f"bad number {raw!r}")
    if isinstance(raw, int):
        return raw
    if isinstance(raw, str):
        try:
            f = Fraction(raw.strip())
        except ValueError:
            raise ValueError(f"bad rational {raw!r}") from None
        return f.numerator if f.denominator == 1 else f
    raise ValueError(f"bad number {raw!r}")


def encode_element(value):
    """JSON form with exact strings: "7", "3/2" or a list of coordinate strings."""
    if isinstance(value, Cyclotomic):
        return [str(c) for c in value.coords]
    return str(value)


# --- constraints ---------------------------------------------------------
#
# Each constraint compiles against a concrete problem into pairwise checks
# (i, j, ok(a_i, a_j)) with 0-based i < j, plus optional whole-tuple checks.


@dataclass(frozen=True)
class DiffAvoid:
    """a_i - a_j not in S (1-based i != j)."""

    i: int
    j: int
    S: tuple

    kind = "diff_avoid"

    def compile(self, ring, n):
        _check_pair(self.i, self.j, n, ordered=False)
        forbidden = frozenset(ring.element(s) for s in self.S)
        i, j = self.i - 1, self.j - 1
        if i < j:
            return [(i, j, lambda a, b: (a - b) not in forbidden)], []
        return [(j, i, lambda b, a: (a - b) not in forbidden)], []

    def to_json(self):
        return {"kind": self.kind, "i": self.i, "j": self.j, "S": [encode_element(s) for s in self.S]}


@dataclass(frozen=True)
class PairwiseDistinct:
    kind = "pairwise_distinct"

    def compile(self, ring, n):
        return [(i, j, _ne) for i in range(n) for j in range(i + 1, n)], []

    def to_json(self):
        return {"kind": self.kind}


def _ne(a, b):
    return a != b


@dataclass(frozen=True)
class ScaledDistinct:
    """alpha_i a_i != alpha_j a_j for i != j; in ℚ(ζ_q) the alphas may be given as ζ exponents."""

    alphas: tuple | None = None
    zeta_exps: tuple | None = None

    kind = "scaled_distinct"

    def scalars(self, ring):
        if self.zeta_exps is not None:
            if ring.kind != "cyclotomic":
                raise ValueError("zeta_exps require a cyclotomic ring")
            return [cyclo_root_pow(ring.q, e) for e in self.zeta_exps]
        if self.alphas is None:
            raise ValueError("scaled_distinct needs alphas or zeta_exps")
        return [ring.element(a) for a in self.alphas]

    def compile(self, ring, n):
        scal = self.scalars(ring)
        if len(scal) != n:
            raise ValueError("scaled_distinct needs one scalar per set")
        pairs = [(i, j, _scaled_ne(scal[i], scal[j])) for i in range(n) for j in range(i + 1, n)]
        return pairs, []

    def to_json(self):
        if self.zeta_exps is not None:
            return {"kind": self.kind, "zeta_exps": list(self.zeta_exps)}
        return {"kind": self.kind, "alpha": [encode_element(a) for a in self.alphas]}


def _scaled_ne(si, sj):
    return lambda a, b: si * a != sj * b


def centered_residue(value: int, modulus: int) -> int:
    """The unique r in (-modulus/2, modulus/2] with r ≡ value (mod modulus)."""
    r = value % modulus
    if 2 * r > modulus:
        r -= modulus
    return r


@dataclass(frozen=True)
class Congruence:
    """a_i + b_i ≢ a_j + b_j (mod modulus), integers only."""

    i: int
    j: int
    modulus: int
    b: tuple

    kind = "congruence"

    def compile(self, ring, n):
        _check_pair(self.i, self.j, n, ordered=True)
        if self.modulus < 1:
            raise ValueError("congruence modulus must be >= 1")
        if len(self.b) != n:
            raise ValueError("congruence needs b_1..b_n")
        if ring.kind != "rational":
            raise ValueError("congruence constraints need integer elements (rational ring)")
        i, j, mod = self.i - 1, self.j - 1, self.modulus
        bi, bj = self.b[i], self.b[j]

        def ok(a, c):
            a, c = _as_int(a), _as_int(c)
            return (a + bi - c - bj) % mod != 0

        return [(i, j, ok)], []

    def to_json(self):
        return {"kind": self.kind, "i": self.i, "j": self.j, "m": self.modulus, "b": list(self.b)}


def _as_int(v):
    f = Fraction(v)
    if f.denominator != 1:
        raise ValueError(f"congruence applied to non-integer {v}")
    return f.numerator


@dataclass(frozen=True)
class PolyImageDistinct:
    """P_i(a_i) != P_j(a_j) for i != j; polys are coefficient lists, lowest degree first."""

    polys: tuple

    kind = "poly_image_distinct"

    def upolys(self, ring):
        return [UPoly([ring.element(c) for c in coeffs]) for coeffs in self.polys]

    def compile(self, ring, n):
        if len(self.polys) != n:
            raise ValueError("poly_image_distinct needs one polynomial per set")
        ups = self.upolys(ring)
        pairs = [(i, j, _image_ne(ups[i], ups[j])) for i in range(n) for j in range(i + 1, n)]
        return pairs, []

    def to_json(self):
        return {"kind": self.kind, "polys": [[encode_element(c) for c in p] for p in self.polys]}


def _image_ne(Pi, Pj):
    return lambda a, b: Pi(a) != Pj(b)


@dataclass(frozen=True)
class PolyNonzero:
    """P(a_1, ..., a_n) != 0 for a rational-coefficient polynomial P."""

    poly: MultiPoly

    kind = "poly_nonzero"

    def compile(self, ring, n):
        if self.poly.arity != n:
            raise ValueError("polynomial arity must equal the number of sets")
        P = self.poly.map_coefficients(ring.element)
        return [], [lambda tup: P.evaluate(tup) != 0]

    def to_json(self):
        return {"kind": self.kind, "poly": self.poly.render()}


def _check_pair(i, j, n, ordered):
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise ValueError(f"bad constraint indices ({i}, {j}) for n={n}")
    if ordered and i > j:
        raise ValueError(f"constraint indices must satisfy i < j, got ({i}, {j})")


Constraint = DiffAvoid | PairwiseDistinct | ScaledDistinct | Congruence | PolyImageDistinct | PolyNonzero


def constraint_from_json(raw: dict, ring: Ring) -> Constraint:
    kind = raw.get("kind")
    if kind == "diff_avoid":
        return DiffAvoid(int(raw["i"]), int(raw["j"]), tuple(ring.decode(s) for s in raw.get("S", [])))
    if kind == "pairwise_distinct":
        return PairwiseDistinct()
    if kind == "scaled_distinct":
        if "zeta_exps" in raw:
            return ScaledDistinct(zeta_exps=tuple(int(e) for e in raw["zeta_exps"]))
        return ScaledDistinct(alphas=tuple(ring.decode(a) for a in raw["alpha"]))
    if kind == "congruence":
        return Congruence(int(raw["i"]), int(raw["j"]), int(raw["m"]), tuple(int(b) for b in raw["b"]))
    if kind == "poly_image_distinct":
        return PolyImageDistinct(tuple(tuple(ring.decode(c) for c in p) for p in raw["polys"]))
    if kind == "poly_nonzero":
        return PolyNonzero(parse_poly(raw["poly"], raw.get("n")))
    raise ValueError(f"unknown constraint kind {kind!r}")


@dataclass
class SumsetProblem:
    ring: Ring
    sets: list
    constraints: list = field(default_factory=list)

    def __post_init__(self):
        if not self.sets:
            raise ValueError("need at least one set")
        self.sets = [[self.ring.element(a) for a in A] for A in self.sets]
        for idx, A in enumerate(self.sets, start=1):
            if not A:
                raise ValueError(f"A_{idx} is empty")
            if len(set(A)) != len(A):
                raise ValueError(f"A_{idx} has repeated elements")

    @property
    def n(self) -> int:
        return len(self.sets)

    @property
    def sizes(self) -> list[int]:
        return [len(A) for A in self.sets]

    def with_constraint(self, c) -> "SumsetProblem":
        return SumsetProblem(self.ring, self.sets, list(self.constraints) + [c])

    @classmethod
    def from_json(cls, doc) -> "SumsetProblem":
        if isinstance(doc, str):
            doc = json.loads(doc)
        ring_doc = doc["ring"]
        ring = Ring(ring_doc["kind"], ring_doc.get("p"), ring_doc.get("q"))
        sets = [[ring.decode(a) for a in A] for A in doc["sets"]]
        constraints = [constraint_from_json(c, ring) for c in doc.get("constraints", [])]
        return cls(ring, sets, constraints)

    def to_json(self) -> dict:
        return {
            "ring": self.ring.to_json(),
            "sets": [[encode_element(a) for a in A] for A in self.sets],
            "constraints": [c.to_json() for c in self.constraints],
        }


def enumerate_restricted_sumset(problem: SumsetProblem, cap: int = DEFAULT_CAP) -> set:
    """All sums a_1 + ... + a_n over admissible tuples, by depth-first search.

    Pairwise checks fire as soon as both coordinates are assigned, so
    inadmissible prefixes are pruned in lexicographic order.
    """
    n = problem.n
    total = prod(problem.sizes)
    if total > cap:
        raise CapExceeded(f"{total} tuples exceed cap {cap}")
    checks_at: list[list] = [[] for _ in range(n)]
    tuple_checks = []
    for c in problem.constraints:
        pairs, whole = c.compile(problem.ring, n)
        for i, j, ok in pairs:
            checks_at[j].append((i, ok))
        tuple_checks.extend(whole)

    sets = problem.sets
    result: set = set()
    chosen = [None] * n

    def walk(depth, partial):
        for a in sets[depth]:
            if any(not ok(chosen[i], a) for i, ok in checks_at[depth]):
                continue
            chosen[depth] = a
            s = a if depth == 0 else partial + a
            if depth + 1 < n:
                walk(depth + 1, s)
            elif all(check(tuple(chosen)) for check in tuple_checks):
                result.add(s)

    walk(0, None)
    return result
