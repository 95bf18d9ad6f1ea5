"""Exact arithmetic for the polynomial method on restricted sumsets."""

from .bounds import BoundReport, CoefficientBound, bound_for, check_bound, coefficient_lower_bound
from .errors import CapExceeded, CounterexampleError, HypothesisNotMet
from .identities import IDENTITY_IDS, IdentityReport, closed_form, verify_identity
from .matrix import determinant, permanent, roots_permanent_nonzero
from .multipoly import MultiPoly, build_difference_product, parse_poly, render_poly
from .permutations import hall_permutation, parker_decomposition, snevily_permutation
from .rings import Cyclotomic, ModP, cyclo_is_zero, cyclo_root_pow, cyclotomic_polynomial
from .star import coeff_via_star, falling_factorial, star_diagonal, star_evaluate, star_shifted_diagonal
from .sumsets import (
    Congruence,
    DiffAvoid,
    PairwiseDistinct,
    PolyImageDistinct,
    PolyNonzero,
    Ring,
    ScaledDistinct,
    SumsetProblem,
    enumerate_restricted_sumset,
)
from .upoly import UPoly

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CapExceeded",
    "Congruence",
    "CounterexampleError",
    "Cyclotomic",
    "DiffAvoid",
    "HypothesisNotMet",
    "IDENTITY_IDS",
    "IdentityReport",
    "CoefficientBound",
    "ModP",
    "MultiPoly",
    "PairwiseDistinct",
    "PolyImageDistinct",
    "PolyNonzero",
    "Ring",
    "ScaledDistinct",
    "SumsetProblem",
    "UPoly",
    "bound_for",
    "build_difference_product",
    "check_bound",
    "closed_form",
    "coeff_via_star",
    "cyclo_is_zero",
    "cyclo_root_pow",
    "cyclotomic_polynomial",
    "determinant",
    "enumerate_restricted_sumset",
    "falling_factorial",
    "hall_permutation",
    "coefficient_lower_bound",
    "parker_decomposition",
    "parse_poly",
    "permanent",
    "render_poly",
    "roots_permanent_nonzero",
    "snevily_permutation",
    "star_diagonal",
    "star_evaluate",
    "star_shifted_diagonal",
    "verify_identity",
]
