"""Exact arithmetic foundation: rationals, matrices, polynomials, series."""

from .kernels import BACKEND
from .matrix import Matrix, block_diag, mat_nullspace, mat_rank, stack_rows
from .parser import parse_poly, parse_rational
from .poly import Poly, RationalFunction, exact_div, poly_det, poly_gcd
from .rational import Rational, rat, rat_str
from .series import Series, series_invert
from .smith import smith_invariant_factors
from .upoly import UPoly, factor_monic, squarefree_decomposition, ugcd

__all__ = [
    "BACKEND", "Matrix", "Poly", "Rational", "RationalFunction", "Series",
    "UPoly", "block_diag", "exact_div", "factor_monic", "mat_nullspace",
    "mat_rank", "parse_poly", "parse_rational", "poly_det", "poly_gcd",
    "rat", "rat_str", "series_invert", "smith_invariant_factors",
    "squarefree_decomposition", "stack_rows", "ugcd",
]
