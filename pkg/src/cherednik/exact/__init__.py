"""Exact arithmetic: rationals, cyclotomics, sparse polynomials, linear algebra,
Groebner bases and univariate factorization."""

from .scalars import QQ, CycloElem, CycloField, cyclotomic_field, cyclotomic_polynomial, rat
from .mpoly import MPoly, PolyRing, grevlex_key
from .upoly import UPoly, lagrange_interpolate, squarefree_part, upoly_gcd
from .linalg import Mat, charpoly, det, kernel_basis, rank, rref, solve, solve_matrix
from .groebner import algebra_map_kernel, groebner_basis, ideal_member, make_order, reduce_poly
from .factor import factor_irreducible

__all__ = [
    "QQ",
    "CycloElem",
    "CycloField",
    "cyclotomic_field",
    "cyclotomic_polynomial",
    "rat",
    "MPoly",
    "PolyRing",
    "grevlex_key",
    "UPoly",
    "lagrange_interpolate",
    "squarefree_part",
    "upoly_gcd",
    "Mat",
    "charpoly",
    "det",
    "kernel_basis",
    "rank",
    "rref",
    "solve",
    "solve_matrix",
    "algebra_map_kernel",
    "groebner_basis",
    "ideal_member",
    "make_order",
    "reduce_poly",
    "factor_irreducible",
]
