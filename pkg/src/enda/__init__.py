"""Exact algebra for endomorphism semigroups of free and nilpotent algebras."""

from .bijection import BijectionRecipe, TwistData, build_twist, classify
from .endo import Endo, EndoFamily, find_standard_base, standard_endos
from .gsolve import solve_g_system, verify_candidate
from .matrix import ExactMatrix, conjugate_matrix_units, dedekind_report, r1mf_factorize, rank
from .ncpoly import AlgebraDescriptor, NcPoly, parse_poly, print_poly
from .ring import RingAutomorphism, RingElement, parse_ring

__version__ = "0.1.0"

__all__ = [
    "AlgebraDescriptor",
    "BijectionRecipe",
    "Endo",
    "EndoFamily",
    "ExactMatrix",
    "NcPoly",
    "RingAutomorphism",
    "RingElement",
    "TwistData",
    "build_twist",
    "classify",
    "conjugate_matrix_units",
    "dedekind_report",
    "find_standard_base",
    "parse_poly",
    "parse_ring",
    "print_poly",
    "r1mf_factorize",
    "rank",
    "solve_g_system",
    "standard_endos",
    "verify_candidate",
]
