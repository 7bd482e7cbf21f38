"""Exact arithmetic kernel: rationals, integer polynomials, real algebraic
numbers, number-field elements, sequence minimal polynomials and cyclotomic
analysis."""

from fractions import Fraction as Rational

from .cyclotomic import CyclotomicProfile, cyclotomic_poly, cyclotomic_profile, totient
from .field import (
    FieldElement,
    NumberField,
    field_arith,
    field_compare,
    field_floor,
)
from .poly import IntPolynomial
from .roots import RealAlgebraic, count_roots, factor_int_poly, isolate_real_roots
from .sequences import check_annihilates, min_poly_of_sequence, power_transform

__all__ = [
    "Rational",
    "IntPolynomial",
    "RealAlgebraic",
    "NumberField",
    "FieldElement",
    "CyclotomicProfile",
    "cyclotomic_poly",
    "cyclotomic_profile",
    "totient",
    "count_roots",
    "factor_int_poly",
    "isolate_real_roots",
    "min_poly_of_sequence",
    "check_annihilates",
    "power_transform",
    "field_arith",
    "field_compare",
    "field_floor",
]
