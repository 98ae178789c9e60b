"""Exact arithmetic: rationals, polynomials, resultants, structured factorization."""

from .laurent import LaurentPoly
from .multipoly import MultiPoly
from .parse import ParseError, parse_multipoly, parse_poly
from .poly import (
    MINUS_INFINITY,
    Poly,
    RingMismatch,
    poly_gcd,
    poly_xgcd,
    square_free_decomposition,
    square_free_part,
)
from .rational import QQ, Rational, qq
from .resultant import bareiss_det, poly_resultant, resultant, sylvester_resultant

__all__ = [
    "LaurentPoly",
    "MINUS_INFINITY",
    "MultiPoly",
    "ParseError",
    "Poly",
    "QQ",
    "Rational",
    "RingMismatch",
    "bareiss_det",
    "parse_multipoly",
    "parse_poly",
    "poly_gcd",
    "poly_resultant",
    "poly_xgcd",
    "qq",
    "resultant",
    "square_free_decomposition",
    "square_free_part",
    "sylvester_resultant",
]
