"""Algebraic numbers in explicit towers of cyclotomic and radical extensions."""

from .ball import Ball
from .construct import adjoin_cyclotomic, adjoin_radical, adjoin_root, cyclotomic_poly, make_cyclotomic
from .minpoly import characteristic_polynomial, minimal_polynomial
from .tower import (
    PRECISION_SCHEDULE,
    FieldTower,
    TowerElement,
    TowerMismatch,
    UndecidedZeroTest,
)

__all__ = [
    "Ball",
    "FieldTower",
    "PRECISION_SCHEDULE",
    "TowerElement",
    "TowerMismatch",
    "UndecidedZeroTest",
    "adjoin_cyclotomic",
    "adjoin_radical",
    "adjoin_root",
    "characteristic_polynomial",
    "cyclotomic_poly",
    "make_cyclotomic",
    "minimal_polynomial",
]
