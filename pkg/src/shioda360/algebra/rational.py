"""Exact rationals backed by gmpy2's ``mpq`` and the field object ``QQ``."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

import gmpy2

Rational = type(gmpy2.mpq(0))


def qq(value, den=None) -> Rational:
    """Coerce ``value`` (int, Fraction, mpq, or ``"p/q"`` string) to an exact rational."""
    if den is not None:
        if den == 0:
            raise ZeroDivisionError("rational with zero denominator")
        return gmpy2.mpq(value, den)
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        return gmpy2.mpq(int(value))
    if isinstance(value, (int, type(gmpy2.mpz(0)))):
        return gmpy2.mpq(value)
    if isinstance(value, (Fraction, _RationalABC)):
        return gmpy2.mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip().replace(" ", "")
        if not text:
            raise ValueError("empty rational literal")
        try:
            return gmpy2.mpq(Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational literal {value!r}") from exc
    raise TypeError(f"cannot coerce {type(value).__name__} to a rational")


def is_rational(value) -> bool:
    return isinstance(value, (Rational, int, Fraction)) and not isinstance(value, bool)


def to_fraction(value) -> Fraction:
    q = qq(value)
    return Fraction(int(q.numerator), int(q.denominator))


def fmt(value) -> str:
    q = qq(value)
    if q.denominator == 1:
        return str(int(q.numerator))
    return f"{int(q.numerator)}/{int(q.denominator)}"


class RationalField:
    """The coefficient ring of rationals; the ring protocol shared with towers."""

    name = "QQ"

    @property
    def zero(self) -> Rational:
        return gmpy2.mpq(0)

    @property
    def one(self) -> Rational:
        return gmpy2.mpq(1)

    def coerce(self, value) -> Rational:
        return qq(value)

    def is_zero(self, value) -> bool:
        return value == 0

    def inv(self, value) -> Rational:
        if value == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / qq(value)

    def format(self, value) -> str:
        return fmt(value)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    def __repr__(self) -> str:
        return "QQ"


QQ = RationalField()
