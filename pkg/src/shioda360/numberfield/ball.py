"""Complex balls (midpoint-radius intervals) on top of mpmath.

Each operation inflates the radius by a bound on the rounding error of the
midpoint computation, so a ball always contains the exact value it tracks.
"""

from __future__ import annotations

import mpmath
from mpmath import mpc, mpf

# safety factor applied to every rounding-error estimate
_SLACK = 4


class Ball:
    __slots__ = ("center", "radius", "prec")

    def __init__(self, center, radius=0, prec: int = 64):
        with mpmath.workprec(prec):
            self.center = mpc(center)
            self.radius = mpf(radius)
        self.prec = prec

    @classmethod
    def exact(cls, value, prec: int) -> Ball:
        """Ball around a rational (or integer) value, rounding accounted for."""
        with mpmath.workprec(prec):
            if hasattr(value, "numerator"):
                c = mpf(int(value.numerator)) / int(value.denominator)
            else:
                c = mpf(value)
            r = abs(c) * _SLACK * mpf(2) ** (-prec)
        return cls(c, r, prec)

    def _eps(self, c) -> mpf:
        return abs(c) * _SLACK * mpf(2) ** (-self.prec)

    def __add__(self, other) -> Ball:
        other = _as_ball(other, self.prec)
        with mpmath.workprec(self.prec):
            c = self.center + other.center
            r = self.radius + other.radius + self._eps(c)
        return Ball(c, r, self.prec)

    __radd__ = __add__

    def __neg__(self) -> Ball:
        return Ball(-self.center, self.radius, self.prec)

    def __sub__(self, other) -> Ball:
        return self + (-_as_ball(other, self.prec))

    def __rsub__(self, other) -> Ball:
        return _as_ball(other, self.prec) - self

    def __mul__(self, other) -> Ball:
        other = _as_ball(other, self.prec)
        with mpmath.workprec(self.prec):
            c = self.center * other.center
            r = (
                abs(self.center) * other.radius
                + abs(other.center) * self.radius
                + self.radius * other.radius
                + self._eps(c)
            )
        return Ball(c, r, self.prec)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Ball:
        result = Ball(1, 0, self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def abs_upper(self) -> mpf:
        with mpmath.workprec(self.prec):
            return abs(self.center) + self.radius

    def abs_lower(self) -> mpf:
        with mpmath.workprec(self.prec):
            return max(mpf(0), abs(self.center) - self.radius)

    def contains_zero(self) -> bool:
        with mpmath.workprec(self.prec):
            return abs(self.center) <= self.radius

    def contains(self, z) -> bool:
        with mpmath.workprec(self.prec):
            return abs(self.center - mpc(z)) <= self.radius

    def overlaps(self, other: Ball) -> bool:
        with mpmath.workprec(max(self.prec, other.prec)):
            return abs(self.center - other.center) <= self.radius + other.radius

    def __complex__(self) -> complex:
        return complex(self.center)

    def __repr__(self) -> str:
        return f"Ball({mpmath.nstr(self.center, 20)} +/- {mpmath.nstr(self.radius, 3)})"


def _as_ball(x, prec: int) -> Ball:
    if isinstance(x, Ball):
        return x
    return Ball.exact(x, prec)
