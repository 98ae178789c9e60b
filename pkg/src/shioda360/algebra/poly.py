"""Dense univariate polynomials over a declared coefficient ring."""

from __future__ import annotations

from typing import Iterable, Sequence

from .rational import QQ


class _MinusInfinity:
    """Degree of the zero polynomial; orders below every integer, refuses arithmetic."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("-inf-degree")

    def __repr__(self):
        return "-inf"

    def _refuse(self, *args):
        raise TypeError("arithmetic on the degree of the zero polynomial")

    __add__ = __radd__ = __sub__ = __rsub__ = __mul__ = __rmul__ = _refuse
    __neg__ = __int__ = __index__ = _refuse


MINUS_INFINITY = _MinusInfinity()


class RingMismatch(TypeError):
    pass


class Poly:
    """Polynomial ``sum coeffs[i] * var**i``; trailing zeros are stripped on construction."""

    __slots__ = ("coeffs", "ring", "var")

    def __init__(self, coeffs: Iterable = (), ring=QQ, var: str = "x"):
        cs = [ring.coerce(c) for c in coeffs]
        while cs and ring.is_zero(cs[-1]):
            cs.pop()
        self.coeffs: tuple = tuple(cs)
        self.ring = ring
        self.var = var

    @classmethod
    def _raw(cls, coeffs: list, ring, var: str) -> Poly:
        # coefficients already in the ring; only strip
        while coeffs and ring.is_zero(coeffs[-1]):
            coeffs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(coeffs)
        p.ring = ring
        p.var = var
        return p

    @classmethod
    def monomial(cls, k: int, c=1, ring=QQ, var: str = "x") -> Poly:
        return cls([0] * k + [c], ring, var)

    @classmethod
    def gen(cls, ring=QQ, var: str = "x") -> Poly:
        return cls([0, 1], ring, var)

    # -- basic queries -------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else MINUS_INFINITY

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero

    def __len__(self) -> int:
        return len(self.coeffs)

    def _check(self, other) -> Poly:
        if not isinstance(other, Poly):
            return Poly([other], self.ring, self.var)
        if other.ring != self.ring:
            raise RingMismatch(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
        return other

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other) -> Poly:
        other = self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._raw(out, self.ring, self.var)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw([-c for c in self.coeffs], self.ring, self.var)

    def __sub__(self, other) -> Poly:
        return self + (-self._check(other))

    def __rsub__(self, other) -> Poly:
        return self._check(other) - self

    def __mul__(self, other) -> Poly:
        other = self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw([], self.ring, self.var)
        out = [self.ring.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if self.ring.is_zero(ai):
                continue
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return Poly._raw(out, self.ring, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly([1], self.ring, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> Poly:
        c = self.ring.coerce(c)
        return Poly._raw([c * x for x in self.coeffs], self.ring, self.var)

    def divrem(self, other) -> tuple[Poly, Poly]:
        other = self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        ring = self.ring
        inv = ring.inv(other.lc)
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        if len(rem) - 1 < db:
            return Poly._raw([], ring, self.var), self
        quot = [ring.zero] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if ring.is_zero(c):
                continue
            q = c * inv
            quot[k - db] = q
            for j, bj in enumerate(other.coeffs):
                rem[k - db + j] = rem[k - db + j] - q * bj
        # the leading slots are zero by construction
        rem = rem[:db]
        return Poly._raw(quot, ring, self.var), Poly._raw(rem, ring, self.var)

    def __floordiv__(self, other) -> Poly:
        return self.divrem(other)[0]

    def __mod__(self, other) -> Poly:
        return self.divrem(other)[1]

    def exact_div(self, other) -> Poly:
        q, r = self.divrem(other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            other = Poly([other], self.ring, self.var)
        if other.ring != self.ring or len(other.coeffs) != len(self.coeffs):
            return False
        return all(self.ring.is_zero(a - b) for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.coeffs, self.var)) if self.ring == QQ else id(self)

    # -- evaluation and calculus ---------------------------------------

    def __call__(self, value):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * value + c
        if acc is None:
            return self.ring.zero
        return acc

    def compose(self, other: Poly) -> Poly:
        acc = Poly([], self.ring, self.var)
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def derivative(self) -> Poly:
        return Poly._raw([c * i for i, c in enumerate(self.coeffs)][1:], self.ring, self.var)

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self.scale(self.ring.inv(self.lc))

    def reverse(self, n: int | None = None) -> Poly:
        """Return ``x**n * p(1/x)`` with ``n`` defaulting to the degree."""
        if n is None:
            n = len(self.coeffs) - 1
        if n < len(self.coeffs) - 1:
            raise ValueError("reversal length below degree")
        cs = list(self.coeffs) + [self.ring.zero] * (n + 1 - len(self.coeffs))
        return Poly._raw(cs[::-1], self.ring, self.var)

    def valuation(self):
        """Order of vanishing at zero; ``MINUS_INFINITY`` is never returned, zero gives None."""
        for i, c in enumerate(self.coeffs):
            if not self.ring.is_zero(c):
                return i
        return None

    def map_coeffs(self, fn, ring=None) -> Poly:
        ring = ring or self.ring
        return Poly([fn(c) for c in self.coeffs], ring, self.var)

    def exponents(self) -> list[int]:
        return [i for i, c in enumerate(self.coeffs) if not self.ring.is_zero(c)]

    # -- formatting ----------------------------------------------------

    def __str__(self) -> str:
        from .parse import format_terms

        terms = {(i,): c for i, c in enumerate(self.coeffs) if not self.ring.is_zero(c)}
        return format_terms(terms, (self.var,), self.ring.format)

    def __repr__(self) -> str:
        return f"Poly({self}, ring={self.ring!r})"


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd over a field; gcd(0, 0) is the zero polynomial."""
    if p.ring != q.ring:
        raise RingMismatch("ring mismatch in gcd")
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(p: Poly, q: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with s*p + t*q = g and g monic."""
    ring = p.ring
    zero, one = Poly([], ring, p.var), Poly([1], ring, p.var)
    r0, r1, s0, s1, t0, t1 = p, q, one, zero, zero, one
    while not r1.is_zero():
        quo, rem = r0.divrem(r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = ring.inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def square_free_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm in characteristic zero; returns monic (factor, multiplicity) pairs."""
    if p.is_zero():
        raise ValueError("square-free decomposition of zero")
    if p.degree == 0:
        return []
    out: list[tuple[Poly, int]] = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        b = b.exact_div(g)
        c = d.exact_div(g)
        if g.degree > 0:
            out.append((g.monic(), i))
        d = c - b.derivative()
        i += 1
    return out


def square_free_part(p: Poly) -> Poly:
    if p.degree == 0:
        return Poly([1], p.ring, p.var)
    return p.exact_div(poly_gcd(p, p.derivative())).monic()


def product(polys: Sequence[Poly], ring=QQ, var: str = "x") -> Poly:
    acc = Poly([1], ring, var)
    for p in polys:
        acc = acc * p
    return acc
