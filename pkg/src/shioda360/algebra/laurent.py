"""Laurent polynomials (integer exponents of either sign) over a coefficient ring."""

from __future__ import annotations

from typing import Mapping

from .poly import Poly, RingMismatch
from .rational import QQ


class LaurentPoly:
    __slots__ = ("coeffs", "ring", "var")

    def __init__(self, coeffs: Mapping[int, object] | None = None, ring=QQ, var: str = "v"):
        clean = {}
        for k, c in (coeffs or {}).items():
            c = ring.coerce(c)
            if not ring.is_zero(c):
                clean[int(k)] = c
        self.coeffs: dict[int, object] = clean
        self.ring = ring
        self.var = var

    @classmethod
    def _raw(cls, coeffs: dict, ring, var: str) -> LaurentPoly:
        lp = object.__new__(cls)
        lp.coeffs = {k: c for k, c in coeffs.items() if not ring.is_zero(c)}
        lp.ring = ring
        lp.var = var
        return lp

    @classmethod
    def from_poly(cls, p: Poly, shift: int = 0, var: str | None = None) -> LaurentPoly:
        return cls({i + shift: c for i, c in enumerate(p.coeffs)}, p.ring, var or p.var)

    @classmethod
    def monomial(cls, k: int, c=1, ring=QQ, var: str = "v") -> LaurentPoly:
        return cls({k: c}, ring, var)

    def is_zero(self) -> bool:
        return not self.coeffs

    def exponents(self) -> list[int]:
        return sorted(self.coeffs)

    def __getitem__(self, k: int):
        return self.coeffs.get(k, self.ring.zero)

    @property
    def max_exp(self):
        return max(self.coeffs) if self.coeffs else None

    @property
    def min_exp(self):
        return min(self.coeffs) if self.coeffs else None

    def _check(self, other) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            return LaurentPoly({0: other}, self.ring, self.var)
        if other.ring != self.ring:
            raise RingMismatch(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
        return other

    def __add__(self, other) -> LaurentPoly:
        other = self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return LaurentPoly._raw(out, self.ring, self.var)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw({k: -c for k, c in self.coeffs.items()}, self.ring, self.var)

    def __sub__(self, other) -> LaurentPoly:
        return self + (-self._check(other))

    def __rsub__(self, other) -> LaurentPoly:
        return self._check(other) - self

    def __mul__(self, other) -> LaurentPoly:
        other = self._check(other)
        out: dict[int, object] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                out[i + j] = out[i + j] + a * b if i + j in out else a * b
        return LaurentPoly._raw(out, self.ring, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if len(self.coeffs) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (k, c), = self.coeffs.items()
            return LaurentPoly._raw({k * n: self.ring.inv(c) ** (-n)}, self.ring, self.var)
        result = LaurentPoly({0: 1}, self.ring, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        try:
            return (self - other).is_zero()
        except RingMismatch:
            return False

    __hash__ = None

    def shift(self, k: int) -> LaurentPoly:
        return LaurentPoly._raw({e + k: c for e, c in self.coeffs.items()}, self.ring, self.var)

    def substitute_power(self, k: int, offset: int = 0, var: str | None = None) -> LaurentPoly:
        """Return ``sum c_e * t**(k*e + offset)``."""
        return LaurentPoly._raw(
            {k * e + offset: c for e, c in self.coeffs.items()}, self.ring, var or self.var
        )

    def reflect(self, n: int) -> LaurentPoly:
        """Return ``v**n * f(1/v)``: the coefficient at e moves to n - e."""
        return LaurentPoly._raw({n - e: c for e, c in self.coeffs.items()}, self.ring, self.var)

    def map_coeffs(self, fn, ring=None) -> LaurentPoly:
        ring = ring or self.ring
        return LaurentPoly({k: fn(c) for k, c in self.coeffs.items()}, ring, self.var)

    def to_poly(self) -> Poly:
        if self.coeffs and min(self.coeffs) < 0:
            raise ValueError("Laurent polynomial has negative exponents")
        top = max(self.coeffs) if self.coeffs else -1
        return Poly([self[i] for i in range(top + 1)], self.ring, self.var)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        from .parse import format_terms

        pos = {(k,): c for k, c in self.coeffs.items() if k >= 0}
        neg = {k: c for k, c in self.coeffs.items() if k < 0}
        text = format_terms(pos, (self.var,), self.ring.format) if pos else ""
        for k in sorted(neg, reverse=True):
            cs = self.ring.format(neg[k])
            term = f"({cs})*{self.var}^({k})"
            text = f"{text} + {term}" if text else term
        return text

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"
