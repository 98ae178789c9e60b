"""Sparse multivariate polynomials with rational coefficients."""

from __future__ import annotations

from typing import Mapping

from .poly import MINUS_INFINITY, Poly
from .rational import QQ, Rational, qq


class MultiPoly:
    """A finite map from exponent tuples to nonzero rationals over ordered variable names."""

    __slots__ = ("vars", "terms")

    def __init__(self, terms: Mapping[tuple, object] | None = None, vars: tuple[str, ...] = ()):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean: dict[tuple, Rational] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n:
                raise ValueError(f"exponent vector {exps} does not match variables {self.vars}")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent in a polynomial")
            c = qq(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean

    @classmethod
    def _raw(cls, terms: dict, vars: tuple) -> MultiPoly:
        m = object.__new__(cls)
        m.vars = vars
        m.terms = terms
        return m

    @classmethod
    def var(cls, name: str) -> MultiPoly:
        return cls._raw({(1,): qq(1)}, (name,))

    @classmethod
    def const(cls, c, vars: tuple[str, ...] = ()) -> MultiPoly:
        c = qq(c)
        return cls._raw({(0,) * len(vars): c} if c else {}, tuple(vars))

    @classmethod
    def parse(cls, text: str) -> MultiPoly:
        from .parse import parse_multipoly

        return parse_multipoly(text)

    @classmethod
    def from_poly(cls, p: Poly, name: str | None = None) -> MultiPoly:
        name = name or p.var
        return cls._raw({(i,): qq(c) for i, c in enumerate(p.coeffs) if c}, (name,))

    # -- variable bookkeeping -----------------------------------------

    def with_vars(self, vars: tuple[str, ...]) -> MultiPoly:
        """Re-index over ``vars`` (a superset of the variables actually used)."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = {v: i for i, v in enumerate(vars)}
        idx = []
        for i, v in enumerate(self.vars):
            if v in pos:
                idx.append((i, pos[v]))
            elif any(e[i] for e in self.terms):
                raise ValueError(f"variable {v} is used but missing from {vars}")
        out = {}
        n = len(vars)
        for exps, c in self.terms.items():
            e = [0] * n
            for i, j in idx:
                e[j] = exps[i]
            out[tuple(e)] = c
        return MultiPoly._raw(out, vars)

    def free_vars(self) -> tuple[str, ...]:
        used = [False] * len(self.vars)
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def compact(self) -> MultiPoly:
        return self.with_vars(self.free_vars())

    def _align(self, other) -> tuple[MultiPoly, MultiPoly]:
        if not isinstance(other, MultiPoly):
            return self, MultiPoly.const(other, self.vars)
        if other.vars == self.vars:
            return self, other
        vars = list(self.vars)
        for v in other.vars:
            if v not in vars:
                vars.append(v)
        vars = tuple(vars)
        return self.with_vars(vars), other.with_vars(vars)

    # -- arithmetic ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Rational:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values())) if self.terms else qq(0)

    def __add__(self, other) -> MultiPoly:
        a, b = self._align(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(out, a.vars)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly._raw({e: -c for e, c in self.terms.items()}, self.vars)

    def __sub__(self, other) -> MultiPoly:
        a, b = self._align(other)
        return a + (-b)

    def __rsub__(self, other) -> MultiPoly:
        return (-self) + other

    def __mul__(self, other) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            c = qq(other)
            if not c:
                return MultiPoly._raw({}, self.vars)
            return MultiPoly._raw({e: v * c for e, v in self.terms.items()}, self.vars)
        a, b = self._align(other)
        out: dict[tuple, Rational] = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return MultiPoly._raw({e: c for e, c in out.items() if c}, a.vars)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MultiPoly:
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.const(other, self.vars)
            except TypeError:
                return NotImplemented
        a, b = self._align(other)
        return a.terms == b.terms

    def __hash__(self):
        c = self.compact()
        return hash((c.vars, frozenset(c.terms.items())))

    # -- structure ----------------------------------------------------

    def degree(self, var: str):
        if var not in self.vars:
            return 0 if self.terms else MINUS_INFINITY
        if not self.terms:
            return MINUS_INFINITY
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def total_degree(self):
        if not self.terms:
            return MINUS_INFINITY
        return max(sum(e) for e in self.terms)

    def coeffs_in(self, var: str) -> list[MultiPoly]:
        """Coefficients as polynomials in the remaining variables, indexed by power of ``var``."""
        if var not in self.vars:
            return [self] if self.terms else []
        i = self.vars.index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        d = self.degree(var)
        if d is MINUS_INFINITY:
            return []
        buckets: list[dict] = [dict() for _ in range(d + 1)]
        for e, c in self.terms.items():
            buckets[e[i]][e[:i] + e[i + 1:]] = c
        return [MultiPoly._raw(b, rest) for b in buckets]

    @classmethod
    def from_coeffs(cls, coeffs: list[MultiPoly], var: str, vars: tuple[str, ...] | None = None) -> MultiPoly:
        """Inverse of ``coeffs_in``: sum coeffs[k] * var**k."""
        base = tuple(v for v in (vars or ()) if v != var)
        for c in coeffs:
            for v in c.vars:
                if v not in base and v != var:
                    base += (v,)
        out = {}
        for k, c in enumerate(coeffs):
            c = c.with_vars(base)
            for e, val in c.terms.items():
                out[e + (k,)] = val
        res = MultiPoly._raw(out, base + (var,))
        if vars is not None and set(vars) >= set(res.vars):
            res = res.with_vars(tuple(vars))
        return res

    def monomial_content(self) -> tuple[int, ...]:
        if not self.terms:
            return (0,) * len(self.vars)
        return tuple(min(e[i] for e in self.terms) for i in range(len(self.vars)))

    def strip_monomial(self) -> MultiPoly:
        m = self.monomial_content()
        if not any(m):
            return self
        return MultiPoly._raw(
            {tuple(x - y for x, y in zip(e, m)): c for e, c in self.terms.items()}, self.vars
        )

    def primitive(self) -> MultiPoly:
        """Scale so coefficients are coprime integers with positive leading term."""
        if not self.terms:
            return self
        import gmpy2

        den = 1
        for c in self.terms.values():
            den = gmpy2.lcm(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = gmpy2.gcd(num, (c * den).numerator)
        lead = self.terms[max(self.terms)]
        scale = qq(den, num) * (1 if lead > 0 else -1)
        return self * scale

    def subs(self, mapping: Mapping[str, object]) -> MultiPoly:
        """Substitute variables by MultiPolys or rationals."""
        result = MultiPoly._raw({}, ())
        cache: dict[tuple[str, int], MultiPoly] = {}
        for e, c in self.terms.items():
            term = MultiPoly.const(c)
            for v, k in zip(self.vars, e):
                if not k:
                    continue
                if v in mapping:
                    key = (v, k)
                    if key not in cache:
                        val = mapping[v]
                        if not isinstance(val, MultiPoly):
                            val = MultiPoly.const(val)
                        cache[key] = val ** k
                    term = term * cache[key]
                else:
                    term = term * MultiPoly._raw({(k,): qq(1)}, (v,))
            result = result + term
        return result

    def evaluate(self, values: Mapping[str, object], ring=QQ):
        """Evaluate at ring elements for every variable used."""
        acc = ring.zero
        powers: dict[tuple[str, int], object] = {}
        for e, c in self.terms.items():
            term = ring.coerce(c)
            for v, k in zip(self.vars, e):
                if not k:
                    continue
                key = (v, k)
                if key not in powers:
                    powers[key] = values[v] ** k
                term = term * powers[key]
            acc = acc + term
        return acc

    def specialize(self, var: str, values: Mapping[str, object], ring=QQ) -> Poly:
        """Univariate polynomial in ``var`` over ``ring`` after substituting ``values``."""
        coeffs = self.coeffs_in(var)
        return Poly([c.evaluate(values, ring) for c in coeffs], ring, var)

    def to_poly(self, var: str | None = None) -> Poly:
        free = self.free_vars()
        if var is None:
            if len(free) > 1:
                raise ValueError("polynomial is not univariate")
            var = free[0] if free else (self.vars[0] if self.vars else "x")
        elif any(v != var for v in free):
            raise ValueError(f"polynomial involves variables other than {var}")
        return Poly([c.constant_value() for c in self.coeffs_in(var)], QQ, var)

    def exact_div(self, other: MultiPoly) -> MultiPoly:
        """Exact quotient under lex order; raises if the division leaves a remainder."""
        if not isinstance(other, MultiPoly):
            c = qq(other)
            return self * (1 / c)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        a, b = self._align(other)
        if b.is_constant():
            return a * (1 / b.constant_value())
        rem = dict(a.terms)
        lt_b = max(b.terms)
        lc_b = b.terms[lt_b]
        btail = [(e, c) for e, c in b.terms.items() if e != lt_b]
        quot: dict[tuple, Rational] = {}
        while rem:
            lt = max(rem)
            diff = tuple(x - y for x, y in zip(lt, lt_b))
            if any(d < 0 for d in diff):
                raise ArithmeticError("multivariate division is not exact")
            q = rem.pop(lt) / lc_b
            quot[diff] = q
            for e, c in btail:
                key = tuple(x + y for x, y in zip(e, diff))
                s = rem.get(key, 0) - q * c
                if s:
                    rem[key] = s
                else:
                    rem.pop(key, None)
        return MultiPoly._raw(quot, a.vars)

    def __str__(self) -> str:
        from .parse import format_terms

        return format_terms(self.terms, self.vars, lambda c: QQ.format(c))

    def __repr__(self) -> str:
        return f"MultiPoly({self})"
