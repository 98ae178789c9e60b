"""Resultants by the subresultant PRS, plus the Sylvester determinant used as an oracle."""

from __future__ import annotations

from typing import Callable

from .multipoly import MultiPoly
from .poly import Poly
from .rational import qq


class _Domain:
    """Integral-domain operations on coefficient objects."""

    def __init__(self, zero, one, is_zero: Callable, exact_div: Callable):
        self.zero = zero
        self.one = one
        self.is_zero = is_zero
        self.exact_div = exact_div

    def pow(self, x, n: int):
        r = self.one
        while n:
            if n & 1:
                r = r * x
            x = x * x
            n >>= 1
        return r


def _multipoly_domain(vars: tuple[str, ...]) -> _Domain:
    return _Domain(
        MultiPoly.const(0, vars),
        MultiPoly.const(1, vars),
        lambda c: c.is_zero(),
        lambda a, b: a.exact_div(b),
    )


def _ring_domain(ring) -> _Domain:
    return _Domain(ring.zero, ring.one, ring.is_zero, lambda a, b: a * ring.inv(b))


def _strip(cs: list, dom: _Domain) -> list:
    while cs and dom.is_zero(cs[-1]):
        cs.pop()
    return cs


def _prem(a: list, b: list, dom: _Domain) -> list:
    """Pseudo-remainder of coefficient lists (low to high): lc(b)^(da-db+1) a mod b."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while len(a) - 1 >= db and a:
        lead = a[-1]
        shift = len(a) - 1 - db
        a = [x * lb for x in a]
        for j, bj in enumerate(b):
            a[shift + j] = a[shift + j] - lead * bj
        a.pop()
        _strip(a, dom)
        e -= 1
    if e > 0:
        scale = dom.pow(lb, e)
        a = [x * scale for x in a]
    return a


def subresultant_resultant(a: list, b: list, dom: _Domain):
    """Resultant of two coefficient lists via the Collins-Brown subresultant PRS."""
    a = _strip(list(a), dom)
    b = _strip(list(b), dom)
    if not a or not b:
        return dom.zero
    da, db = len(a) - 1, len(b) - 1
    if da == 0 and db == 0:
        return dom.one
    if da == 0:
        return dom.pow(a[0], db)
    if db == 0:
        return dom.pow(b[0], da)
    sign = 1
    if da < db:
        a, b = b, a
        da, db = db, da
        if da % 2 and db % 2:
            sign = -1
    g = dom.one
    h = dom.one
    while db > 0:
        delta = da - db
        if da % 2 and db % 2:
            sign = -sign
        r = _prem(a, b, dom)
        a = b
        denom = g * dom.pow(h, delta)
        b = [dom.exact_div(x, denom) for x in r]
        da = db
        if not b:
            return dom.zero
        db = len(b) - 1
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = dom.exact_div(dom.pow(g, delta), dom.pow(h, delta - 1))
    # b is a nonzero constant of degree 0
    if da == 1:
        res = b[0]
    else:
        res = dom.exact_div(dom.pow(b[0], da), dom.pow(h, da - 1))
    return -res if sign < 0 else res


def resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Res_var(p, q) as a MultiPoly in the remaining variables."""
    p, q = p._align(q)
    if var not in p.free_vars() and var not in q.free_vars():
        raise ValueError(f"variable {var!r} absent from both inputs")
    rest = tuple(v for v in p.vars if v != var)
    cp = [c.with_vars(rest) for c in p.coeffs_in(var)]
    cq = [c.with_vars(rest) for c in q.coeffs_in(var)]
    res = subresultant_resultant(cp, cq, _multipoly_domain(rest))
    return res if isinstance(res, MultiPoly) else MultiPoly.const(res, rest)


def poly_resultant(p: Poly, q: Poly):
    """Resultant of univariate polynomials over a field (element of the coefficient ring)."""
    dom = _ring_domain(p.ring)
    return subresultant_resultant(list(p.coeffs), list(q.coeffs), dom)


def bareiss_det(rows: list[list], dom: _Domain | None = None):
    """Fraction-free determinant over an integral domain; rationals by default."""
    n = len(rows)
    if n == 0:
        return qq(1) if dom is None else dom.one
    if dom is None:
        dom = _Domain(qq(0), qq(1), lambda x: x == 0, lambda a, b: a / b)
    m = [list(r) for r in rows]
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = dom.one
    for k in range(n - 1):
        if dom.is_zero(m[k][k]):
            for i in range(k + 1, n):
                if not dom.is_zero(m[i][k]):
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return dom.zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = dom.exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def sylvester_matrix(a: list, b: list, zero) -> list[list]:
    """Sylvester matrix of coefficient lists given low to high."""
    da, db = len(a) - 1, len(b) - 1
    n = da + db
    rows = []
    for i in range(db):
        row = [zero] * n
        for j, c in enumerate(reversed(a)):
            row[i + j] = c
        rows.append(row)
    for i in range(da):
        row = [zero] * n
        for j, c in enumerate(reversed(b)):
            row[i + j] = c
        rows.append(row)
    return rows


def sylvester_resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Resultant as the Sylvester determinant; the independent oracle for tests."""
    p, q = p._align(q)
    rest = tuple(v for v in p.vars if v != var)
    cp = [c.with_vars(rest) for c in p.coeffs_in(var)]
    cq = [c.with_vars(rest) for c in q.coeffs_in(var)]
    dom = _multipoly_domain(rest)
    if not cp or not cq:
        return dom.zero
    res = bareiss_det(sylvester_matrix(cp, cq, dom.zero), dom)
    return res
