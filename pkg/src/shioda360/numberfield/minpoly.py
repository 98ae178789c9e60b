"""Minimal polynomials over Q of tower elements."""

from __future__ import annotations

from ..algebra.factor import structured_factor
from ..algebra.multipoly import MultiPoly
from ..algebra.poly import Poly, square_free_part
from ..algebra.rational import QQ
from ..algebra.resultant import resultant
from .tower import PRECISION_SCHEDULE, TowerElement

DEFAULT_DEGREE_BOUND = 64


def _level_relation(tower, k: int) -> MultiPoly:
    """The k-th relation as a polynomial in the generator names (rational coefficients)."""
    lv = tower.levels[k]
    sub = tower.prefix(k)
    acc = MultiPoly.const(0)
    g = MultiPoly.var(lv.name)
    for i, c in enumerate(lv.minpoly):
        acc = acc + _as_multipoly(TowerElement(sub, c)) * g ** i
    return acc


def _as_multipoly(x: TowerElement) -> MultiPoly:
    names = x.tower.names
    return MultiPoly({e: c for e, c in x.terms().items()}, names) if names else MultiPoly.const(x.rep)


def characteristic_polynomial(x: TowerElement, var: str = "x") -> Poly:
    """Characteristic polynomial of multiplication by x, via iterated resultants."""
    tower = x.tower
    t = MultiPoly.var("_t")
    acc = t - _as_multipoly(x)
    for k in range(tower.depth - 1, -1, -1):
        name = tower.names[k]
        rel = _level_relation(tower, k)
        if name in acc.free_vars():
            acc = resultant(rel, acc, name)
        else:
            acc = acc ** tower.levels[k].degree
    p = acc.to_poly("_t")
    return Poly(p.coeffs, QQ, var).monic()


def minimal_polynomial(x: TowerElement, degree_bound: int = DEFAULT_DEGREE_BOUND, var: str = "x") -> Poly:
    """Monic minimal polynomial of x over Q.

    The characteristic polynomial is reduced to its square-free part, split with
    the structured factorizer, and the factor vanishing at the embedding of x is
    kept.  If that factor is not certified irreducible, the first linear
    dependency among powers of x (exact linear algebra in the power basis)
    decides.
    """
    tower = x.tower
    if tower.degree > degree_bound:
        raise ValueError(f"tower degree {tower.degree} exceeds the bound {degree_bound}")
    cp = characteristic_polynomial(x, var)
    sqf = square_free_part(cp)
    fac = structured_factor(sqf)
    chosen = None
    for f in fac.factors:
        # a factor is kept only if its value ball contains zero at every precision
        if all(f.poly(x.embed(prec)).contains_zero() for prec in PRECISION_SCHEDULE[:2]):
            chosen = f
            break
    if chosen is not None and chosen.proven_irreducible and _annihilates(chosen.poly, x):
        return chosen.poly
    return _linear_dependency_minpoly(x, var)


def _annihilates(p: Poly, x: TowerElement) -> bool:
    acc = x.tower.zero
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc.is_zero()


def _linear_dependency_minpoly(x: TowerElement, var: str) -> Poly:
    """Smallest monic relation among 1, x, x^2, ... found by exact elimination."""
    from ..algebra.rational import qq

    tower = x.tower
    n = tower.degree
    rows: list[tuple[list, list]] = []  # reduced vector, combination
    power = tower.one
    pivots: list[int] = []
    for k in range(n + 1):
        vec = [qq(c) for c in tower.flatten(power)]
        comb = [qq(0)] * (n + 1)
        comb[k] = qq(1)
        for (rv, rc), piv in zip(rows, pivots):
            f = vec[piv]
            if f:
                vec = [a - f * b for a, b in zip(vec, rv)]
                comb = [a - f * b for a, b in zip(comb, rc)]
        nz = next((i for i, v in enumerate(vec) if v), None)
        if nz is None:
            return Poly(comb[: k + 1], QQ, var).monic()
        inv = 1 / vec[nz]
        rows.append(([v * inv for v in vec], [c * inv for c in comb]))
        pivots.append(nz)
        power = power * x
    raise ArithmeticError("no linear dependency found among powers")
