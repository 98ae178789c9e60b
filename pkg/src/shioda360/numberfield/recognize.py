"""Recognition of numerically known algebraic numbers as tower elements.

Integer-relation detection (PSLQ) only proposes candidates; every caller
verifies a candidate by exact arithmetic before using it.
"""

from __future__ import annotations

import mpmath
from mpmath import mpc, mpf

from ..algebra.poly import Poly
from ..algebra.rational import qq
from .tower import FieldTower, TowerElement

_DEFAULT_DPS = 80


def set_default_precision(bits: int) -> None:
    """Working precision (in bits) for root finding and recognition when callers pass none."""
    global _DEFAULT_DPS
    if not 64 <= bits <= 4096:
        raise ValueError("precision must lie in 64..4096 bits")
    _DEFAULT_DPS = max(40, int(bits / 3.33))


def default_dps() -> int:
    return _DEFAULT_DPS


def recognize(z, tower: FieldTower, dps: int | None = None, maxcoeff: int = 10**8) -> TowerElement | None:
    """Propose x in ``tower`` with embed(x) close to z (an mpc computed to ``dps`` digits)."""
    dps = dps or _DEFAULT_DPS
    basis = tower.power_basis()
    with mpmath.workdps(dps):
        prec = int(dps * 3.33) + 16
        vals = [b.embed(prec).center for b in basis]
        alpha = mpmath.sqrt(2) / mpmath.pi
        z = mpc(z)
        vec = [z.real + alpha * z.imag] + [v.real + alpha * v.imag for v in vals]
        rel = mpmath.pslq(vec, maxcoeff=maxcoeff, maxsteps=20000)
        if not rel or rel[0] == 0:
            return None
        coords = [qq(-m, rel[0]) for m in rel[1:]]
        cand = tower.unflatten(coords)
        err = abs(cand.embed(prec).center - z)
        if err > mpf(10) ** (-(dps // 2)):
            return None
    return cand


def numeric_roots(p: Poly, dps: int | None = None) -> list[mpc]:
    """All complex roots of a polynomial with tower or rational coefficients."""
    dps = dps or _DEFAULT_DPS
    with mpmath.workdps(dps):
        prec = int(dps * 3.33) + 16
        cs = []
        for c in p.coeffs:
            if isinstance(c, TowerElement):
                cs.append(c.embed(prec).center)
            else:
                cs.append(mpf(int(c.numerator)) / int(c.denominator))
        if len(cs) == 2:
            return [-cs[0] / cs[1]]
        roots = mpmath.polyroots(cs[::-1], maxsteps=2000, extraprec=4 * prec)
        return [mpc(r) for r in roots]


def _evaluate(p: Poly, x: TowerElement) -> TowerElement:
    acc = x.tower.zero
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def _dedupe(found: list[TowerElement]) -> list[TowerElement]:
    out: list[TowerElement] = []
    for x in found:
        if not any((x - y).is_exact_zero() for y in out):
            out.append(x)
    return out


def roots_in_tower(p: Poly, tower: FieldTower, dps: int | None = None) -> list[TowerElement]:
    """Roots of p lying in ``tower``, each verified exactly (embedding order)."""
    dps = dps or _DEFAULT_DPS
    found = []
    for z in numeric_roots(p, dps):
        cand = recognize(z, tower, dps)
        if cand is not None and _evaluate(p, cand).is_zero():
            found.append(cand)
    return _dedupe(found)


def kummer_roots(w, n: int, tower: FieldTower, dps: int | None = None, limit: int | None = None) -> list[TowerElement]:
    """All x in ``tower`` with x^n = w, searched as c * g^j for the top radical generator g.

    The coefficient c is recognized in the tower one level down, whose degree
    is small, so the integer-relation problems stay low-dimensional.
    """
    dps = dps or _DEFAULT_DPS
    w = tower.coerce(w)
    top = tower.levels[-1]
    base = tower.prefix(tower.depth - 1)
    g = tower.gen(tower.depth - 1)
    found: list[TowerElement] = []
    with mpmath.workdps(dps):
        prec = int(dps * 3.33) + 16
        wz = w.embed(prec).center
        r0 = mpmath.root(wz, n)
        gz = g.embed(prec).center
        targets = [r0 * mpmath.expjpi(mpf(2 * i) / n) for i in range(n)]
        gpow = [mpc(1)]
        for _ in range(top.degree - 1):
            gpow.append(gpow[-1] * gz)
        for z in targets:
            for j in range(top.degree):
                c = recognize(z / gpow[j], base, dps)
                if c is None:
                    continue
                x = tower.coerce(c) * g ** j
                if (x ** n - w).is_zero():
                    found.append(x)
                    break
            if limit is not None and len(found) >= limit:
                break
    return _dedupe(found)
