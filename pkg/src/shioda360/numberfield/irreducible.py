"""Irreducibility certificates for new tower levels.

For a radical relation g^k = w over K the Capelli criterion applies: the
relation is irreducible iff w is not an l-th power in K for every prime l
dividing k, and -4w is not a fourth power when 4 divides k.  Non-powers are
certified either by the norm (N(w) not an l-th power in Q) or, when K is a
cyclotomic field, by reduction modulo a prime of degree one where w is not an
l-th power residue.
"""

from __future__ import annotations

from typing import Sequence

import gmpy2

from ..algebra.factor import structured_factor
from ..algebra.poly import Poly
from ..algebra.rational import QQ, Rational, qq
from .tower import FieldTower, TowerElement


def prime_divisors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def rational_is_power(q: Rational, ell: int) -> bool:
    q = qq(q)
    num, den = int(q.numerator), int(q.denominator)
    if num < 0:
        if ell % 2 == 0:
            return False
        num = -num
    return gmpy2.iroot(num, ell)[1] and gmpy2.iroot(den, ell)[1]


def relative_norm(x: TowerElement) -> TowerElement:
    """Norm from the top level to the tower one level down."""
    from ..algebra.resultant import poly_resultant

    tower = x.tower
    L = tower.depth
    sub = tower.prefix(L - 1)
    lv = tower.levels[L - 1]
    m = Poly([TowerElement(sub, c) for c in lv.minpoly], sub, lv.name)
    a = Poly([TowerElement(sub, c) for c in x.rep], sub, lv.name)
    if a.degree <= 0:
        c = a[0] if a.degree == 0 else sub.zero
        return c ** lv.degree
    return poly_resultant(m, a)


def absolute_norm(x: TowerElement) -> Rational:
    while x.tower.depth:
        x = relative_norm(x)
    return x.rep


def _cyclotomic_residue_nonpower(w: TowerElement, ell: int, attempts: int = 400) -> bool:
    """Certify that w is not an ell-th power in Q(zeta_n) using degree-one primes."""
    tower = w.tower
    lv = tower.levels[0]
    n = lv.order
    coeffs = list(w.rep)
    den = 1
    for c in coeffs:
        den = gmpy2.lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    modulus = gmpy2.lcm(n, ell)
    p = int(modulus) + 1
    tried = 0
    while tried < attempts:
        if gmpy2.is_prime(p) and den % p:
            tried += 1
            r = _primitive_root_of_unity(n, p)
            val = sum(c * pow(r, i, p) for i, c in enumerate(ints)) % p
            if val and pow(val, (p - 1) // ell, p) != 1:
                return True
        p += int(modulus)
    return False


def _primitive_root_of_unity(n: int, p: int) -> int:
    """An element of exact order n in F_p (requires n | p - 1)."""
    factors = prime_divisors(n)
    for g in range(2, p):
        r = pow(g, (p - 1) // n, p)
        if all(pow(r, n // q, p) != 1 for q in factors):
            return r
    raise ArithmeticError("no root of unity of the requested order")


def certify_not_power(w: TowerElement, ell: int) -> bool:
    """True only if w is provably not an ell-th power in its tower."""
    tower = w.tower
    if tower.depth == 0:
        return not rational_is_power(w.rational_value(), ell)
    if tower.degree <= 64:
        try:
            if not rational_is_power(absolute_norm(w), ell):
                return True
        except (ArithmeticError, ZeroDivisionError):
            pass
    if tower.depth == 1 and tower.levels[0].kind == "cyclotomic":
        return _cyclotomic_residue_nonpower(w, ell)
    return False


def verify_radical(tower: FieldTower, base: TowerElement, k: int) -> bool:
    if k == 1:
        return True
    if tower.depth and not tower.verified:
        return False
    base = tower.coerce(base)
    for ell in prime_divisors(k):
        if not certify_not_power(base, ell):
            return False
    if k % 4 == 0 and not certify_not_power(base * -4, 4):
        return False
    return True


def verify_general(tower: FieldTower, coeffs: Sequence[TowerElement]) -> bool:
    if len(coeffs) == 2:
        return True
    if tower.depth == 0:
        p = Poly([c.rational_value() for c in coeffs], QQ, "x")
        f = structured_factor(p)
        return len(f.factors) == 1 and f.factors[0].multiplicity == 1 and f.factors[0].proven_irreducible
    return False
