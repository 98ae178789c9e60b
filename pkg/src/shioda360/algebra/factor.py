"""Structured factorization over Q: the cases that actually arise, plus verification of given splits.

No general factoring algorithm is attempted.  A factor is flagged ``proven``
only when an argument here establishes irreducibility over Q: degree one,
a closed-form test for degree at most four, or a degree-pattern argument
from distinct-degree factorizations modulo several primes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Iterable, Sequence

import gmpy2
import mpmath

from .poly import Poly, poly_gcd, product, square_free_decomposition
from .rational import QQ, Rational, qq


@dataclass(frozen=True)
class Factor:
    poly: Poly
    multiplicity: int
    proven_irreducible: bool
    note: str = ""


@dataclass
class Factorization:
    """``unit * prod(f.poly ** f.multiplicity)``; non-constant factors are monic."""

    unit: Rational
    factors: list[Factor] = field(default_factory=list)

    def expand(self) -> Poly:
        var = self.factors[0].poly.var if self.factors else "x"
        acc = Poly([self.unit], QQ, var)
        for f in self.factors:
            acc = acc * f.poly ** f.multiplicity
        return acc

    def pairs(self) -> list[tuple[Poly, int]]:
        return [(f.poly, f.multiplicity) for f in self.factors]

    @property
    def complete(self) -> bool:
        return all(f.proven_irreducible for f in self.factors)

    def __str__(self) -> str:
        parts = [] if self.unit == 1 else [QQ.format(self.unit)]
        for f in self.factors:
            s = f"({f.poly})"
            parts.append(s if f.multiplicity == 1 else f"{s}^{f.multiplicity}")
        return "*".join(parts) or "1"


# -- integer helpers ----------------------------------------------------


def integer_primitive(p: Poly) -> tuple[Rational, list[int]]:
    """Return (scale, integer coeffs) with p = scale * sum(coeffs[i] x^i), coeffs coprime, lc > 0."""
    den = 1
    for c in p.coeffs:
        den = gmpy2.lcm(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return qq(g, den), [c // g for c in ints]


def _divisors(n: int, limit: int = 10**6) -> list[int] | None:
    n = abs(n)
    if n == 0:
        return None
    small, large = [], []
    d = 1
    while d * d <= n:
        if d > limit:
            return None
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: Poly) -> list[Rational]:
    """All rational roots, found by locating real roots numerically and testing nearby candidates.

    Candidates p/q with q dividing the leading coefficient are exact-checked.
    """
    if p.degree < 1:
        return []
    _, ints = integer_primitive(p)
    roots: list[Rational] = []
    val = 0
    while ints[val] == 0:
        val += 1
    if val:
        roots.append(qq(0))
    core = ints[val:]
    if len(core) == 1:
        return roots
    lead_divs = _divisors(core[-1])
    if lead_divs is None:
        lead_divs = [1]
    with mpmath.workdps(30):
        approx = mpmath.polyroots(list(reversed([mpmath.mpf(c) for c in core])), maxsteps=200, extraprec=200)
    core_poly = Poly(core, QQ, p.var)
    found = set()
    for z in approx:
        if abs(mpmath.im(z)) > 1e-6 * max(1, abs(z)):
            continue
        x = mpmath.re(z)
        for q in lead_divs:
            cand = qq(int(mpmath.nint(x * q)), q)
            if cand in found or cand == 0:
                continue
            if core_poly(cand) == 0:
                found.add(cand)
    roots.extend(sorted(found))
    return roots


# -- closed forms for degree <= 4 ----------------------------------------


def _split_small(p: Poly) -> list[Poly] | None:
    """Factor a square-free rational polynomial of degree <= 4 into irreducible monic factors.

    Returns None when the closed form cannot decide (huge constant terms in the quartic case).
    """
    p = p.monic()
    d = p.degree
    if d <= 1:
        return [p]
    roots = rational_roots(p)
    if roots:
        lin = Poly([-roots[0], 1], QQ, p.var)
        rest = _split_small(p.exact_div(lin))
        return None if rest is None else [lin] + rest
    if d <= 3:
        return [p]
    # quartic with no rational root: look for a split into two quadratics
    _, ints = integer_primitive(p)
    a0, a1, a2, a3, a4 = ints
    # monic integer model: substitute x -> y / a4 to make it monic over Z
    m = [a0 * a4**3, a1 * a4**2, a2 * a4, a3, 1]
    mdivs = _divisors(m[0], limit=10**6)
    if mdivs is None:
        return None
    x = p.var
    for s in sorted(set(mdivs + [-t for t in mdivs])):
        t = m[0] // s
        # (y^2 + u y + s)(y^2 + w y + t): u + w = m3, s + t + u w = m2, u t + w s = m1
        if s == t:
            # u + w = m3 and s (u + w) = m1 needs separate handling; u w = m2 - 2 s
            if s * m[3] != m[1]:
                continue
            uw = m[2] - 2 * s
            disc = m[3] ** 2 - 4 * uw
            if disc < 0 or isqrt(disc) ** 2 != disc:
                continue
            u = (m[3] + isqrt(disc)) // 2
            cands = [u]
        else:
            # u t + (m3 - u) s = m1  =>  u (t - s) = m1 - m3 s
            num = m[1] - m[3] * s
            if num % (t - s):
                continue
            cands = [num // (t - s)]
        for u in cands:
            w = m[3] - u
            if s + t + u * w != m[2]:
                continue
            q1 = Poly([qq(s, a4 * a4), qq(u, a4), 1], QQ, x)
            q2 = Poly([qq(t, a4 * a4), qq(w, a4), 1], QQ, x)
            if q1 * q2 == p:
                return [q1, q2]
    return [p]


# -- modular degree patterns ---------------------------------------------


def _primes(start: int = 3):
    n = start
    while True:
        if gmpy2.is_prime(n):
            yield n
        n += 1


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = [x % p for x in a]
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv % p
        if c:
            sh = len(a) - 1 - dm
            for j, mj in enumerate(m):
                a[sh + j] = (a[sh + j] - c * mj) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_mod(out, m, p)


def _gcd_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = [x % p for x in a]
    b = [x % p for x in b]
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    while b:
        a, b = b, _poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def _powmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result, base = [1], _poly_mod(base, m, p)
    while e:
        if e & 1:
            result = _mulmod(result, base, m, p)
        base = _mulmod(base, base, m, p)
        e >>= 1
    return result


def _divmod_exact(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    q = [0] * (len(a) - db)
    while len(a) - 1 >= db:
        c = a[-1] * inv % p
        sh = len(a) - 1 - db
        q[sh] = c
        for j, bj in enumerate(b):
            a[sh + j] = (a[sh + j] - c * bj) % p
        a.pop()
    return q


def ddf_degrees(ints: list[int], p: int) -> list[int] | None:
    """Degrees of the irreducible factors mod p (distinct-degree factorization).

    Returns None when p divides the leading coefficient or the reduction is not square-free.
    """
    if ints[-1] % p == 0:
        return None
    inv = pow(ints[-1], -1, p)
    f = [x * inv % p for x in ints]
    df = [(i * c) % p for i, c in enumerate(f)][1:]
    if len(_gcd_mod(f, df, p)) > 1:
        return None
    degrees: list[int] = []
    rest, h, d = f, [0, 1], 0
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        h = _powmod(h, p, rest, p)
        diff = h + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _gcd_mod(rest, diff, p)
        if len(g) > 1:
            degrees.extend([d] * ((len(g) - 1) // d))
            rest = _divmod_exact(rest, g, p)
            h = _poly_mod(h, rest, p)
    if len(rest) > 1:
        degrees.append(len(rest) - 1)
    return sorted(degrees)


def degree_pattern_irreducible(p: Poly, primes: int = 40) -> bool:
    """True if the degree sets of mod-p factorizations admit no proper factor degree over Q."""
    n = p.degree
    if n <= 1:
        return True
    _, ints = integer_primitive(p)
    possible = set(range(1, n))
    used = 0
    for q in _primes(3):
        degs = ddf_degrees(ints, q)
        if degs is None:
            continue
        sums = {0}
        for dg in degs:
            sums |= {s + dg for s in sums}
        possible &= sums
        used += 1
        if not possible:
            return True
        if used >= primes:
            break
    return False


# -- the main entry point ------------------------------------------------


def _prove(p: Poly) -> tuple[bool, str]:
    if p.degree <= 1:
        return True, "linear"
    if p.degree <= 4:
        split = _split_small(p)
        if split is not None and len(split) == 1:
            return True, "closed form"
    if degree_pattern_irreducible(p):
        return True, "degree pattern"
    return False, ""


def _substitution_split(p: Poly) -> tuple[int, Poly, list[Poly]] | None:
    """If p(x) = psi(x^k) with k maximal > 1 and deg psi <= 4, split psi and recombine."""
    exps = [i for i, c in enumerate(p.coeffs) if c]
    k = 0
    for e in exps:
        k = gcd(k, e)
    if k <= 1:
        return None
    psi = Poly([p.coeffs[i] for i in range(0, len(p.coeffs), k)], QQ, p.var)
    if psi.degree > 4:
        return k, psi, []
    pieces = _split_small(psi)
    if pieces is None:
        return k, psi, []
    xk = Poly.monomial(k, 1, QQ, p.var)
    return k, psi, [piece.compose(xk).monic() for piece in pieces]


def _split_structured(g: Poly) -> list[tuple[Poly, str]]:
    if g.degree <= 4:
        pieces = _split_small(g)
        if pieces is not None:
            return [(piece, "closed form") for piece in pieces]
        return [(g.monic(), "")]
    sub = _substitution_split(g)
    if not sub or not sub[2]:
        return [(g.monic(), "")]
    out = []
    for piece in sub[2]:
        if piece.degree <= 4:
            out.extend(_split_structured(piece))
        else:
            out.append((piece, f"psi(x^{sub[0]}) split"))
    return out


def structured_factor(p: Poly, candidates: Sequence[Poly] | None = None) -> Factorization:
    """Partial factorization over Q; see the module docstring for what counts as proven."""
    if p.is_zero():
        raise ValueError("structured_factor of the zero polynomial")
    if p.ring != QQ:
        raise TypeError("structured_factor works over the rationals only")
    unit = p.lc
    if p.degree == 0:
        return Factorization(unit, [])
    work: list[tuple[Poly, int]] = square_free_decomposition(p)
    pending: list[tuple[Poly, int, str]] = []
    for g, mult in work:
        for r in rational_roots(g):
            lin = Poly([-r, 1], QQ, g.var)
            pending.append((lin, mult, "rational root"))
            g = g.exact_div(lin)
        if g.degree > 0:
            for piece, note in _split_structured(g):
                pending.append((piece, mult, note))
    if candidates:
        pending = _refine_with_candidates(pending, [c.monic() for c in candidates if c.degree > 0])
    factors: list[Factor] = []
    for g, mult, note in pending:
        ok, why = _prove(g)
        factors.append(Factor(g, mult, ok, why or note or "unresolved"))
    factors.sort(key=lambda f: (f.poly.degree, [str(c) for c in f.poly.coeffs]))
    result = Factorization(unit, factors)
    if result.expand() != p:
        raise AssertionError("factorization does not reproduce its input")
    return result


def _refine_with_candidates(pending, candidates: list[Poly]):
    out = []
    for g, mult, note in pending:
        rest = g
        for c in candidates:
            while rest.degree >= c.degree > 0:
                q, r = rest.divrem(c)
                if not r.is_zero():
                    break
                out.append((c, mult, "verified candidate"))
                rest = q
        if rest.degree > 0:
            out.append((rest.monic(), mult, note))
    return out


def verify_factor_list(p: Poly, candidates: Iterable[Poly]) -> bool:
    """True iff the product of ``candidates`` equals ``p`` up to a nonzero rational unit."""
    cands = list(candidates)
    prod = product(cands, QQ, p.var)
    if prod.is_zero() or prod.degree != p.degree:
        return False
    return prod.scale(p.lc / prod.lc) == p


def is_irreducible_proven(p: Poly) -> bool:
    return _prove(p.monic())[0]


__all__ = [
    "Factor",
    "Factorization",
    "ddf_degrees",
    "degree_pattern_irreducible",
    "integer_primitive",
    "is_irreducible_proven",
    "poly_gcd",
    "rational_roots",
    "structured_factor",
    "verify_factor_list",
]
