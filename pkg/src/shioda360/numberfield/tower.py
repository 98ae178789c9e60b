"""Towers of simple extensions of Q with explicit cyclotomic, radical or general generators.

An element of a tower with L levels is stored as a nested tuple: depth 0 is a
rational, depth k is a tuple of ``deg(level k)`` depth-(k-1) entries, the
coefficients of powers of the k-th generator.  Every level relation is monic,
and products are reduced level by level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import mpmath
from mpmath import mpc, mpf

from ..algebra.parse import format_terms, parse_in_ring
from ..algebra.poly import Poly, poly_xgcd
from ..algebra.rational import QQ, Rational, qq
from .ball import Ball

PRECISION_SCHEDULE = (64, 256, 1024, 4096)
MAX_CYCLOTOMIC = 120


class UndecidedZeroTest(ArithmeticError):
    """Raised when neither exact reduction nor the embedding at 4096 bits decides zero-ness."""


class TowerMismatch(TypeError):
    pass


@dataclass(frozen=True)
class Level:
    name: str
    degree: int
    minpoly: tuple  # depth-(index) reps, low to high, monic
    kind: str  # "cyclotomic" | "radical" | "general"
    order: int  # n for cyclotomic, k for radical, 0 otherwise
    branch: tuple[str, str]  # decimal strings for the real and imaginary parts
    branch_radius: str
    verified: bool

    def branch_value(self) -> mpc:
        with mpmath.workprec(256):
            return mpc(mpf(self.branch[0]), mpf(self.branch[1]))


class FieldTower:
    """An immutable tower; also acts as the coefficient ring for ``Poly``."""

    def __init__(self, levels: Sequence[Level] = ()):
        self.levels: tuple[Level, ...] = tuple(levels)
        self.depth = len(self.levels)
        self.names = tuple(lv.name for lv in self.levels)
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be distinct")
        self.degree = math.prod(lv.degree for lv in self.levels)
        self._zeros = [qq(0)]
        self._ones = [qq(1)]
        for lv in self.levels:
            self._zeros.append((self._zeros[-1],) * lv.degree)
            self._ones.append((self._ones[-1],) + (self._zeros[-2],) * (lv.degree - 1))
        self._tails = [
            [(i, c) for i, c in enumerate(lv.minpoly[:-1]) if not self._rep_is_zero(c, k)]
            for k, lv in enumerate(self.levels)
        ]
        self._ball_cache: dict[tuple[int, int], Ball] = {}
        self._prefix_cache: dict[int, FieldTower] = {}
        self._sig = hash(self.levels)

    # -- identity -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return isinstance(other, FieldTower) and self._sig == other._sig and self.levels == other.levels

    def __hash__(self) -> int:
        return self._sig

    def __repr__(self) -> str:
        if not self.levels:
            return "QQ-tower"
        return "Tower(" + ", ".join(f"{lv.name}:{lv.degree}" for lv in self.levels) + ")"

    @property
    def verified(self) -> bool:
        return all(lv.verified for lv in self.levels)

    @property
    def name(self) -> str:
        return repr(self)

    def prefix(self, k: int) -> FieldTower:
        if k == self.depth:
            return self
        if k not in self._prefix_cache:
            self._prefix_cache[k] = FieldTower(self.levels[:k])
        return self._prefix_cache[k]

    def is_prefix_of(self, other: FieldTower) -> bool:
        return other.levels[: self.depth] == self.levels

    def extend(self, level: Level) -> FieldTower:
        return FieldTower(self.levels + (level,))

    # -- rep arithmetic -------------------------------------------------

    def _rep_is_zero(self, x, L: int) -> bool:
        if L == 0:
            return x == 0
        return all(self._rep_is_zero(c, L - 1) for c in x)

    def _add(self, x, y, L: int):
        if L == 0:
            return x + y
        return tuple(self._add(a, b, L - 1) for a, b in zip(x, y))

    def _sub(self, x, y, L: int):
        if L == 0:
            return x - y
        return tuple(self._sub(a, b, L - 1) for a, b in zip(x, y))

    def _neg(self, x, L: int):
        if L == 0:
            return -x
        return tuple(self._neg(a, L - 1) for a in x)

    def _scale(self, x, q, L: int):
        if L == 0:
            return x * q
        return tuple(self._scale(a, q, L - 1) for a in x)

    def _mul(self, x, y, L: int):
        if L == 0:
            return x * y
        lv = self.levels[L - 1]
        d = lv.degree
        low = L - 1
        xs = [(i, a) for i, a in enumerate(x) if not self._rep_is_zero(a, low)]
        if not xs:
            return self._zeros[L]
        ys = [(j, b) for j, b in enumerate(y) if not self._rep_is_zero(b, low)]
        if not ys:
            return self._zeros[L]
        z = self._zeros[low]
        prod = [z] * (2 * d - 1)
        for i, a in xs:
            for j, b in ys:
                prod[i + j] = self._add(prod[i + j], self._mul(a, b, low), low)
        tail = self._tails[L - 1]
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if self._rep_is_zero(c, low):
                continue
            for i, mi in tail:
                prod[k - d + i] = self._sub(prod[k - d + i], self._mul(c, mi, low), low)
        return tuple(prod[:d])

    def _from_rational(self, q, L: int | None = None):
        L = self.depth if L is None else L
        rep = qq(q)
        for k in range(L):
            rep = (rep,) + (self._zeros[k],) * (self.levels[k].degree - 1)
        return rep

    def _lift_rep(self, rep, from_depth: int):
        for k in range(from_depth, self.depth):
            rep = (rep,) + (self._zeros[k],) * (self.levels[k].degree - 1)
        return rep

    def _inv(self, x, L: int):
        if L == 0:
            if x == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / x
        if self._rep_is_zero(x, L):
            raise ZeroDivisionError("inverse of zero")
        sub = self.prefix(L - 1)
        lv = self.levels[L - 1]
        a = Poly([TowerElement(sub, c) for c in x], sub, lv.name)
        m = Poly([TowerElement(sub, c) for c in lv.minpoly], sub, lv.name)
        g, s, _ = poly_xgcd(a, m)
        if g.degree != 0:
            raise ZeroDivisionError(
                f"element is a zero divisor modulo the relation of {lv.name}"
            )
        out = [sub._zeros[L - 1]] * lv.degree
        for i, c in enumerate(s.coeffs):
            out[i] = c.rep
        return tuple(out)

    # -- ring protocol --------------------------------------------------

    @property
    def zero(self) -> TowerElement:
        return TowerElement(self, self._zeros[self.depth])

    @property
    def one(self) -> TowerElement:
        return TowerElement(self, self._ones[self.depth])

    def coerce(self, value) -> TowerElement:
        if isinstance(value, TowerElement):
            t = value.tower
            if t is self or t == self:
                return value if t is self else TowerElement(self, value.rep)
            if t.is_prefix_of(self):
                return TowerElement(self, self._lift_rep(value.rep, t.depth))
            raise TowerMismatch(f"element of {t!r} is not in {self!r}")
        return TowerElement(self, self._from_rational(qq(value)))

    def is_zero(self, value) -> bool:
        if not isinstance(value, TowerElement):
            return qq(value) == 0
        return value.is_zero()

    def inv(self, value) -> TowerElement:
        return self.coerce(value).inverse()

    def format(self, value) -> str:
        return self.coerce(value).to_text()

    def element(self, rep) -> TowerElement:
        return TowerElement(self, rep)

    def gen(self, name: str | int) -> TowerElement:
        k = self.names.index(name) if isinstance(name, str) else name
        lv = self.levels[k]
        if lv.degree == 1:
            rep = self._neg(lv.minpoly[0], k)
        else:
            rep = (self._zeros[k], self._ones[k]) + (self._zeros[k],) * (lv.degree - 2)
        return TowerElement(self, self._lift_rep(rep, k + 1))

    def gens(self) -> dict[str, TowerElement]:
        return {n: self.gen(n) for n in self.names}

    def parse(self, text: str) -> TowerElement:
        return parse_in_ring(text, self, self.gens())

    def power_basis(self) -> list[TowerElement]:
        """Monomials in the generators, ordered like the flattened representation."""
        basis = [self.one]
        for k, lv in enumerate(self.levels):
            g = self.gen(k)
            powers = [self.one]
            for _ in range(lv.degree - 1):
                powers.append(powers[-1] * g)
            basis = [p * b for p in powers for b in basis]
        return basis

    def flatten(self, x: TowerElement) -> list[Rational]:
        """Rational coordinates of ``x`` in the basis of ``power_basis``."""
        out: list[Rational] = []

        def walk(rep, L):
            if L == 0:
                out.append(rep)
            else:
                for c in rep:
                    walk(c, L - 1)

        # outer index varies slowest
        walk(self.coerce(x).rep, self.depth)
        return out

    def unflatten(self, coords: Sequence) -> TowerElement:
        it = iter(qq(c) for c in coords)

        def build(L):
            if L == 0:
                return next(it)
            return tuple(build(L - 1) for _ in range(self.levels[L - 1].degree))

        return TowerElement(self, build(self.depth))

    # -- embeddings -----------------------------------------------------

    def gen_ball(self, k: int, prec: int) -> Ball:
        key = (k, prec)
        ball = self._ball_cache.get(key)
        if ball is None:
            ball = _generator_ball(self, k, prec)
            self._ball_cache[key] = ball
        return ball

    def _embed_rep(self, x, L: int, prec: int) -> Ball:
        if L == 0:
            return Ball.exact(x, prec)
        g = self.gen_ball(L - 1, prec)
        acc = None
        for c in reversed(x):
            term = self._embed_rep(c, L - 1, prec)
            acc = term if acc is None else acc * g + term
        return acc

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        levels = []
        for k, lv in enumerate(self.levels):
            sub = self.prefix(k)
            levels.append(
                {
                    "name": lv.name,
                    "kind": lv.kind,
                    "order": lv.order,
                    "minpoly": [TowerElement(sub, c).to_text() for c in lv.minpoly],
                    "embedding": {"re": lv.branch[0], "im": lv.branch[1], "radius": lv.branch_radius},
                }
            )
        return {"levels": levels}

    @classmethod
    def from_json(cls, data: dict) -> FieldTower:
        from .construct import adjoin_cyclotomic, adjoin_radical, adjoin_root

        if not isinstance(data, dict) or not isinstance(data.get("levels"), list):
            raise ValueError("tower description needs a 'levels' list")
        tower = cls()
        for entry in data["levels"]:
            try:
                name = entry["name"]
                coeffs = [tower.parse(str(c)) for c in entry["minpoly"]]
                emb = entry["embedding"]
                with mpmath.workprec(256):
                    center = mpc(mpf(str(emb["re"])), mpf(str(emb["im"])))
                    branch = Ball(center, mpf(str(emb.get("radius", "1e-20"))), 256)
            except (KeyError, TypeError) as exc:
                raise ValueError(f"malformed tower level {entry!r}") from exc
            kind = entry.get("kind", "general")
            order = int(entry.get("order", 0))
            if kind == "cyclotomic" and tower.depth == 0 and order:
                tower = adjoin_cyclotomic(tower, order, name=name)
                if tuple(c.rep for c in coeffs) != tower.levels[-1].minpoly:
                    raise ValueError(f"level {name}: minpoly is not the cyclotomic polynomial of order {order}")
            elif kind == "radical" and order:
                if any(not c.is_zero() for c in coeffs[1:-1]) or coeffs[-1] != 1 or len(coeffs) != order + 1:
                    raise ValueError(f"level {name}: minpoly is not a radical relation")
                tower = adjoin_radical(tower, -coeffs[0], order, branch=branch, name=name)
            else:
                tower = adjoin_root(tower, coeffs, branch=branch, name=name)
        return tower


class TowerElement:
    __slots__ = ("tower", "rep")

    def __init__(self, tower: FieldTower, rep):
        self.tower = tower
        self.rep = rep

    def _pair(self, other):
        """Common tower and reps for a binary operation, promoting into the larger tower."""
        if isinstance(other, TowerElement):
            if other.tower is self.tower:
                return self.tower, self.rep, other.rep
            if self.tower.depth < other.tower.depth and self.tower.is_prefix_of(other.tower):
                t = other.tower
                return t, t.coerce(self).rep, other.rep
            return self.tower, self.rep, self.tower.coerce(other).rep
        if isinstance(other, (Ball, Poly)):
            return None
        return self.tower, self.rep, self.tower._from_rational(qq(other))

    def __add__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        t, a, b = p
        return TowerElement(t, t._add(a, b, t.depth))

    __radd__ = __add__

    def __sub__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        t, a, b = p
        return TowerElement(t, t._sub(a, b, t.depth))

    def __rsub__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        t, a, b = p
        return TowerElement(t, t._sub(b, a, t.depth))

    def __neg__(self):
        return TowerElement(self.tower, self.tower._neg(self.rep, self.tower.depth))

    def __mul__(self, other):
        if not isinstance(other, TowerElement):
            if isinstance(other, (Ball, Poly)):
                return NotImplemented
            return TowerElement(self.tower, self.tower._scale(self.rep, qq(other), self.tower.depth))
        t, a, b = self._pair(other)
        return TowerElement(t, t._mul(a, b, t.depth))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, TowerElement):
            q = qq(other)
            if q == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / q)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.tower.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        try:
            return (self - other).is_zero()
        except TowerMismatch:
            return False

    __hash__ = None

    def is_exact_zero(self) -> bool:
        return self.tower._rep_is_zero(self.rep, self.tower.depth)

    def is_zero(self) -> bool:
        """Exact when every relation is verified irreducible, otherwise the hybrid rule."""
        if self.is_exact_zero():
            return True
        if self.tower.verified:
            return False
        for prec in PRECISION_SCHEDULE:
            if not self.embed(prec).contains_zero():
                return False
        raise UndecidedZeroTest(f"undecided zero-test for {self.to_text()}")

    def inverse(self) -> TowerElement:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return TowerElement(self.tower, self.tower._inv(self.rep, self.tower.depth))

    def embed(self, prec: int = 64) -> Ball:
        if prec < 64:
            raise ValueError("embedding precision must be at least 64 bits")
        return self.tower._embed_rep(self.rep, self.tower.depth, prec)

    def approx(self, prec: int = 64) -> complex:
        return complex(self.embed(prec).center)

    def is_rational(self) -> bool:
        rep, L = self.rep, self.tower.depth
        while L:
            if any(not self.tower._rep_is_zero(c, L - 1) for c in rep[1:]):
                return False
            rep, L = rep[0], L - 1
        return True

    def rational_value(self) -> Rational:
        rep, L = self.rep, self.tower.depth
        if not self.is_rational():
            raise ValueError("element is not rational")
        while L:
            rep, L = rep[0], L - 1
        return rep

    def lower(self) -> TowerElement:
        """The same number in the shortest prefix tower that contains its representation."""
        rep, L = self.rep, self.tower.depth
        while L and all(self.tower._rep_is_zero(c, L - 1) for c in rep[1:]):
            rep, L = rep[0], L - 1
        return TowerElement(self.tower.prefix(L), rep)

    def terms(self) -> dict[tuple[int, ...], Rational]:
        """Map from generator exponent vectors (level order) to rational coefficients."""
        out: dict[tuple[int, ...], Rational] = {}

        def walk(rep, L, suffix):
            if L == 0:
                if rep != 0:
                    out[suffix] = rep
                return
            for i, c in enumerate(rep):
                walk(c, L - 1, (i,) + suffix)

        walk(self.rep, self.tower.depth, ())
        return out

    def to_text(self) -> str:
        names = self.tower.names
        terms = {tuple(reversed(e)): c for e, c in self.terms().items()}
        return format_terms(terms, tuple(reversed(names)), QQ.format)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"TowerElement({self.to_text()})"


# -- generator embeddings ---------------------------------------------------


def _generator_ball(tower: FieldTower, k: int, prec: int) -> Ball:
    lv = tower.levels[k]
    wp = prec + 32
    if lv.kind == "cyclotomic":
        with mpmath.workprec(wp):
            c = mpmath.expjpi(mpf(2) / lv.order) if lv.order > 1 else mpc(1)
        return Ball(c, mpf(2) ** (-prec + 1), prec)
    if lv.kind == "radical":
        base = tower._embed_rep(tower._neg(lv.minpoly[0], k), k, wp)
        return _radical_ball(base, lv.order, lv.branch_value(), prec)
    coeffs = [tower._embed_rep(c, k, wp) for c in lv.minpoly]
    return _newton_ball(coeffs, lv.branch_value(), prec)


def _radical_ball(base: Ball, k: int, target, prec: int) -> Ball:
    wp = base.prec
    with mpmath.workprec(wp):
        if base.contains_zero():
            raise ArithmeticError("radical of a value whose ball contains zero")
        roots = kth_roots(base.center, k)
        c = min(roots, key=lambda r: abs(r - target))
        # first-order perturbation bound for g^k = base, doubled for safety
        r = 2 * base.radius / (k * abs(c) ** (k - 1)) + abs(c) * mpf(2) ** (-prec + 1)
    return Ball(c, r, prec)


def kth_roots(z, k: int) -> list[mpc]:
    r0 = mpmath.root(mpc(z), k)
    return [r0 * mpmath.expjpi(mpf(2 * j) / k) for j in range(k)]


def _newton_ball(coeffs: list[Ball], start, prec: int) -> Ball:
    wp = coeffs[0].prec
    with mpmath.workprec(wp):
        cs = [b.center for b in coeffs]
        n = len(cs) - 1
        z = mpc(start)
        for _ in range(wp):
            f = mpmath.polyval(cs[::-1], z)
            df = mpmath.polyval([i * c for i, c in enumerate(cs)][:0:-1], z)
            if df == 0:
                break
            step = f / df
            z -= step
            if abs(step) < mpf(2) ** (-wp + 4) * max(1, abs(z)):
                break
        # rigorous-style radius: n |f(z)| / |f'(z)| with coefficient uncertainties folded in
        fz = Ball(0, 0, wp)
        for b in reversed(coeffs):
            fz = fz * Ball(z, 0, wp) + b
        dfz = Ball(0, 0, wp)
        for i in range(n, 0, -1):
            dfz = dfz * Ball(z, 0, wp) + coeffs[i] * i
        lower = dfz.abs_lower()
        if lower == 0:
            raise ArithmeticError("embedding ball is not isolating a simple root")
        r = n * fz.abs_upper() / lower + abs(z) * mpf(2) ** (-prec + 1)
    return Ball(z, r, prec)


def branch_strings(z, digits: int = 40) -> tuple[str, str]:
    z = mpc(z)
    re = mpmath.nstr(z.real, digits, min_fixed=-math.inf, max_fixed=math.inf) if z.real else "0"
    im = mpmath.nstr(z.imag, digits, min_fixed=-math.inf, max_fixed=math.inf) if z.imag else "0"
    return re, im
