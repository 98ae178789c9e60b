"""Intersection numbers, fiber contributions, height pairings and Gram matrices.

Sections are polynomial in v with deg x <= 2n and deg y <= 3n, so they never
meet the zero section.  Intersections at v = infinity are read off the
partner coordinates v^{2n} x(1/v), v^{3n} y(1/v).

At a reducible fiber (types IV, I0*, IV* at v = 0 or infinity) a section
meets a non-identity component iff it passes through the singular point of
the Weierstrass model, i.e. ord x >= 1 and ord y >= 1 there.  The component
is identified by the leading value of y/v (IV), x/v (I0*) or y/v^2 (IV*).
When two sections both pass through the singular point, the naive local
intersection multiplicity of the Weierstrass model exceeds the intersection
on the smooth model by a fixed offset per type.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .algebra.laurent import LaurentPoly
from .algebra.poly import Poly, poly_gcd
from .algebra.rational import Rational, qq
from .algebra.resultant import bareiss_det
from .sections.section import Section, make_section, verify_section
from .surface import FiberInfo, classify_fibers


class HeightError(ValueError):
    pass


class UndecidedComponent(HeightError):
    pass


@dataclass(frozen=True)
class ContributionTable:
    kodaira_type: str
    self_value: Rational
    same_component: Rational
    distinct_components: Rational
    singular_offset: int


CONTRIBUTIONS = {
    "II": ContributionTable("II", qq(0), qq(0), qq(0), 0),
    "IV": ContributionTable("IV", qq(2, 3), qq(2, 3), qq(1, 3), 1),
    "I0*": ContributionTable("I0*", qq(1), qq(1), qq(1, 2), 2),
    "IV*": ContributionTable("IV*", qq(4, 3), qq(4, 3), qq(2, 3), 2),
}

# index of the coefficient that labels the component: ("x" or "y", power of v)
_COMPONENT_LABEL = {"IV": ("y", 1), "I0*": ("x", 1), "IV*": ("y", 2)}


def _check_integral(q: Section) -> None:
    n = q.surface.n
    for p, top in ((q.x, 2 * n), (q.y, 3 * n)):
        if p.coeffs and (p.min_exp < 0 or p.max_exp > top):
            raise HeightError(
                f"section {q.label or q} is not integral (exponents outside 0..{top}); (P.O) is not supported"
            )


def local_coordinates(q: Section, place: str) -> tuple[LaurentPoly, LaurentPoly]:
    """Coordinates in a chart centred at v = 0 (place 'zero') or v = infinity."""
    if place == "infinity":
        n = q.surface.n
        return q.x.reflect(2 * n), q.y.reflect(3 * n)
    return q.x, q.y


def _through_singular(x: LaurentPoly, y: LaurentPoly) -> bool:
    return x[0].is_zero() and y[0].is_zero()


def component(q: Section, fiber: FiberInfo):
    """None for the identity component, else the coefficient value naming the component."""
    if fiber.kodaira_type not in _COMPONENT_LABEL:
        return None
    x, y = local_coordinates(q, fiber.place)
    if not _through_singular(x, y):
        return None
    coord, k = _COMPONENT_LABEL[fiber.kodaira_type]
    val = (x if coord == "x" else y)[k]
    if val.is_zero():
        raise UndecidedComponent(f"section {q.label or q} has a vanishing component label at {fiber.place}")
    return val


def local_contribution(q1: Section, q2: Section | None, fiber: FiberInfo) -> Rational:
    """contr_v(P, Q); pass q2=None (or q1 itself) for contr_v(P)."""
    table = CONTRIBUTIONS[fiber.kodaira_type]
    c1 = component(q1, fiber)
    if q2 is None or q2 is q1:
        return qq(0) if c1 is None else table.self_value
    c2 = component(q2, fiber)
    if c1 is None or c2 is None:
        return qq(0)
    return table.same_component if (c1 - c2).is_zero() else table.distinct_components


def _as_poly(p: LaurentPoly) -> Poly:
    return p.to_poly()


def _meet(x1, y1, x2, y2) -> Poly:
    dx, dy = _as_poly(x1 - x2), _as_poly(y1 - y2)
    if dx.is_zero() and dy.is_zero():
        raise HeightError("intersection number of a section with itself")
    return poly_gcd(dx, dy)


def intersection_number(q1: Section, q2: Section) -> int:
    """(P.Q) on the smooth model: finite places from gcd(x1 - x2, y1 - y2), plus v = infinity."""
    if q1.surface != q2.surface:
        raise HeightError("sections lie on different surfaces")
    _check_integral(q1)
    _check_integral(q2)
    ring = q1.tower if q1.tower.depth >= q2.tower.depth else q2.tower
    q1, q2 = _over(q1, ring), _over(q2, ring)
    fibers = {f.place: f for f in classify_fibers(q1.surface)}
    d = _meet(q1.x, q1.y, q2.x, q2.y)
    v0 = d.valuation() or 0
    total = d.degree - v0
    for place in ("zero", "infinity"):
        if place == "zero":
            naive = v0
        else:
            x1, y1 = local_coordinates(q1, place)
            x2, y2 = local_coordinates(q2, place)
            naive = _meet(x1, y1, x2, y2).valuation() or 0
        f = fibers.get(place)
        if f is not None and naive and f.kodaira_type in _COMPONENT_LABEL:
            if component(q1, f) is not None and component(q2, f) is not None:
                naive = max(0, naive - CONTRIBUTIONS[f.kodaira_type].singular_offset)
        total += naive
    return total


def _over(q: Section, ring) -> Section:
    if q.tower == ring:
        return q
    return Section(q.surface, q.x.map_coeffs(ring.coerce, ring), q.y.map_coeffs(ring.coerce, ring), q.provenance, q.label, q.params)


def height_pairing(q1: Section, q2: Section | None = None) -> Rational:
    """<P, Q> = chi + (P.O) + (Q.O) - (P.Q) - sum contr_v(P, Q); q2=None gives <P, P>."""
    s = q1.surface
    chi = qq(s.chi)
    _check_integral(q1)
    fibers = classify_fibers(s)
    if q2 is None or q2 is q1 or q1.same_as(q2):
        return 2 * chi - sum((local_contribution(q1, None, f) for f in fibers), qq(0))
    _check_integral(q2)
    contr = sum((local_contribution(q1, q2, f) for f in fibers), qq(0))
    return chi - intersection_number(q1, q2) - contr


# -- Gram matrices ----------------------------------------------------------


def det(rows: Sequence[Sequence[Rational]]) -> Rational:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    return bareiss_det([[qq(c) for c in r] for r in rows])


@dataclass
class GramMatrix:
    entries: list[list[Rational]]
    basis: list[str] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def det(self) -> Rational:
        return det(self.entries)

    def is_symmetric(self) -> bool:
        n = self.size
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(n))

    def leading_minors(self) -> list[Rational]:
        return [det([r[:k] for r in self.entries[:k]]) for k in range(1, self.size + 1)]

    def is_positive_definite(self) -> bool:
        return self.is_symmetric() and all(m > 0 for m in self.leading_minors())

    def scaled(self, m) -> GramMatrix:
        return GramMatrix([[qq(m) * c for c in r] for r in self.entries], list(self.basis))

    def to_json(self) -> dict:
        return {
            "basis": list(self.basis),
            "entries": [[str(c) for c in r] for r in self.entries],
            "det": str(self.det),
        }

    @classmethod
    def from_json(cls, data: dict) -> GramMatrix:
        return cls([[qq(Fraction(c)) for c in r] for r in data["entries"]], list(data.get("basis", [])))

    def to_text(self) -> str:
        cells = [[str(c) for c in r] for r in self.entries]
        w = max((len(c) for r in cells for c in r), default=1)
        lines = ["  ".join(c.rjust(w) for c in r) for r in cells]
        lines.append(f"det = {self.det}")
        return "\n".join(lines)


def gram(basis: Sequence[Section], pairing: Callable = height_pairing) -> GramMatrix:
    n = len(basis)
    m = [[qq(0)] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = pairing(basis[i], None)
        for j in range(i + 1, n):
            m[i][j] = m[j][i] = pairing(basis[i], basis[j])
    return GramMatrix(m, [q.label for q in basis])


class PairingCache:
    """Memoized pairings on a fixed candidate list (indices into it)."""

    def __init__(self, candidates: Sequence[Section], pairing: Callable = height_pairing):
        self.candidates = list(candidates)
        self.pairing = pairing
        self._memo: dict[tuple[int, int], Rational] = {}

    def __call__(self, i: int, j: int) -> Rational:
        key = (i, j) if i <= j else (j, i)
        if key not in self._memo:
            a = self.candidates[key[0]]
            self._memo[key] = self.pairing(a, None) if i == j else self.pairing(a, self.candidates[key[1]])
        return self._memo[key]


class NoSubsetFound(HeightError):
    pass


def find_generator_subset(
    candidates: Sequence[Section],
    target_det,
    size: int,
    pairing: Callable = height_pairing,
    sort: bool = True,
) -> list[Section]:
    """First subset (depth-first over the canonical order) with Gram determinant ``target_det``.

    Candidates are ordered by their embedding key; branches whose leading
    minor is not positive are pruned.
    """
    target = qq(target_det)
    if size > len(candidates):
        raise HeightError("subset size exceeds the number of candidates")
    order = sorted(candidates, key=lambda q: q.approx_key()) if sort else list(candidates)
    cache = PairingCache(order, pairing)

    def minor(idx):
        return det([[cache(i, j) for j in idx] for i in idx])

    def dfs(chosen: list[int], start: int):
        if len(chosen) == size:
            return list(chosen) if minor(chosen) == target else None
        for k in range(start, len(order) - (size - len(chosen)) + 1):
            trial = chosen + [k]
            if minor(trial) <= 0:
                continue
            found = dfs(trial, k + 1)
            if found:
                return found
        return None

    found = dfs([], 0)
    if found is None:
        raise NoSubsetFound(f"no {size}-subset with Gram determinant {target}")
    return [order[i] for i in found]


def match_gram(
    candidates: Sequence[Section],
    target: Sequence[Sequence],
    pairing: Callable = height_pairing,
    first: int | None = None,
    pools: Sequence[Sequence[int]] | None = None,
    groups: Sequence | None = None,
) -> list[Section]:
    """Sections realizing ``target`` exactly as their Gram matrix, by backtracking.

    ``first`` pins the first basis element to a candidate index; ``pools``
    restricts row k of the target to the candidate indices pools[k]; with
    ``groups`` (one label per candidate) no two chosen candidates share a label.
    """
    tgt = [[qq(Fraction(c)) if isinstance(c, str) else qq(c) for c in r] for r in target]
    n = len(tgt)
    cache = PairingCache(candidates, pairing)
    pool = range(len(candidates))

    def dfs(chosen: list[int]):
        k = len(chosen)
        if k == n:
            return chosen
        row = pools[k] if pools is not None else ([first] if k == 0 and first is not None else pool)
        for c in row:
            if c in chosen or cache(c, c) != tgt[k][k]:
                continue
            if groups is not None and any(groups[c] == groups[j] for j in chosen):
                continue
            if all(cache(chosen[j], c) == tgt[j][k] for j in range(k)):
                found = dfs(chosen + [c])
                if found:
                    return found
        return None

    found = dfs([])
    if found is None:
        raise NoSubsetFound("no candidate tuple realizes the target Gram matrix")
    return [candidates[i] for i in found]


def signed_permutation_equivalent(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple[list[int], list[int]] | None:
    """(perm, signs) with a[i][j] = s_i s_j b[perm i][perm j], or None."""
    n = len(a)
    if n != len(b):
        return None
    a = [[qq(c) for c in r] for r in a]
    b = [[qq(c) for c in r] for r in b]

    def dfs(perm, signs):
        k = len(perm)
        if k == n:
            return list(perm), list(signs)
        for p in range(n):
            if p in perm or a[k][k] != b[p][p]:
                continue
            for s in (1, -1):
                if all(a[j][k] == signs[j] * s * b[perm[j]][p] for j in range(k)):
                    r = dfs(perm + [p], signs + [s])
                    if r:
                        return r
        return None

    return dfs([], [])


# -- chord-tangent addition (polynomial results only) -------------------------


class NotPolynomial(HeightError):
    pass


def add_sections(p: Section, q: Section) -> Section:
    """P + Q on y^2 = x^3 + f(v), exact; raises NotPolynomial when the sum leaves the polynomial sections."""
    if p.surface != q.surface:
        raise HeightError("sections lie on different surfaces")
    ring = p.tower if p.tower.depth >= q.tower.depth else q.tower
    p, q = _over(p, ring), _over(q, ring)
    x1, y1, x2, y2 = (_as_poly(c) for c in (p.x, p.y, q.x, q.y))
    if (x1 - x2).is_zero():
        if (y1 + y2).is_zero():
            raise NotPolynomial("P + Q is the zero section")
        num, den = x1 * x1 * Poly([3], ring, x1.var), y1 * Poly([2], ring, y1.var)
    else:
        num, den = y2 - y1, x2 - x1
    lam, rem = num.divrem(den)
    if not rem.is_zero():
        raise NotPolynomial("the chord slope is not a polynomial")
    x3 = lam * lam - x1 - x2
    y3 = -(y1 + lam * (x3 - x1))
    out = make_section(p.surface, ring, list(x3.coeffs), list(y3.coeffs), "transformed", f"{p.label}+{q.label}")
    if not verify_section(out):
        raise HeightError("chord-tangent sum failed verification")
    return out


# -- printed Gram matrices used as fixtures and matching targets ---------------


def _matrix(rows, scale=1) -> list[list[Rational]]:
    return [[qq(Fraction(c)) * qq(scale) if isinstance(c, str) else qq(c) * qq(scale) for c in r] for r in rows]


_T, _O, _M = "4/3", "1/3", "-2/3"

FIXTURES: dict[str, list[list[Rational]]] = {
    "M1": _matrix([["1/3", "1/6"], ["1/6", "1/3"]]),
    "M2": _matrix([[2, 0, 0, 1], [0, 2, 0, 1], [0, 0, 2, 1], [1, 1, 1, 2]], Fraction(1, 2)),
    "M2'": _matrix([["2/3", "1/3", 0, 0], ["1/3", "2/3", 0, 0], [0, 0, "2/3", "1/3"], [0, 0, "1/3", "2/3"]]),
    "M3": _matrix(
        [
            [_T, _O, _O, _O, _O, _M],
            [_O, _T, _O, _O, _O, _M],
            [_O, _O, _T, _M, _O, _M],
            [_O, _O, _M, _T, _O, _O],
            [_O, _O, _O, _O, _T, _O],
            [_M, _M, _M, _O, _O, _T],
        ]
    ),
    "M4": _matrix(
        [
            [2, 1, 0, 0, 0, 0, 0, 1],
            [1, 2, 0, 0, -1, 0, 1, 0],
            [0, 0, 2, 1, -1, -1, 0, -1],
            [0, 0, 1, 2, 0, 0, 1, 0],
            [0, -1, -1, 0, 2, 0, 0, 1],
            [0, 0, -1, 0, 0, 2, 0, 1],
            [0, 1, 0, 1, 0, 0, 2, 0],
            [1, 0, -1, 0, 1, 1, 0, 2],
        ]
    ),
    "M5": _matrix(
        [
            [2, 1, 1, 1, 0, 0, 0, 1],
            [1, 2, 0, 1, 1, 1, 0, 1],
            [1, 0, 2, 1, 0, -1, 1, 0],
            [1, 1, 1, 2, 1, 0, 1, 0],
            [0, 1, 0, 1, 2, 0, 1, 0],
            [0, 1, -1, 0, 0, 2, -1, 1],
            [0, 0, 1, 1, 1, -1, 2, -1],
            [1, 1, 0, 0, 0, 1, -1, 2],
        ]
    ),
    "M10": _matrix(
        [
            [4, 0, 0, 2, 0, 0, 0, 0, -2, 0, 0, 0, 2, 0, 0, 1],
            [0, 4, 2, 0, 0, 0, -2, 2, 0, -2, -1, 1, 0, 2, 2, -1],
            [0, 2, 4, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 1, 2, 0],
            [2, 0, 0, 4, 2, 2, 0, 0, 0, 1, 0, 0, 1, 0, 0, 2],
            [0, 0, 0, 2, 4, 0, 0, 2, 2, 0, 0, 1, 0, 0, 0, 0],
            [0, 0, 0, 2, 0, 4, 2, 0, 0, 2, 1, 0, 0, 0, -1, 1],
            [0, -2, 0, 0, 0, 2, 4, 0, 0, 2, 2, 0, 0, -1, -2, 0],
            [0, 2, 0, 0, 2, 0, 0, 4, 1, -1, 0, 2, 0, 1, 0, -2],
            [-2, 0, 0, 0, 2, 0, 0, 1, 4, 0, 0, 2, 0, 0, 0, 0],
            [0, -2, -1, 1, 0, 2, 2, -1, 0, 4, 2, 0, 0, 0, -2, 2],
            [0, -1, 0, 0, 0, 1, 2, 0, 0, 2, 4, 0, 0, 0, 0, 0],
            [0, 1, 0, 0, 1, 0, 0, 2, 2, 0, 0, 4, 2, 2, 0, 0],
            [2, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 2, 4, 0, 0, 2],
            [0, 2, 1, 0, 0, 0, -1, 1, 0, 0, 0, 2, 0, 4, 2, 0],
            [0, 2, 2, 0, 0, -1, -2, 0, 0, -2, 0, 0, 0, 2, 4, 0],
            [1, -1, 0, 2, 0, 1, 0, -2, 0, 2, 0, 0, 2, 0, 0, 4],
        ]
    ),
}


def fixture(name: str) -> GramMatrix:
    try:
        return GramMatrix([list(r) for r in FIXTURES[name]], [f"{name}[{i}]" for i in range(len(FIXTURES[name]))])
    except KeyError:
        raise HeightError(f"unknown fixture {name!r}") from None
