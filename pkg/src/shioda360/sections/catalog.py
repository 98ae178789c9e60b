"""Per-surface recipes: ansatz, elimination order, field tower and generator targets.

Each derivable surface (2,1), (1,2), (2,2), (1,3), (1,4) has a recipe; the
partners (3,1), (3,2), (2,3) reuse the recipe of their partner through the
coefficient-reversal map.  All entry points are deterministic and cached.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from ..algebra.poly import Poly
from ..algebra.rational import qq
from ..numberfield.construct import adjoin_radical, make_cyclotomic
from ..numberfield.recognize import kummer_roots, roots_in_tower
from ..numberfield.tower import FieldTower, TowerElement
from ..surface import SurfaceModel, birational_partner
from .ansatz import Ansatz, CoefficientSystem, build_system
from .eliminate import FundamentalPolynomial, fundamental_polynomial
from .section import Section, apply_partner_map, sections_from_root


class CatalogError(KeyError):
    pass


# -- field towers -----------------------------------------------------------


@lru_cache(maxsize=None)
def tower_k1() -> FieldTower:
    """Q(zeta_3)."""
    return make_cyclotomic(3)


@lru_cache(maxsize=None)
def tower_k2() -> FieldTower:
    """Q(zeta_12)(beta1) with beta1^4 = 3 + 2 sqrt 3, sqrt 3 = zeta_12 + zeta_12^-1."""
    k = make_cyclotomic(12)
    z = k.gen(0)
    return adjoin_radical(k, 3 + 2 * (z + z ** -1), 4, name="b1")


@lru_cache(maxsize=None)
def tower_k2_prime() -> FieldTower:
    """Q(zeta_3)(2^(1/3))."""
    return adjoin_radical(make_cyclotomic(3), 2, 3, name="c2")


@lru_cache(maxsize=None)
def cubic_roots_k3() -> list[TowerElement]:
    """The three roots of A^3 - 84 A^2 - 159 A - 1, all in Q(zeta_9)."""
    return roots_in_tower(Poly([-1, -159, -84, 1]), make_cyclotomic(9))


@lru_cache(maxsize=None)
def tower_k3() -> FieldTower:
    """Q(zeta_9)(g) with g^9 = 16 A1, A1 the first root of the cubic above."""
    return adjoin_radical(make_cyclotomic(9), 16 * cubic_roots_k3()[0], 9, name="g")


@lru_cache(maxsize=None)
def tower_k4() -> FieldTower:
    """Q(zeta_24)(u1) with u1^6 = 22 + 9 sqrt 6, sqrt 6 = (w^3 + w^-3)(w^2 + w^-2)."""
    k = make_cyclotomic(24)
    w = k.gen(0)
    return adjoin_radical(k, 22 + 9 * sqrt6(k), 6, name="u1")


def sqrt6(k: FieldTower) -> TowerElement:
    w = k.gen(0)
    return (w ** 3 + w ** -3) * (w ** 2 + w ** -2)


# -- recipes ----------------------------------------------------------------


@dataclass(frozen=True)
class Recipe:
    surface: tuple[int, int]
    ansatz: Ansatz
    order: tuple[tuple[str, str], ...]
    survivor: str
    tower: Callable[[], FieldTower]
    roots: Callable[[FundamentalPolynomial], list[TowerElement]]
    negatives: bool  # add -Q for every derived Q
    target: str | None  # printed Gram matrix to realize
    note: str = ""


def _roots_21(fp):
    return roots_in_tower(fp.poly, tower_k1())


def _roots_12(fp):
    t = tower_k2()
    z = t.gen(0)
    s3 = z + z ** -1
    return [r for w in (3 + 2 * s3, 3 - 2 * s3) for r in kummer_roots(t.coerce(w) ** 3, 12, t)]


def _roots_22(fp):
    return roots_in_tower(fp.poly, tower_k2_prime())


def _roots_13(fp):
    t = tower_k3()
    return [r for a in cubic_roots_k3() for r in kummer_roots(16 * t.coerce(a), 9, t)]


def _roots_14(fp):
    # one sixth root of each U, then the rest through the sixth roots of unity
    t = tower_k4()
    base = t.prefix(1)
    z6 = t.coerce(base.gen(0) ** 4)
    out = []
    for u6 in roots_in_tower(fp.poly, base):
        r = kummer_roots(t.coerce(u6), 6, t, limit=1)
        if not r:
            raise CatalogError(f"no sixth root of {u6} in the (1,4) tower")
        out.extend(r[0] * z6 ** k for k in range(6))
    return out


RECIPES: dict[str, Recipe] = {
    "2,1": Recipe(
        (2, 1),
        Ansatz.make(["b", "a"], ["d", "c"]),
        (("b", "pivot"), ("d", "pivot"), ("a", "pivot")),
        "c",
        tower_k1,
        _roots_21,
        False,
        "M1",
    ),
    "1,2": Recipe(
        (1, 2),
        Ansatz.make(["1", "a*u^2"], ["1", "c*u^3"], scale="u"),
        (("c", "pivot"), ("a", "pivot")),
        "u",
        tower_k2,
        _roots_12,
        False,
        "M2",
    ),
    "2,2": Recipe(
        (2, 2),
        Ansatz.make(["u^2", "a"], ["u^3", "c", "1"], nonzero=["u"]),
        (("c", "solve"), ("a", "pivot")),
        "u",
        tower_k2_prime,
        _roots_22,
        True,
        None,
        "sections with nonzero constant term; they include the identity-component sections of height 4/3",
    ),
    "2,2/0": Recipe(
        (2, 2),
        Ansatz.make(["0", "a"], ["0", "c", "1"]),
        (("c", "solve"),),
        "a",
        tower_k2_prime,
        _roots_22,
        True,
        "M2'",
        "specialization u = 0: sections through the singular point at v = 0, height 2/3",
    ),
    "1,3": Recipe(
        (1, 3),
        Ansatz.make(["b", "a"], ["e", "d", "1"]),
        (("d", "solve"), ("e", "solve"), ("b", "pivot")),
        "a",
        tower_k3,
        _roots_13,
        True,
        "M3",
    ),
    "1,4": Recipe(
        (1, 4),
        Ansatz.make(["b", "a", "1"], ["e", "d", "c", "1"], scale="u", power_subs=[("u", "U", 6)]),
        (("c", "solve"), ("d", "solve"), ("e", "solve"), ("b", "pairs"), ("a", "pairs")),
        "U",
        tower_k4,
        _roots_14,
        False,
        "M4",
    ),
}

# surface -> recipe providing its generators
GENERATOR_RECIPE = {(2, 1): "2,1", (1, 2): "1,2", (2, 2): "2,2/0", (1, 3): "1,3", (1, 4): "1,4"}
PARTNERS = {(3, 1): (2, 1), (3, 2): (1, 2), (2, 3): (1, 3)}
DERIVABLE = [(2, 1), (3, 1), (1, 2), (3, 2), (2, 2), (1, 3), (2, 3), (1, 4)]


def _key(key) -> str:
    if isinstance(key, SurfaceModel):
        key = (key.a, key.b)
    if isinstance(key, tuple):
        key = f"{key[0]},{key[1]}"
    if key not in RECIPES:
        raise CatalogError(f"no derivation recipe for {key}")
    return key


def recipe(key) -> Recipe:
    return RECIPES[_key(key)]


def coefficient_system(key) -> CoefficientSystem:
    r = recipe(key)
    return build_system(SurfaceModel(*r.surface), r.ansatz, r.order, r.survivor)


@lru_cache(maxsize=None)
def _fundamental(key: str) -> FundamentalPolynomial:
    return fundamental_polynomial(coefficient_system(key))


def fundamental(key) -> FundamentalPolynomial:
    return _fundamental(_key(key))


@lru_cache(maxsize=None)
def _candidates(key: str) -> tuple[Section, ...]:
    r = RECIPES[key]
    fp = _fundamental(key)
    t = r.tower()
    out: list[Section] = []
    for root in r.roots(fp):
        out.extend(sections_from_root(fp, root, t))
    if r.negatives:
        out.extend([-q for q in out])
    for i, q in enumerate(out):
        q.label = f"S{i}"
    return tuple(out)


def candidates(key) -> list[Section]:
    """All sections derived from a recipe (with negatives when the recipe asks for them)."""
    return list(_candidates(_key(key)))


@lru_cache(maxsize=None)
def _generators(ab: tuple[int, int]) -> tuple[Section, ...]:
    from ..heights import FIXTURES, match_gram

    if ab in PARTNERS:
        return tuple(apply_partner_map(q) for q in _generators(PARTNERS[ab]))
    if ab not in GENERATOR_RECIPE:
        raise CatalogError(f"generators of {ab} are not derivable (ingest them from data)")
    key = GENERATOR_RECIPE[ab]
    r = RECIPES[key]
    found = match_gram(list(_candidates(key)), FIXTURES[r.target])
    out = []
    for i, q in enumerate(found, 1):
        g = Section(q.surface, q.x, q.y, q.provenance, f"Q{i}", dict(q.params))
        out.append(g)
    return tuple(out)


def generators(ab) -> list[Section]:
    """Generators realizing the printed Gram matrix (partners: transported generators)."""
    if isinstance(ab, SurfaceModel):
        ab = (ab.a, ab.b)
    return list(_generators(tuple(ab)))


def clear_caches() -> None:
    """Forget every cached tower, polynomial and section (for cold-start timings)."""
    for fn in (tower_k1, tower_k2, tower_k2_prime, cubic_roots_k3, tower_k3, tower_k4, _fundamental, _candidates, _generators):
        fn.cache_clear()


def partner_surface(ab: tuple[int, int]) -> tuple[int, int]:
    t = birational_partner(SurfaceModel(*ab)).target
    return (t.a, t.b)


def target_name(ab: tuple[int, int]) -> str | None:
    if ab in PARTNERS:
        ab = PARTNERS[ab]
    key = GENERATOR_RECIPE.get(ab)
    return RECIPES[key].target if key else None


# -- published factor lists (verification mode of structured_factor) --------------

PRINTED_FACTORS: dict[str, list[str]] = {
    "1,2": ["u^8 - 6*u^4 - 3", "u^16 + 6*u^12 + 39*u^8 - 18*u^4 + 9"],
    "2,2": ["2*u^3 - 1", "u^3 + 4"],
    "1,4": [
        "U^2 - 44*U - 2",
        "U^2 + 44*U - 2",
        "U^2 + 4*U + 54",
        "U^2 - 4*U + 54",
        "U^4 + 1940*U^2 + 4",
        "U^4 - 832*U^2 + 256",
        "U^4 + 832*U^2 + 256",
        "U^4 - 92*U^2 + 2916",
        "U^8 - 200*U^7 + 20000*U^6 + 58800*U^5 + 87608*U^4 - 117600*U^3 + 80000*U^2 + 1600*U + 16",
        "U^8 + 200*U^7 + 20000*U^6 - 58800*U^5 + 87608*U^4 + 117600*U^3 + 80000*U^2 - 1600*U + 16",
    ],
}

PRINTED_POLYNOMIALS: dict[str, str] = {
    "1,2": "u^24 - 270*u^12 - 27",
    "1,3": "a^27 - 1344*a^18 - 40704*a^9 - 4096",
    "2,2": "(2*u^3 - 1)*(u^3 + 4)",
}


def printed_factors(key) -> list[Poly]:
    from ..algebra.parse import parse_poly

    key = _key(key)
    var = RECIPES[key].survivor
    return [parse_poly(t, var=var) for t in PRINTED_FACTORS.get(key, [])]
