"""Sections as Laurent polynomials over a field tower, with exact verification."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import mpmath

from ..algebra.laurent import LaurentPoly
from ..algebra.multipoly import MultiPoly
from ..algebra.poly import Poly, poly_gcd
from ..numberfield.recognize import roots_in_tower
from ..numberfield.tower import FieldTower, TowerElement
from ..surface import SurfaceModel, birational_partner
from .eliminate import Elimination, FundamentalPolynomial, _containing


class BranchError(ValueError):
    pass


class DegenerateRoot(ArithmeticError):
    pass


@dataclass
class Section:
    surface: SurfaceModel
    x: LaurentPoly
    y: LaurentPoly
    provenance: str = "derived-from-root"
    label: str = ""
    params: dict = field(default_factory=dict)

    @property
    def tower(self) -> FieldTower:
        return self.x.ring

    def coefficient_lists(self) -> tuple[list, list]:
        """Coefficients A_0..A_2n of x and B_0..B_3n of y (zeros filled in)."""
        n = self.surface.n
        for p, top in ((self.x, 2 * n), (self.y, 3 * n)):
            if p.coeffs and (p.min_exp < 0 or p.max_exp > top):
                raise ValueError(f"section {self.label} has exponents outside 0..{top}")
        return [self.x[i] for i in range(2 * n + 1)], [self.y[j] for j in range(3 * n + 1)]

    def __neg__(self) -> Section:
        lab = self.label[1:] if self.label.startswith("-") else "-" + self.label
        return replace(self, y=-self.y, label=lab, params=dict(self.params))

    def same_as(self, other: Section) -> bool:
        return self.surface == other.surface and (self.x - other.x).is_zero() and (self.y - other.y).is_zero()

    def approx_key(self) -> tuple:
        """Canonical ordering key from coefficient embeddings (real part, then imaginary part)."""
        key = []
        for p, top in ((self.x, 2 * self.surface.n), (self.y, 3 * self.surface.n)):
            for i in range(top, -1, -1):
                z = p[i].approx(64)
                key.extend((round(z.real, 12), round(z.imag, 12)))
        return tuple(key)

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


def weierstrass_rhs(s: SurfaceModel, ring) -> LaurentPoly:
    lo, hi = s.rhs_exponents()
    return LaurentPoly({lo: 1, hi: 1} if lo != hi else {lo: 2}, ring, "v")


def make_section(s: SurfaceModel, tower: FieldTower, x, y, provenance="derived-from-root", label="") -> Section:
    """Build a section from coefficient maps {exponent: element} or lists indexed by exponent."""
    def conv(c):
        return LaurentPoly(
            {k: tower.coerce(v) for k, v in (c.items() if isinstance(c, dict) else enumerate(c))}, tower, "v"
        )

    return Section(s, conv(x), conv(y), provenance, label)


def defect(q: Section) -> LaurentPoly:
    return q.y * q.y - q.x * q.x * q.x - weierstrass_rhs(q.surface, q.tower)


def verify_section(q: Section) -> bool:
    """True iff y^2 - x^3 - v^a (v^b + 1) is exactly zero over the tower."""
    return defect(q).is_zero()


def apply_partner_map(q: Section) -> Section:
    """Transport to the partner surface by reversing coefficients (degrees 2n and 3n)."""
    pm = birational_partner(q.surface)
    q.coefficient_lists()
    lab = q.label + "'" if not q.label.endswith("'") else q.label[:-1]
    return Section(pm.target, q.x.reflect(2 * q.surface.n), q.y.reflect(3 * q.surface.n), "transformed", lab, dict(q.params))


# -- exact back-substitution ----------------------------------------------


def _common_tower(values: dict) -> FieldTower:
    best = None
    for v in values.values():
        t = v.tower
        if best is None or t.depth > best.depth:
            best = t
    for v in values.values():
        if not v.tower.is_prefix_of(best):
            raise ValueError("values live in incompatible towers")
    return best


def _evaluate(e: MultiPoly, values: dict, tower: FieldTower) -> TowerElement:
    return e.evaluate(values, tower)


def _pick_root(g: Poly, symbol: str, hint, tower: FieldTower) -> TowerElement:
    if hint is None:
        raise BranchError(f"{symbol} has {g.degree} admissible values; a branch hint is required")
    if isinstance(hint, TowerElement) and hint.tower.depth > tower.depth:
        tower = hint.tower
    if g.ring != tower:
        g = Poly([tower.coerce(c) for c in g.coeffs], tower, g.var)
    if isinstance(hint, TowerElement):
        val = tower.coerce(hint)
        acc = tower.zero
        for c in reversed(g.coeffs):
            acc = acc * val + c
        if not acc.is_zero():
            raise BranchError(f"hinted value for {symbol} is not admissible")
        return val
    target = complex(hint)
    roots = roots_in_tower(g, tower)
    if not roots:
        raise BranchError(f"no admissible value of {symbol} lies in {tower!r}")
    dist = sorted(((abs(r.approx(128) - target), i) for i, r in enumerate(roots)))
    if len(dist) > 1 and dist[1][0] <= 2 * dist[0][0]:
        raise BranchError(f"branch hint for {symbol} does not isolate one value")
    return roots[dist[0][1]]


def _stage_values(stage, values: dict, hints: dict, field: FieldTower | None, enumerate_all: bool) -> list:
    tower = _common_tower(values)
    if stage.method == "solve":
        return [_evaluate(stage.solution, values, tower)]
    g = None
    eqs = sorted(_containing(stage.equations, stage.symbol), key=lambda e: (e.degree(stage.symbol), len(e.terms)))
    for e in eqs:
        p = Poly([_evaluate(c, values, tower) for c in e.coeffs_in(stage.symbol)], tower, stage.symbol)
        if p.is_zero():
            continue
        g = p if g is None else poly_gcd(g, p)
        if g.degree <= 1:
            break
    if g is None:
        raise DegenerateRoot(f"{stage.symbol} is unconstrained at this root")
    if g.degree < 1:
        raise DegenerateRoot(f"no value of {stage.symbol} extends this root")
    if g.degree == 1:
        return [-g.coeffs[0] / g.coeffs[1]]
    wide = field if field is not None and tower.is_prefix_of(field) else tower
    if enumerate_all and stage.symbol not in hints:
        if g.ring != wide:
            g = Poly([wide.coerce(c) for c in g.coeffs], wide, g.var)
        found = roots_in_tower(g, wide)
        if not found:
            raise BranchError(f"no admissible value of {stage.symbol} lies in {wide!r}")
        return found
    return [_pick_root(g, stage.symbol, hints.get(stage.symbol), wide)]


def _extend(stages, values, hints, field, enumerate_all) -> list[dict]:
    if not stages:
        return [values]
    stage, rest = stages[-1], stages[:-1]
    out = []
    for val in _stage_values(stage, values, hints, field, enumerate_all):
        out.extend(_extend(rest, {**values, stage.symbol: val.lower()}, hints, field, enumerate_all))
    return out


def back_substitute(elim: Elimination, values: dict, hints: dict | None = None, field: FieldTower | None = None) -> dict:
    """Extend exact values (survivor and parameters) to every stage symbol.

    Where a stage leaves several admissible values a hint must pick one:
    either an exact tower element or a complex approximation, resolved among
    the admissible values that lie in ``field``.
    """
    values = {k: v.lower() for k, v in values.items()}
    return _extend(list(elim.stages), values, hints or {}, field, False)[0]


def all_extensions(elim: Elimination, values: dict, field: FieldTower, hints: dict | None = None) -> list[dict]:
    """Every extension of ``values`` whose branch values lie in ``field`` (hinted stages stay fixed)."""
    values = {k: v.lower() for k, v in values.items()}
    return _extend(list(elim.stages), values, hints or {}, field, True)


def _prepare(fp, params: dict):
    elim = fp.elimination if isinstance(fp, FundamentalPolynomial) else fp
    sys = elim.system
    z = sys.ansatz
    params = dict(params)
    for old, new, k in z.power_subs:
        if old in params and new not in params:
            params[new] = params[old] ** k
    if sys.survivor not in params:
        raise ValueError(f"missing value for the survivor {sys.survivor}")
    root = params[sys.survivor]
    checks = [fp.poly] if isinstance(fp, FundamentalPolynomial) else elim.eliminants
    for p in checks:
        acc = root.tower.zero
        for c in reversed(p.coeffs):
            acc = acc * root + c
        if not acc.is_zero():
            raise DegenerateRoot("the survivor value is not a root of the eliminants")
    skip = z.scale if z.scale != sys.survivor else None
    return elim, params, {k: v for k, v in params.items() if k != skip}


def _assemble(elim: Elimination, full: dict, tower: FieldTower | None, label: str) -> Section:
    sys = elim.system
    z = sys.ansatz
    tower = tower or _common_tower(full)
    vals = {k: tower.coerce(v) for k, v in full.items()}
    sx = sy = tower.one
    if z.scale:
        s = vals[z.scale]
        sx, sy = (s * s).inverse(), (s * s * s).inverse()
    x = {i: _evaluate(c, vals, tower) * sx for i, c in enumerate(z.x_slots)}
    y = {j: _evaluate(c, vals, tower) * sy for j, c in enumerate(z.y_slots)}
    q = make_section(sys.surface, tower, x, y, "derived-from-root", label)
    q.params = dict(full)
    if not verify_section(q):
        raise DegenerateRoot(f"back-substitution produced a non-section for {label or 'root'}")
    return q


def section_from_values(
    fp: FundamentalPolynomial | Elimination,
    params: dict,
    hints: dict | None = None,
    tower: FieldTower | None = None,
    label: str = "",
) -> Section:
    """Back-substitute from exact parameter values and assemble the section.

    ``params`` gives the survivor, or the ansatz scale symbol when the survivor
    is a power of it (u with U = u^6).  The result is verified before it is
    returned.
    """
    elim, params, seed = _prepare(fp, params)
    full = {**back_substitute(elim, seed, hints, tower), **params}
    return _assemble(elim, full, tower, label)


def _root_key(fp) -> str:
    sys = fp.elimination.system if isinstance(fp, FundamentalPolynomial) else fp.system
    return sys.ansatz.scale if sys.ansatz.power_subs else sys.survivor


def section_from_root(fp, root: TowerElement, hints: dict | None = None, tower=None, label="") -> Section:
    return section_from_values(fp, {_root_key(fp): root}, hints, tower, label)


def sections_from_root(fp, root: TowerElement, tower: FieldTower, hints: dict | None = None) -> list[Section]:
    """All sections over ``tower`` lying above one root, one per admissible branch."""
    elim, params, seed = _prepare(fp, {_root_key(fp): root})
    return [_assemble(elim, {**ext, **params}, tower, "") for ext in all_extensions(elim, seed, tower, hints)]
