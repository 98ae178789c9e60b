"""Section ansatze and the coefficient systems they produce."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra.multipoly import MultiPoly
from ..surface import SurfaceModel


class AnsatzError(ValueError):
    pass


def _mp(value) -> MultiPoly:
    if isinstance(value, MultiPoly):
        return value
    if isinstance(value, str):
        return MultiPoly.parse(value)
    return MultiPoly.const(value)


@dataclass(frozen=True)
class Ansatz:
    """Coordinates x = X(v) / s^2 and y = Y(v) / s^3.

    ``x_slots[i]`` and ``y_slots[j]`` are the coefficients of v^i and v^j in
    X and Y, written as polynomials in the unknown symbols.  ``scale`` is the
    optional symbol s (no denominator when it is None).  ``power_subs`` maps a
    symbol to (new symbol, k) and rewrites s^k as the new symbol once the
    system is built, e.g. u^6 -> U.  Symbols listed in ``nonzero`` are assumed
    invertible, so their powers are cleared from every equation.
    """

    x_slots: tuple[MultiPoly, ...]
    y_slots: tuple[MultiPoly, ...]
    scale: str | None = None
    nonzero: frozenset[str] = frozenset()
    power_subs: tuple[tuple[str, str, int], ...] = ()

    @classmethod
    def make(cls, x, y, scale=None, nonzero=(), power_subs=()) -> Ansatz:
        ns = set(nonzero)
        if scale:
            ns.add(scale)
        for _, new, _k in power_subs:
            ns.add(new)
        return cls(tuple(_mp(c) for c in x), tuple(_mp(c) for c in y), scale, frozenset(ns), tuple(power_subs))

    @property
    def x_degree(self) -> int:
        return len(self.x_slots) - 1

    @property
    def y_degree(self) -> int:
        return len(self.y_slots) - 1

    def symbols(self) -> tuple[str, ...]:
        names: list[str] = []
        for c in self.x_slots + self.y_slots:
            for v in c.free_vars():
                if v not in names:
                    names.append(v)
        if self.scale and self.scale not in names:
            names.append(self.scale)
        return tuple(names)


@dataclass
class CoefficientSystem:
    surface: SurfaceModel
    ansatz: Ansatz
    equations: list[MultiPoly]
    order: tuple[tuple[str, str], ...] = ()  # (symbol, method) with method in solve / pivot / pairs
    survivor: str | None = None
    raw: list[MultiPoly] = field(default_factory=list)

    def symbols(self) -> tuple[str, ...]:
        names: list[str] = []
        for e in self.equations:
            for v in e.free_vars():
                if v not in names:
                    names.append(v)
        return tuple(names)


def _poly_mul(p: list[MultiPoly], q: list[MultiPoly]) -> list[MultiPoly]:
    out = [MultiPoly.const(0) for _ in range(len(p) + len(q) - 1)]
    for i, a in enumerate(p):
        if a.is_zero():
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


def _strip_nonzero(eq: MultiPoly, nonzero: frozenset[str]) -> MultiPoly:
    if eq.is_zero():
        return eq
    content = eq.monomial_content()
    shift = {v: k for v, k in zip(eq.vars, content) if k and v in nonzero}
    if not shift:
        return eq
    terms = {}
    for e, c in eq.terms.items():
        terms[tuple(x - shift.get(v, 0) for v, x in zip(eq.vars, e))] = c
    return MultiPoly._raw(terms, eq.vars)


def _apply_power_subs(eq: MultiPoly, subs: tuple[tuple[str, str, int], ...]) -> MultiPoly:
    for old, new, k in subs:
        if old not in eq.free_vars():
            continue
        i = eq.vars.index(old)
        if any(e[i] % k for e in eq.terms):
            raise AnsatzError(f"{old} does not occur only through {old}^{k}")
        vars_ = eq.vars[:i] + (new,) + eq.vars[i + 1:]
        if new in eq.vars:
            raise AnsatzError(f"symbol {new} already present")
        eq = MultiPoly._raw({e[:i] + (e[i] // k,) + e[i + 1:]: c for e, c in eq.terms.items()}, vars_)
    return eq


def normalize_equation(eq: MultiPoly) -> MultiPoly:
    """Integer-primitive form with positive leading term (lex order)."""
    return eq.compact().primitive() if not eq.is_zero() else eq


def build_system(s: SurfaceModel, z: Ansatz, order=(), survivor: str | None = None) -> CoefficientSystem:
    """Collect the coefficients of y^2 - x^3 - v^a (v^b + 1) in v, cleared of denominators."""
    if z.x_degree > 2 * s.n or z.y_degree > 3 * s.n:
        raise AnsatzError(
            f"ansatz degrees ({z.x_degree}, {z.y_degree}) exceed ({2 * s.n}, {3 * s.n}) for {s.label}"
        )
    ysq = _poly_mul(list(z.y_slots), list(z.y_slots))
    xcube = _poly_mul(_poly_mul(list(z.x_slots), list(z.x_slots)), list(z.x_slots))
    weight = MultiPoly.var(z.scale) ** 6 if z.scale else MultiPoly.const(1)
    top = max(len(ysq), len(xcube), s.a + s.b + 1)
    rhs = [MultiPoly.const(0)] * top
    for e in s.rhs_exponents():
        rhs[e] = rhs[e] + weight
    raw, eqs = [], []
    for k in range(top):
        val = MultiPoly.const(0)
        if k < len(ysq):
            val = val + ysq[k]
        if k < len(xcube):
            val = val - xcube[k]
        val = val - rhs[k]
        val = val.compact()
        if val.is_zero():
            continue
        raw.append(val)
        eq = _apply_power_subs(_strip_nonzero(val, z.nonzero), z.power_subs)
        eq = normalize_equation(_strip_nonzero(eq, z.nonzero))
        if eq.is_constant():
            raise AnsatzError(f"inconsistent ansatz: coefficient of v^{k} is a nonzero constant")
        if eq not in eqs:
            eqs.append(eq)
    return CoefficientSystem(s, z, eqs, tuple(order), survivor, raw)
