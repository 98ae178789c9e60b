"""Elimination of a coefficient system down to its fundamental polynomial.

The elimination order is fixed per surface and recorded on the system as a
list of (symbol, method) stages:

* ``solve``: the symbol occurs linearly with a constant coefficient in some
  equation; it is expressed through the others and substituted.
* ``pivot``: the equation of least positive degree in the symbol is paired
  with every other equation containing it, by resultant.
* ``pairs``: every pair of equations containing the symbol is eliminated.

The univariate eliminants left over are combined by gcd.  Resultants can
still introduce spurious factors, so each factor of the result is tested by
numeric back-substitution through the stages at every one of its roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import mpmath
from mpmath import mpc, mpf

from ..algebra.factor import structured_factor
from ..algebra.multipoly import MultiPoly
from ..algebra.poly import Poly, poly_gcd, square_free_part
from ..algebra.rational import QQ
from ..algebra.resultant import resultant
from .ansatz import CoefficientSystem, _strip_nonzero, normalize_equation


class EliminationError(ArithmeticError):
    pass


class UndecidedFactor(EliminationError):
    pass


@dataclass
class Stage:
    symbol: str
    method: str
    equations: list[MultiPoly]  # equations present when the stage starts
    solution: MultiPoly | None = None  # for solve stages: symbol = solution


@dataclass
class Elimination:
    system: CoefficientSystem
    stages: list[Stage]
    eliminants: list[Poly]
    final: list[MultiPoly]  # equations in the survivor only


def _containing(eqs, var):
    return [e for e in eqs if var in e.free_vars()]


def _clean(eqs: list[MultiPoly], nonzero) -> list[MultiPoly]:
    out: list[MultiPoly] = []
    for e in eqs:
        e = _strip_nonzero(e.compact(), nonzero)
        if e.is_zero():
            continue
        if e.is_constant():
            raise EliminationError("elimination produced a nonzero constant: the system is inconsistent")
        e = normalize_equation(e)
        if e not in out:
            out.append(e)
    return out


def _solve_linear(eqs: list[MultiPoly], var: str) -> MultiPoly:
    for e in eqs:
        cs = e.coeffs_in(var)
        if len(cs) == 2 and cs[1].is_constant() and not cs[1].is_zero():
            return cs[0] * (-1 / cs[1].constant_value())
    raise EliminationError(f"no equation is linear in {var} with constant coefficient")


def run_elimination(sys: CoefficientSystem) -> Elimination:
    if not sys.order or not sys.survivor:
        raise EliminationError("the system carries no elimination order")
    nonzero = sys.ansatz.nonzero
    eqs = list(sys.equations)
    stages: list[Stage] = []
    for var, method in sys.order:
        here = _containing(eqs, var)
        if not here:
            raise EliminationError(f"symbol {var} no longer occurs")
        stage = Stage(var, method, list(eqs))
        rest = [e for e in eqs if var not in e.free_vars()]
        if method == "solve":
            sol = _solve_linear(here, var)
            stage.solution = sol
            new = [e.subs({var: sol}) for e in here]
        elif method == "pivot":
            pivot = min(here, key=lambda e: (e.degree(var), len(e.terms)))
            new = [resultant(pivot, e, var) for e in here if e is not pivot]
        elif method == "pairs":
            new = [resultant(p, q, var) for p, q in combinations(here, 2)]
        else:
            raise ValueError(f"unknown elimination method {method!r}")
        stages.append(stage)
        eqs = _clean(rest + new, nonzero)
        if not eqs:
            raise EliminationError(f"elimination of {var} left no equations (degenerate order)")
    final = [e for e in eqs if set(e.free_vars()) <= {sys.survivor}]
    if len(final) != len(eqs):
        left = sorted({v for e in eqs for v in e.free_vars()} - {sys.survivor})
        raise EliminationError(f"symbols {left} survive the elimination")
    eliminants = [e.to_poly(sys.survivor) for e in final]
    return Elimination(sys, stages, eliminants, final)


# -- numeric back-substitution -------------------------------------------


class _Numeric:
    """Just enough of the ring protocol for MultiPoly.evaluate on complex numbers."""

    zero = mpc(0)
    one = mpc(1)

    @staticmethod
    def coerce(c):
        return mpf(int(c.numerator)) / int(c.denominator)


def _eval(e: MultiPoly, values: dict) -> tuple[mpc, mpf]:
    """Value and a magnitude scale (sum of absolute term values)."""
    val = mpc(0)
    scale = mpf(0)
    for exps, c in e.terms.items():
        t = _Numeric.coerce(c)
        for v, k in zip(e.vars, exps):
            if k:
                t = t * values[v] ** k
        val += t
        scale += abs(t)
    return val, scale


def _vanishes(e: MultiPoly, values: dict, tol) -> bool:
    val, scale = _eval(e, values)
    return abs(val) <= tol * max(scale, mpf(1))


def _univariate(e: MultiPoly, var: str, values: dict, tol) -> list:
    cs = []
    for c in e.coeffs_in(var):
        v, s = _eval(c, values) if not c.is_zero() else (mpc(0), mpf(0))
        cs.append(mpc(0) if abs(v) <= tol * max(s, mpf(1)) else v)
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _numeric_extensions(stages: list[Stage], values: dict, tol, limit: int = 4096) -> list[dict]:
    """All full numeric solutions extending ``values`` (which fixes the survivor)."""
    partial = [dict(values)]
    for stage in reversed(stages):
        nxt = []
        for vals in partial:
            if stage.method == "solve":
                v, _ = _eval(stage.solution, vals)
                nxt.append({**vals, stage.symbol: v})
                continue
            polys = [_univariate(e, stage.symbol, vals, tol) for e in _containing(stage.equations, stage.symbol)]
            polys = [p for p in polys if len(p) > 1]
            if not polys:
                continue
            base = min(polys, key=len)
            roots = [base[0] * -1 / base[1]] if len(base) == 2 else mpmath.polyroots(
                base[::-1], maxsteps=400, extraprec=800
            )
            for r in roots:
                cand = {**vals, stage.symbol: mpc(r)}
                if all(_vanishes(e, cand, tol) for e in stage.equations if set(e.free_vars()) <= set(cand)):
                    nxt.append(cand)
        partial = nxt[:limit]
        if not partial:
            return []
    return partial


def root_extends(elim: Elimination, root, dps: int = 60) -> bool:
    sys = elim.system
    with mpmath.workdps(dps):
        tol = mpf(10) ** (-(dps // 3))
        vals = {sys.survivor: mpc(root)}
        sols = _numeric_extensions(elim.stages, vals, tol)
        return any(all(_vanishes(e, s, tol) for e in sys.equations) for s in sols)


@dataclass
class FundamentalPolynomial:
    poly: Poly
    raw_gcd: Poly
    kept: list[Poly]
    dropped: list[Poly]
    elimination: Elimination


def fundamental_polynomial(sys: CoefficientSystem, survivor: str | None = None, dps: int = 60) -> FundamentalPolynomial:
    if survivor is not None and survivor != sys.survivor:
        sys = CoefficientSystem(sys.surface, sys.ansatz, sys.equations, sys.order, survivor, sys.raw)
    elim = run_elimination(sys)
    g = Poly([], QQ, sys.survivor)
    for p in elim.eliminants:
        g = poly_gcd(g, p)
    if g.degree < 1:
        raise EliminationError("the eliminants have no common factor")
    g = square_free_part(g)
    kept, dropped = [], []
    for f in structured_factor(g).factors:
        from ..numberfield.recognize import numeric_roots

        flags = [root_extends(elim, r, dps) for r in numeric_roots(f.poly, dps)]
        if all(flags):
            kept.append(f.poly)
        elif not any(flags):
            dropped.append(f.poly)
        else:
            raise UndecidedFactor(f"factor {f.poly} has roots on both sides of the extension test")
    result = Poly([1], QQ, sys.survivor)
    for f in kept:
        result = result * f
    return FundamentalPolynomial(result.monic(), g, kept, dropped, elim)
