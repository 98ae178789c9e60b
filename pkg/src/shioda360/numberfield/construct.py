"""Building towers: cyclotomic levels, radical levels, and levels given by an explicit minimal polynomial."""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import mpmath
from mpmath import mpc, mpf

from ..algebra.poly import Poly
from ..algebra.rational import QQ, qq
from .ball import Ball
from .tower import (
    MAX_CYCLOTOMIC,
    FieldTower,
    Level,
    TowerElement,
    branch_strings,
    kth_roots,
)


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> Poly:
    """The n-th cyclotomic polynomial over Q."""
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    p = Poly([-1] + [0] * (n - 1) + [1], QQ, "x")
    for d in range(1, n):
        if n % d == 0:
            p = p.exact_div(cyclotomic_poly(d))
    return p


def make_cyclotomic(n: int, name: str | None = None) -> FieldTower:
    """Q(zeta_n) as a one-level tower; n = 1 gives the degree-one level zeta_1 = 1."""
    return adjoin_cyclotomic(FieldTower(), n, name=name)


def adjoin_cyclotomic(tower: FieldTower, n: int, name: str | None = None) -> FieldTower:
    if not isinstance(n, int) or not 1 <= n <= MAX_CYCLOTOMIC:
        raise ValueError(f"cyclotomic order must lie in 1..{MAX_CYCLOTOMIC}")
    if tower.depth:
        raise ValueError("cyclotomic levels are supported only directly over Q")
    phi = cyclotomic_poly(n)
    with mpmath.workprec(192):
        z = mpmath.expjpi(mpf(2) / n) if n > 1 else mpc(1)
    level = Level(
        name=name or f"z{n}",
        degree=phi.degree,
        minpoly=tuple(phi.coeffs),
        kind="cyclotomic",
        order=n,
        branch=branch_strings(z),
        branch_radius="1e-40",
        verified=True,
    )
    return tower.extend(level)


def _branch_center(branch):
    if branch is None:
        return None, None
    if isinstance(branch, Ball):
        return branch.center, branch.radius
    if isinstance(branch, tuple) and len(branch) == 2:
        return mpc(branch[0]), mpf(branch[1])
    return mpc(branch), None


def default_branch(roots: Sequence[mpc]) -> mpc:
    """Positive real root if one exists, else the root of smallest non-negative argument."""
    tol = mpf(10) ** -25
    reals = [r for r in roots if abs(r.imag) <= tol * max(1, abs(r)) and r.real > 0]
    if reals:
        return max(reals, key=lambda r: r.real)

    def arg(r):
        a = mpmath.arg(r)
        return a + 2 * mpmath.pi if a < -tol else max(a, mpf(0))

    return min(roots, key=arg)


def isolation_radius(roots: Sequence[mpc], chosen: mpc) -> str:
    """A third of the distance from the chosen root to the nearest other root."""
    others = [abs(r - chosen) for r in roots if r is not chosen]
    if not others:
        return "1e-30"
    return mpmath.nstr(min(others) / 3, 6)


def _select_root(roots: Sequence[mpc], branch) -> mpc:
    center, radius = _branch_center(branch)
    if center is None:
        return default_branch(roots)
    if radius is not None:
        inside = [r for r in roots if abs(r - center) <= radius]
        if len(inside) != 1:
            raise ValueError(f"branch ball contains {len(inside)} roots, expected exactly one")
        chosen = inside[0]
    else:
        ranked = sorted(roots, key=lambda r: abs(r - center))
        chosen = ranked[0]
        if len(ranked) > 1 and abs(ranked[1] - center) <= 2 * abs(chosen - center):
            raise ValueError("branch hint does not isolate a single root")
    return chosen


def adjoin_radical(
    tower: FieldTower,
    base,
    k: int,
    branch=None,
    name: str | None = None,
) -> FieldTower:
    """Adjoin g with g^k = base; the embedding is the k-th root selected by ``branch``."""
    from .irreducible import verify_radical

    if k < 1:
        raise ValueError("radical order must be positive")
    base = tower.coerce(base)
    if base.is_exact_zero():
        raise ValueError("cannot adjoin a root of zero")
    with mpmath.workprec(192):
        b = base.embed(192)
        if b.contains_zero():
            raise ValueError("radical base embeds to a ball containing zero")
        roots = kth_roots(b.center, k)
        chosen = _select_root(roots, branch)
    minpoly = (tower._neg(base.rep, tower.depth),) + (tower._zeros[tower.depth],) * (k - 1) + (
        tower._ones[tower.depth],
    )
    name = name or f"g{tower.depth + 1}"
    verified = verify_radical(tower, base, k)
    level = Level(
        name=name,
        degree=k,
        minpoly=minpoly,
        kind="radical",
        order=k,
        branch=branch_strings(chosen),
        branch_radius=isolation_radius(roots, chosen),
        verified=verified,
    )
    return tower.extend(level)


def adjoin_root(
    tower: FieldTower,
    coeffs: Sequence,
    branch=None,
    name: str | None = None,
) -> FieldTower:
    """Adjoin a root of a monic polynomial (coefficients low to high, in ``tower``)."""
    from .irreducible import verify_general

    cs = [tower.coerce(c) for c in coeffs]
    if len(cs) < 2:
        raise ValueError("minimal polynomial must have positive degree")
    if not (cs[-1] - 1).is_exact_zero():
        lead = cs[-1]
        cs = [c / lead for c in cs]
    with mpmath.workprec(192):
        centers = [c.embed(192).center for c in cs]
        roots = mpmath.polyroots(centers[::-1], maxsteps=400, extraprec=400) if len(cs) > 2 else [-centers[0]]
        roots = [mpc(r) for r in roots]
        chosen = _select_root(roots, branch)
    name = name or f"g{tower.depth + 1}"
    level = Level(
        name=name,
        degree=len(cs) - 1,
        minpoly=tuple(c.rep for c in cs),
        kind="general",
        order=0,
        branch=branch_strings(chosen),
        branch_radius=isolation_radius(roots, chosen),
        verified=verify_general(tower, cs),
    )
    return tower.extend(level)


def quadratic_root(tower: FieldTower, d, branch=None, name: str | None = None) -> FieldTower:
    """Convenience: adjoin sqrt(d)."""
    return adjoin_radical(tower, d, 2, branch=branch, name=name)
