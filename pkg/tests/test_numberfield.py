from __future__ import annotations

import cmath
import json
import random

import pytest

from shioda360.algebra import Poly, parse_poly, qq
from shioda360.numberfield import (
    FieldTower,
    TowerMismatch,
    adjoin_radical,
    cyclotomic_poly,
    make_cyclotomic,
    minimal_polynomial,
)
from shioda360.numberfield.recognize import kummer_roots, recognize, roots_in_tower
from shioda360.sections import catalog


@pytest.fixture(scope="module")
def k24():
    return make_cyclotomic(24)


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(3) == parse_poly("x^2 + x + 1", var="x")
    assert cyclotomic_poly(24).degree == 8
    q = make_cyclotomic(1)
    assert q.degree == 1
    assert q.one == q.coerce(1)


def test_zeta3_relation():
    k = make_cyclotomic(3)
    z = k.gen(0)
    assert (z ** 2 + z + 1).is_zero()
    assert not (z - 1).is_zero()


def test_inverse_of_one_minus_zeta3():
    k = make_cyclotomic(3)
    z = k.gen(0)
    inv = (1 - z).inverse()
    assert inv == (1 - z ** 2) / 3
    assert (inv * (1 - z) - 1).is_zero()


def test_quadratic_subfields_of_q_zeta24(k24):
    w = k24.gen(0)
    i = w ** 6
    sqrt3 = w ** 2 + w ** -2
    sqrt2 = w ** 3 + w ** -3
    assert i ** 2 == -1
    assert sqrt3 ** 2 == 3
    assert sqrt2 ** 2 == 2
    assert abs(sqrt3.approx() - 3 ** 0.5) < 1e-12
    assert catalog.sqrt6(k24) ** 2 == 6


def test_embedding_of_zeta4():
    k = make_cyclotomic(4)
    b = k.gen(0).embed(64)
    assert abs(complex(b.center) - 1j) < 1e-15
    assert b.radius < 2.0 ** -60


def test_field_axioms_q_zeta24(k24):
    rng = random.Random(24)
    basis = k24.power_basis()

    def rand():
        acc = k24.zero
        for b in basis:
            acc = acc + qq(rng.randint(-6, 6), rng.randint(1, 4)) * b
        return acc

    for _ in range(1000):
        x, y, z = rand(), rand(), rand()
        assert x + y == y + x
        assert x * y == y * x
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x - x == k24.zero
        if not x.is_zero():
            assert x * x.inverse() == k24.one


def test_adjoin_sqrt6():
    k = adjoin_radical(FieldTower(), 6, 2, name="s")
    s = k.gen("s")
    assert s * s == 6
    assert abs(s.approx() - 6 ** 0.5) < 1e-12


def test_k2_generator_quartic():
    t = catalog.tower_k2()
    z = t.gen(0)
    b1 = t.gen(1)
    s3 = z + z ** -1
    assert (b1 ** 2) ** 2 == 3 + 2 * s3
    # 135 + 78 sqrt3 = (3 + 2 sqrt3)^3
    assert (3 + 2 * s3) ** 3 == 135 + 78 * s3
    assert abs((135 + 78 * s3).approx() - (3 + 2 * 3 ** 0.5) ** 3) < 1e-9


def test_printed_embedding_of_135_plus_78_sqrt3():
    k = catalog.tower_k2()
    z = k.gen(0)
    assert abs((135 + 78 * (z + z ** -1)).approx() - 270.105) < 5e-4


def test_k4_generator_real_branch():
    t = catalog.tower_k4()
    u1 = t.gen(1)
    assert u1 ** 6 == 22 + 9 * catalog.sqrt6(t)
    v = u1.approx()
    assert abs(v.imag) < 1e-12
    assert abs(v.real - (22 + 9 * 6 ** 0.5) ** (1 / 6)) < 1e-12


def test_printed_embedding_of_u1():
    assert abs(catalog.tower_k4().gen(1).approx() - 1.8837) < 5e-5


def test_minimal_polynomials():
    k = make_cyclotomic(3)
    z = k.gen(0)
    assert minimal_polynomial(z) == parse_poly("x^2 + x + 1", var="x")
    assert minimal_polynomial(-z) == parse_poly("x^2 - x + 1", var="x")
    c = adjoin_radical(FieldTower(), 2, 3, name="c")
    assert minimal_polynomial(c.gen("c")) == parse_poly("x^3 - 2", var="x")


def test_minimal_polynomial_of_sqrt2_plus_sqrt3(k24):
    w = k24.gen(0)
    x = (w ** 3 + w ** -3) + (w ** 2 + w ** -2)
    assert minimal_polynomial(x) == parse_poly("x^4 - 10*x^2 + 1", var="x")


def test_tower_mismatch_is_raised():
    a = make_cyclotomic(3).gen(0)
    b = make_cyclotomic(5).gen(0)
    with pytest.raises(TowerMismatch):
        a + b


def test_tower_json_round_trip():
    t = catalog.tower_k2()
    again = FieldTower.from_json(json.loads(json.dumps(t.to_json())))
    assert again == t
    x = t.gen(1) ** 3 + 2
    assert again.parse(x.to_text()).to_text() == x.to_text()


def test_recognize_round_trip(k24):
    w = k24.gen(0)
    x = qq(3, 7) * w ** 5 - 2 * w + 1
    assert recognize(x.embed(300).center, k24) == x


def test_recognize_rejects_non_member():
    k = make_cyclotomic(3)
    assert recognize(2 ** 0.5 + 0.123456789, k, maxcoeff=10**4) is None


def test_cubic_roots_in_q_zeta9():
    roots = catalog.cubic_roots_k3()
    assert len(roots) == 3
    f = parse_poly("A^3 - 84*A^2 - 159*A - 1", var="A")
    for a in roots:
        assert (a ** 3 - 84 * a ** 2 - 159 * a - 1).is_zero()
    assert len({round(r.approx().real, 6) for r in roots}) == 3
    assert f.degree == 3


def test_degree27_reduces_to_cubic():
    phi = parse_poly("a^27 - 1344*a^18 - 40704*a^9 - 4096", var="a")
    cubic = parse_poly("A^3 - 84*A^2 - 159*A - 1", var="A")
    # phi(a) = 4096 * F(a^9 / 16)
    inner = Poly([0] * 9 + [qq(1, 16)], var="a")
    assert phi == cubic.compose(inner).scale(4096)


def test_kummer_roots_count():
    t = catalog.tower_k2()
    z = t.gen(0)
    w = t.coerce(3 + 2 * (z + z ** -1))
    rs = kummer_roots(w ** 3, 12, t)
    assert len(rs) == 12
    assert all(r ** 12 == w ** 3 for r in rs)
    assert len({(round(r.approx().real, 8), round(r.approx().imag, 8)) for r in rs}) == 12


def test_roots_in_tower_of_sextic():
    t = catalog.tower_k2_prime()
    rs = roots_in_tower(parse_poly("a^6 - 4", var="a"), t)
    assert len(rs) == 6
    for r in rs:
        assert r ** 6 == 4
        assert abs(abs(r.approx()) - cmath.exp(cmath.log(4) / 6).real) < 1e-12
