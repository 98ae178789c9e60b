from __future__ import annotations

import copy
import json
from importlib import resources

import pytest

from shioda360.algebra import MultiPoly, parse_poly
from shioda360.sections import (
    SectionDataError,
    apply_partner_map,
    make_section,
    section_from_root,
    sections_from_json,
    sections_to_json,
    verify_section,
)
from shioda360.sections import catalog
from shioda360.sections.ansatz import Ansatz, AnsatzError, build_system
from shioda360.sections.io import dumps, load_sections, save_sections
from shioda360.surface import SurfaceModel


def _same_up_to_sign(got, expected: list[str]) -> bool:
    want = [MultiPoly.parse(e) for e in expected]
    if len(got) != len(want):
        return False
    return all(any(g == w or g == -w for g in got) for w in want)


def test_system_for_2_1():
    sys_ = catalog.coefficient_system("2,1")
    assert _same_up_to_sign(sys_.equations, ["a^3 + 1", "d^2 - b^3", "-3*a^2*b + c^2 - 1", "-3*a*b^2 + 2*c*d"])


def test_system_for_1_3():
    sys_ = catalog.coefficient_system("1,3")
    expected = ["2*d - a^3", "2*e + d^2 - 3*a^2*b", "2*d*e - 3*a*b^2 - 1", "e^2 - b^3"]
    assert _same_up_to_sign(sys_.equations, expected)


def test_system_for_1_4():
    sys_ = catalog.coefficient_system("1,4")
    expected = [
        "2*c - 3*a - U",
        "-3*a^2 + c^2 - 3*b + 2*d",
        "-a^3 - 6*a*b + 2*c*d + 2*e",
        "-3*a*b^2 + 2*d*e - U",
        "-3*a^2*b - 3*b^2 + 2*c*e + d^2",
        "e^2 - b^3",
    ]
    assert _same_up_to_sign(sys_.equations, expected)


def test_ansatz_degree_bound():
    with pytest.raises(AnsatzError):
        build_system(SurfaceModel(2, 1), Ansatz.make(["b", "a", "c", "d"], ["e"]))


def test_fundamental_polynomial_1_2():
    assert catalog.fundamental("1,2").poly == parse_poly("u^24 - 270*u^12 - 27", var="u")


def test_fundamental_polynomial_1_3():
    assert catalog.fundamental("1,3").poly == parse_poly("a^27 - 1344*a^18 - 40704*a^9 - 4096", var="a")


def test_fundamental_polynomial_2_2_up_to_unit():
    p = catalog.fundamental("2,2").poly
    target = parse_poly("(2*u^3 - 1)*(u^3 + 4)", var="u")
    assert p.scale(target.lc / p.lc) == target


def test_fundamental_polynomial_1_4_matches_printed_factors():
    p = catalog.fundamental("1,4").poly
    assert p.degree == 40
    cands = catalog.printed_factors("1,4")
    prod = cands[0]
    for c in cands[1:]:
        prod = prod * c
    assert p.scale(prod.lc / p.lc) == prod


def test_q1_of_2_1_from_root():
    k = catalog.tower_k1()
    q = section_from_root(catalog.fundamental("2,1"), k.coerce(1), hints={"a": k.coerce(-1)}, tower=k)
    assert q.same_as(make_section(SurfaceModel(2, 1), k, {1: -1}, {1: 1}))


def test_q2_of_2_1_from_root():
    k = catalog.tower_k1()
    z = k.gen(0)
    q = section_from_root(catalog.fundamental("2,1"), k.coerce(1), hints={"a": -z}, tower=k)
    assert q.same_as(make_section(SurfaceModel(2, 1), k, {1: -z}, {1: 1}))


def test_2_2_section_through_singular_point():
    k = catalog.tower_k2_prime()
    c2 = k.gen(1)
    q = section_from_root(catalog.fundamental("2,2"), c2 ** -1, hints={"a": k.coerce(0)}, tower=k)
    assert q.same_as(make_section(SurfaceModel(2, 2), k, {0: c2 / 2}, {0: k.coerce(1) / 2, 2: 1}))


def test_1_2_section_matches_closed_form():
    k = catalog.tower_k2()
    b1 = k.gen(1)
    q = section_from_root(catalog.fundamental("1,2"), b1, tower=k)
    expected = make_section(
        SurfaceModel(1, 2), k, {1: -1, 0: b1 ** -2}, {1: (b1 ** 3 - 3 * b1 ** -1) / 2, 0: b1 ** -3}
    )
    assert q.same_as(expected)
    assert verify_section(q)


def test_verify_section_examples():
    k = catalog.tower_k1()
    assert verify_section(make_section(SurfaceModel(2, 1), k, {1: -1}, {1: 1}))
    assert verify_section(make_section(SurfaceModel(3, 1), k, {1: -1}, {2: 1}))
    assert not verify_section(make_section(SurfaceModel(2, 1), k, {1: -1}, {1: 1, 0: 1}))


def test_partner_map_2_1_to_3_1():
    k = catalog.tower_k1()
    q = make_section(SurfaceModel(2, 1), k, {1: -1}, {1: 1})
    p = apply_partner_map(q)
    assert p.surface == SurfaceModel(3, 1)
    assert p.same_as(make_section(SurfaceModel(3, 1), k, {1: -1}, {2: 1}))


def test_partner_map_1_2_to_3_2():
    k = catalog.tower_k2()
    b1 = k.gen(1)
    q = section_from_root(catalog.fundamental("1,2"), b1, tower=k)
    p = apply_partner_map(q)
    expected = make_section(
        SurfaceModel(3, 2), k, {2: b1 ** -2, 1: -1}, {3: b1 ** -3, 2: (b1 ** 3 - 3 * b1 ** -1) / 2}
    )
    assert p.same_as(expected)
    assert verify_section(p)


@pytest.mark.parametrize("key", ["2,1", "1,2", "2,2", "2,2/0", "1,3"])
def test_partner_involution_on_candidates(key):
    for q in catalog.candidates(key):
        p = apply_partner_map(q)
        assert verify_section(p)
        assert apply_partner_map(p).same_as(q)


@pytest.mark.slow
def test_partner_involution_on_1_4_candidates():
    for q in catalog.candidates("1,4"):
        p = apply_partner_map(q)
        assert verify_section(p)
        assert apply_partner_map(p).same_as(q)


@pytest.mark.parametrize(
    "key,count",
    [("2,1", 12), ("1,2", 24), ("2,2/0", 12), ("1,3", 54)],
)
def test_candidate_counts_and_verification(key, count):
    qs = catalog.candidates(key)
    assert len(qs) == count
    assert all(verify_section(q) for q in qs)
    for i, q in enumerate(qs):
        assert not any(q.same_as(r) for r in qs[i + 1 :])


@pytest.mark.slow
def test_1_4_has_240_sections():
    qs = catalog.candidates("1,4")
    assert len(qs) == 240
    assert all(verify_section(q) for q in qs)
    assert len({q.approx_key() for q in qs}) == 240


def _sample():
    k = catalog.tower_k1()
    z = k.gen(0)
    s = SurfaceModel(2, 1)
    return [make_section(s, k, {1: -1}, {1: 1}, label="Q1"), make_section(s, k, {1: -z}, {1: -1}, label="Q2")]


def test_json_round_trip(tmp_path):
    qs = _sample()
    path = tmp_path / "s.json"
    save_sections(path, qs)
    back = load_sections(path)
    assert [q.label for q in back] == ["Q1", "Q2"]
    assert all(a.same_as(b) for a, b in zip(qs, back))
    again = tmp_path / "again.json"
    save_sections(again, back)
    assert dumps(sections_to_json(load_sections(again))) == again.read_text()


def test_corrupted_coefficient_names_section_index():
    doc = sections_to_json(_sample())
    bad = copy.deepcopy(doc)
    bad["sections"][1]["y"]["1"] = "2"
    with pytest.raises(SectionDataError) as info:
        sections_from_json(bad)
    assert info.value.index == 1
    assert "section 1" in str(info.value)


def test_unknown_schema_rejected():
    doc = sections_to_json(_sample())
    doc["schema"] = 2
    with pytest.raises(SectionDataError, match="schema"):
        sections_from_json(doc)


def test_bundled_sample_file():
    text = resources.files("shioda360").joinpath("data/sections_2_1.json").read_text()
    qs = sections_from_json(json.loads(text))
    assert len(qs) == 2
    assert all(verify_section(q) for q in qs)
