from __future__ import annotations

import pytest

from shioda360.algebra import qq
from shioda360.surface import (
    DECOMPOSITION,
    SurfaceError,
    SurfaceModel,
    birational_partner,
    classify_fibers,
    decomposition_rank,
    lattice_type,
    parse_surface,
    shioda_tate_rank,
    trivial_lattice,
)

# (a, b): (a', rank, trivial lattice)
RANK_TABLE = {
    (2, 1): (3, 2, ["A2", "D4"]),
    (3, 1): (2, 2, ["D4", "A2"]),
    (1, 2): (3, 4, ["D4"]),
    (2, 2): (2, 4, ["A2", "A2"]),
    (3, 2): (1, 4, ["D4"]),
    (1, 3): (2, 6, ["A2"]),
    (2, 3): (1, 6, ["A2"]),
    (1, 4): (1, 8, []),
    (1, 5): (0, 8, []),
    (0, 5): (1, 8, []),
    (0, 6): (0, 8, []),
}


@pytest.mark.parametrize("ab", sorted(RANK_TABLE))
def test_rank_table(ab):
    s = SurfaceModel(*ab)
    a_prime, rank, lattices = RANK_TABLE[ab]
    assert s.kind == "rational"
    assert s.a_prime == a_prime
    assert shioda_tate_rank(s) == rank
    assert trivial_lattice(s) == lattices


def test_fibers_of_2_1():
    fibers = classify_fibers(SurfaceModel(2, 1))
    by_place = {f.place: f.kodaira_type for f in fibers}
    assert by_place == {"zero": "IV", "root": "II", "infinity": "I0*"}


def test_k3_member_1_10():
    s = SurfaceModel(1, 10)
    fibers = classify_fibers(s)
    assert s.kind == "K3"
    assert len(fibers) == 12
    assert all(f.kodaira_type == "II" for f in fibers)
    assert shioda_tate_rank(s) == 16


def test_0_6_only_root_fibers():
    fibers = classify_fibers(SurfaceModel(0, 6))
    assert len(fibers) == 6
    assert {f.place for f in fibers} == {"root"}


def test_other_k3_members_refused():
    with pytest.raises(SurfaceError):
        shioda_tate_rank(SurfaceModel(1, 7))


def test_decomposition_rank_is_68():
    assert len(DECOMPOSITION) == 11
    assert decomposition_rank() == 68
    assert all(360 % b == 0 for _, b in DECOMPOSITION)


@pytest.mark.parametrize(
    "ab,name,rank,disc",
    [
        ((2, 1), "A2*(1/2)", 2, qq(1, 12)),
        ((2, 2), "A2*+A2*", 4, qq(1, 9)),
        ((1, 3), "E6*", 6, qq(1, 3)),
        ((0, 5), "E8", 8, qq(1)),
    ],
)
def test_lattice_types(ab, name, rank, disc):
    lt = lattice_type(SurfaceModel(*ab))
    assert (lt.name, lt.rank, lt.discriminant) == (name, rank, disc)


@pytest.mark.parametrize("text", ["4,2", "0,0", "7,7", "1", "x,y"])
def test_invalid_surfaces_rejected(text):
    with pytest.raises(SurfaceError):
        parse_surface(text)


def test_parse_master():
    assert parse_surface("master") == "master"
    assert parse_surface(" 2,1 ") == SurfaceModel(2, 1)


def test_partners():
    p = birational_partner(SurfaceModel(2, 1))
    assert p.target == SurfaceModel(3, 1)
    assert (p.x_weight, p.y_weight) == (2, 3)
    k3 = birational_partner(SurfaceModel(1, 10))
    assert k3.target == SurfaceModel(1, 10)
    assert (k3.x_weight, k3.y_weight) == (4, 6)
    assert birational_partner(SurfaceModel(0, 5)).target == SurfaceModel(1, 5)


@pytest.mark.parametrize("ab", sorted(RANK_TABLE) + [(1, 10)])
def test_partner_is_involution(ab):
    s = SurfaceModel(*ab)
    assert birational_partner(birational_partner(s).target).target == s
