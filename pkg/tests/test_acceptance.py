"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run under pytest (lines appear in the "acceptance criteria" summary section)
or directly with ``python tests/test_acceptance.py``.  Criteria with a time
budget start from cold caches so their timings stand on their own.
"""

from __future__ import annotations

import json
import random
import sys
import tempfile
import time
from importlib import resources
from pathlib import Path

import pytest

from shioda360.algebra import MultiPoly, Poly, parse_poly, qq, resultant, sylvester_resultant
from shioda360.algebra.factor import structured_factor, verify_factor_list
from shioda360.basechange import BLOCK_FIXTURE, EXPECTED_M68, assemble_m68, fixture_blocks, lift_to_master
from shioda360.heights import FIXTURES, GramMatrix, gram, signed_permutation_equivalent
from shioda360.numberfield import make_cyclotomic
from shioda360.sections import (
    SectionDataError,
    apply_partner_map,
    catalog,
    load_sections,
    sections_from_json,
    verify_section,
)
from shioda360.surface import DECOMPOSITION, SurfaceModel, decomposition_rank, shioda_tate_rank


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def _product(polys: list[Poly]) -> Poly:
    acc = polys[0]
    for p in polys[1:]:
        acc = acc * p
    return acc


def _equal_up_to_unit(p: Poly, q: Poly) -> bool:
    return p.degree == q.degree and p.scale(q.lc / p.lc) == q


# -- criteria ------------------------------------------------------------------


def criterion_1():
    catalog.clear_caches()

    def run():
        res = {}
        res["(1,2)"] = catalog.fundamental("1,2").poly == parse_poly("u^24 - 270*u^12 - 27", var="u")
        res["(1,3)"] = catalog.fundamental("1,3").poly == parse_poly(
            "a^27 - 1344*a^18 - 40704*a^9 - 4096", var="a"
        )
        res["(2,2)"] = _equal_up_to_unit(
            catalog.fundamental("2,2").poly, parse_poly("(2*u^3 - 1)*(u^3 + 4)", var="u")
        )
        phi = catalog.fundamental("1,4").poly
        res["(1,4)"] = phi.degree == 40 and _equal_up_to_unit(phi, _product(catalog.printed_factors("1,4")))
        return res

    res, dt = _timed(run)
    ok = all(res.values()) and dt < 60
    detail = ", ".join(f"{k} {'exact' if v else 'MISMATCH'}" for k, v in res.items())
    return ok, f"fundamental polynomials: {detail}; {dt:.1f}s (budget 60s)"


def criterion_2():
    catalog.clear_caches()

    def run():
        res = {}
        g1 = gram(catalog.generators((2, 1)))
        res["M1"] = g1.entries == FIXTURES["M1"] and g1.det == qq(1, 12)
        res["det M2 = 1/4"] = gram(catalog.generators((1, 2))).det == qq(1, 4)
        g2 = gram(catalog.generators((2, 2)))
        blockdiag = all(g2.entries[i][j] == 0 for i in range(2) for j in range(2, 4))
        res["M2' block diagonal, det 1/9"] = blockdiag and g2.det == qq(1, 9)
        g3 = gram(catalog.generators((1, 3)))
        entries = {c for r in g3.entries for c in r}
        res["det M3 = 1/3"] = g3.det == qq(1, 3) and entries <= {qq(4, 3), qq(1, 3), qq(-2, 3)}
        g4 = gram(catalog.generators((1, 4)))
        res["M4 ~ printed"] = signed_permutation_equivalent(g4.entries, FIXTURES["M4"]) is not None
        return res

    res, dt = _timed(run)
    ok = all(res.values()) and dt < 300
    detail = ", ".join(f"{k}: {'ok' if v else 'FAIL'}" for k, v in res.items())
    return ok, f"Gram matrices {detail}; {dt:.1f}s (budget 300s)"


def criterion_3():
    def run():
        return GramMatrix(FIXTURES["M5"]).det, GramMatrix(FIXTURES["M10"]).det

    (d5, d10), dt = _timed(run)
    ok = d5 == 1 and d10 == 625 and dt < 1
    return ok, f"fixture determinants: det M5 = {d5}, det M10 = {d10} (expected 1, 625); {dt:.3f}s"


def criterion_4():
    table = {
        (2, 1): 2, (3, 1): 2, (1, 2): 4, (2, 2): 4, (3, 2): 4, (1, 3): 6,
        (2, 3): 6, (1, 4): 8, (1, 5): 8, (0, 5): 8, (0, 6): 8, (1, 10): 16,
    }

    def run():
        bad = [ab for ab, r in table.items() if shioda_tate_rank(SurfaceModel(*ab)) != r]
        return bad, decomposition_rank()

    (bad, total), dt = _timed(run)
    ok = not bad and total == 68 and dt < 1
    return ok, f"rank table: {len(table) - len(bad)}/{len(table)} rows match, decomposition sum {total}; {dt:.3f}s"


def criterion_5():
    catalog.clear_caches()

    def run():
        n_sections = n_bad = 0
        for key in ("2,1", "1,2", "2,2", "2,2/0", "1,3", "1,4"):
            qs = catalog.candidates(key)
            partner_ok = catalog.recipe(key).surface in catalog.PARTNERS.values()
            for q in qs:
                n_sections += 1
                n_bad += not verify_section(q)
                if partner_ok:
                    n_sections += 1
                    n_bad += not verify_section(apply_partner_map(q))
        points = [lift_to_master(q) for ab in catalog.DERIVABLE for q in catalog.generators(ab)]
        good_points = sum(p.verify() for p in points)
        return n_sections, n_bad, len(points), good_points

    (n, bad, npts, good), dt = _timed(run)
    ok = bad == 0 and npts == 36 and good == 36 and dt < 600
    return ok, (
        f"section verification: {n - bad}/{n} derived sections on the 8 surfaces, "
        f"{good}/{npts} master points (expected 36); {dt:.1f}s (budget 600s)"
    )


def criterion_6():
    def run():
        return assemble_m68(fixture_blocks())

    bg, dt = _timed(run)
    fac = bg.factorization()
    ok = bg.rank == 68 and fac == EXPECTED_M68 and dt < 1
    shown = " * ".join(f"{p}^{e}" for p, e in fac.items())
    return ok, f"det M68 = {shown} from {len(bg.blocks)} scaled blocks, rank {bg.rank}; {dt:.3f}s"


def _resultant_suite(rng: random.Random, n: int) -> int:
    def rand():
        deg = rng.randint(1, 3)
        cs = [rng.randint(-5, 5) for _ in range(deg)] + [rng.choice([-3, -2, -1, 1, 2, 3])]
        return MultiPoly.from_poly(Poly(cs, var="x"), "x")

    bad = 0
    for _ in range(n):
        f, g, h = rand(), rand(), rand()
        lhs = sylvester_resultant(f * g, h, "x")
        bad += not (resultant(f * g, h, "x") == lhs == resultant(f, h, "x") * resultant(g, h, "x"))
    return bad


def _field_suite(rng: random.Random, n: int) -> int:
    k = make_cyclotomic(24)
    basis = k.power_basis()

    def rand():
        acc = k.zero
        for b in basis:
            acc = acc + qq(rng.randint(-6, 6), rng.randint(1, 4)) * b
        return acc

    bad = 0
    for _ in range(n):
        x, y, z = rand(), rand(), rand()
        ok = x * (y + z) == x * y + x * z and (x * y) * z == x * (y * z) and x + y == y + x and x * y == y * x
        if not x.is_zero():
            ok = ok and x * x.inverse() == k.one
        bad += not ok
    return bad


def _paper_polynomials() -> list[tuple[Poly, list[Poly]]]:
    out = []
    for key, text in catalog.PRINTED_POLYNOMIALS.items():
        out.append((parse_poly(text, var=catalog.recipe(key).survivor), catalog.printed_factors(key)))
    out.append((_product(catalog.printed_factors("1,4")), catalog.printed_factors("1,4")))
    out.append((parse_poly("A^3 - 84*A^2 - 159*A - 1", var="A"), []))
    out.append((parse_poly("U^2 - 270*U - 27", var="U"), []))
    return out


def criterion_7():
    def run():
        rng = random.Random(7)
        res_bad = _resultant_suite(rng, 120)
        field_bad = _field_suite(rng, 1000)
        inv_total = inv_bad = 0
        for key in ("2,1", "1,2", "2,2", "2,2/0", "1,3", "1,4"):
            for q in catalog.candidates(key):
                inv_total += 1
                inv_bad += not apply_partner_map(apply_partner_map(q)).same_as(q)
        fac_bad = 0
        polys = _paper_polynomials()
        for p, cands in polys:
            fac = structured_factor(p, cands or None)
            fac_bad += fac.expand() != p or (bool(cands) and not verify_factor_list(p, cands))
        return res_bad, field_bad, inv_total, inv_bad, len(polys), fac_bad

    (rb, fb, it, ib, npoly, pb), dt = _timed(run)
    ok = rb == 0 and fb == 0 and ib == 0 and pb == 0 and dt < 120
    return ok, (
        f"property suites: resultant {120 - rb}/120, field axioms {1000 - fb}/1000, "
        f"partner involution {it - ib}/{it}, factor round trip {npoly - pb}/{npoly}; {dt:.1f}s (budget 120s)"
    )


def criterion_8():
    checks = {}
    checks["M5/M10 served by fixtures"] = all(BLOCK_FIXTURE[ab] in FIXTURES for ab in [(0, 5), (1, 5), (1, 10)])
    checks["no derivation for data-only surfaces"] = all(
        ab not in catalog.DERIVABLE for ab in [(0, 5), (1, 5), (1, 10)]
    )
    sample = resources.files("shioda360").joinpath("data/sections_2_1.json")
    checks["bundled data ingests and verifies"] = len(load_sections(sample)) == 2
    doc = json.loads(sample.read_text())
    doc["sections"][0]["x"]["1"] = "1"
    try:
        sections_from_json(doc)
        checks["corrupted data rejected"] = False
    except SectionDataError as exc:
        checks["corrupted data rejected"] = exc.index == 0
    with tempfile.TemporaryDirectory() as d:
        Path(d, "s.json").write_text(sample.read_text())
        from shioda360.basechange import ingest_directory

        checks["directory ingestion"] = list(ingest_directory(d)) == [(2, 1)]
    checks["decomposition covers 11 blocks"] = len(DECOMPOSITION) == 11
    ok = all(checks.values())
    failed = [k for k, v in checks.items() if not v]
    return ok, (
        "excluded compositum/splitting-field polynomials replaced by data-gated verification"
        + ("" if ok else f"; failing: {', '.join(failed)}")
    )


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


def _line(n: int, ok: bool, detail: str) -> str:
    return f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"


@pytest.mark.slow
@pytest.mark.parametrize("n", range(1, len(CRITERIA) + 1))
def test_acceptance(n, acceptance_log):
    try:
        ok, detail = CRITERIA[n - 1]()
    except Exception as exc:  # a crash is a failed criterion, reported like the others
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    line = _line(n, ok, detail)
    acceptance_log.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    failures = 0
    for i, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        failures += not ok
        print(_line(i, ok, detail), flush=True)
    sys.exit(1 if failures else 0)
