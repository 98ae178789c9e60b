from __future__ import annotations

import json
from importlib import resources

import pytest

from shioda360.cli import EXIT_MATH, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_2_1(capsys):
    code, out, _ = run(capsys, "classify", "--surface", "2,1", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["rank"] == 2
    assert [f["type"] for f in doc["fibers"]] == ["IV", "II", "I0*"]
    assert doc["lattice"]["discriminant"] == "1/12"


def test_classify_1_10(capsys):
    code, out, _ = run(capsys, "classify", "--surface", "1,10", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["rank"] == 16
    assert [f["type"] for f in doc["fibers"]] == ["II"] * 12


def test_classify_rejects_non_coprime(capsys):
    code, _, err = run(capsys, "classify", "--surface", "4,2")
    assert code == EXIT_USAGE
    assert "gcd" in err


@pytest.mark.parametrize("bits", ["32", "5000", "lots"])
def test_bad_precision_is_usage_error(capsys, bits):
    code, _, _ = run(capsys, "classify", "--surface", "2,1", "--precision", bits)
    assert code == EXIT_USAGE


def test_missing_surface_is_usage_error(capsys):
    code, _, _ = run(capsys, "gram")
    assert code == EXIT_USAGE


def test_underivable_surface_without_data(capsys):
    code, _, err = run(capsys, "sections", "--surface", "0,5")
    assert code == EXIT_USAGE
    assert "--data" in err


def test_fundpoly_1_3(capsys):
    code, out, _ = run(capsys, "fundpoly", "--surface", "1,3", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["polynomial"] == "a^27 - 1344*a^18 - 40704*a^9 - 4096"


def test_fundpoly_2_2(capsys):
    code, out, _ = run(capsys, "fundpoly", "--surface", "2,2", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["printed_factor_list_verified"]
    assert sorted(f["factor"] for f in doc["factors"]) == ["u^3 + 4", "u^3 - 1/2"]


def test_fundpoly_1_2(capsys):
    code, out, _ = run(capsys, "fundpoly", "--surface", "1,2", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["polynomial"] == "u^24 - 270*u^12 - 27"
    assert doc["printed_factor_list_verified"]
    assert len(doc["factors"]) == 2


def test_gram_2_1(capsys):
    code, out, _ = run(capsys, "gram", "--surface", "2,1", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["matches_target"]
    assert doc["det"] == "1/12"


def test_sections_emit_then_gram_from(tmp_path, capsys):
    out_file = tmp_path / "out.json"
    code, _, _ = run(capsys, "sections", "--surface", "2,1", "--emit", str(out_file))
    assert code == EXIT_OK
    code, out, _ = run(capsys, "gram", "--from", str(out_file), "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["entries"] == [["1/3", "1/6"], ["1/6", "1/3"]]


def test_emission_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "sections", "--surface", "1,2", "--emit", str(a))
    run(capsys, "sections", "--surface", "1,2", "--emit", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_corrupted_input_is_math_failure(tmp_path, capsys):
    doc = json.loads(resources.files("shioda360").joinpath("data/sections_2_1.json").read_text())
    doc["sections"][1]["y"]["1"] = "3"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, _, err = run(capsys, "verify", "--from", str(bad))
    assert code == EXIT_MATH
    assert "section 1" in err


def test_verify_data_directory(tmp_path, capsys):
    src = resources.files("shioda360").joinpath("data/sections_2_1.json")
    (tmp_path / "s.json").write_text(src.read_text())
    code, out, _ = run(capsys, "verify", "--data", str(tmp_path))
    assert code == EXIT_OK
    assert "(2,1): 2 sections verified" in out


def test_missing_data_directory(capsys, tmp_path):
    code, _, _ = run(capsys, "assemble", "--data", str(tmp_path / "nope"))
    assert code == EXIT_USAGE


@pytest.mark.slow
def test_assemble_partial(tmp_path, capsys):
    emit = tmp_path / "report.json"
    code, out, _ = run(capsys, "assemble", "--emit", str(emit))
    doc = json.loads(emit.read_text())
    assert code == EXIT_OK
    assert doc["verified_points"] == 36
    assert doc["partial"]
    assert doc["det_matches"]
    assert "partial assembly: 36 of 68 points" in out
