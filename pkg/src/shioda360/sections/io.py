"""JSON form of sections: a shared tower description plus coefficient maps."""

from __future__ import annotations

import json
from pathlib import Path

from ..algebra.parse import ParseError
from ..numberfield.tower import FieldTower
from ..surface import SurfaceError, SurfaceModel
from .section import Section, make_section, verify_section

SCHEMA_VERSION = 1
PROVENANCES = ("derived-from-root", "loaded-from-data", "transformed")


class SectionDataError(ValueError):
    """Schema violation or failed verification; ``index`` names the offending section."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message if index is None else f"section {index}: {message}")
        self.index = index


def section_to_json(q: Section) -> dict:
    return {
        "surface": [q.surface.a, q.surface.b],
        "label": q.label,
        "provenance": q.provenance,
        "x": {str(k): q.x[k].to_text() for k in sorted(q.x.coeffs)},
        "y": {str(k): q.y[k].to_text() for k in sorted(q.y.coeffs)},
    }


def sections_to_json(sections: list[Section], tower: FieldTower | None = None) -> dict:
    """One document per list; every section is written over the common (deepest) tower."""
    if not sections and tower is None:
        raise ValueError("nothing to serialize")
    if tower is None:
        tower = max((q.tower for q in sections), key=lambda t: t.depth)
    body = []
    for q in sections:
        if not q.tower.is_prefix_of(tower):
            raise ValueError(f"section {q.label} does not live in the chosen tower")
        body.append(section_to_json(q))
    return {"schema": SCHEMA_VERSION, "tower": tower.to_json(), "sections": body}


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _coeff_map(raw, tower: FieldTower, what: str, index: int) -> dict[int, object]:
    if not isinstance(raw, dict):
        raise SectionDataError(f"{what} must map exponents to coefficients", index)
    out = {}
    for k, text in raw.items():
        try:
            e = int(k)
        except (TypeError, ValueError):
            raise SectionDataError(f"{what} exponent {k!r} is not an integer", index) from None
        try:
            out[e] = tower.parse(str(text))
        except (ParseError, ValueError, KeyError) as exc:
            raise SectionDataError(f"{what}[{k}] = {text!r} does not parse: {exc}", index) from None
    return out


def sections_from_json(doc: dict, provenance: str | None = "loaded-from-data") -> list[Section]:
    """Parse and verify every section; all-or-nothing."""
    if not isinstance(doc, dict):
        raise SectionDataError("top level must be an object")
    if doc.get("schema") != SCHEMA_VERSION:
        raise SectionDataError(f"unsupported schema {doc.get('schema')!r} (expected {SCHEMA_VERSION})")
    try:
        tower = FieldTower.from_json(doc.get("tower", {"levels": []}))
    except (ValueError, ParseError) as exc:
        raise SectionDataError(f"bad tower description: {exc}") from None
    raw = doc.get("sections")
    if not isinstance(raw, list):
        raise SectionDataError("'sections' must be a list")
    out = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict):
            raise SectionDataError("entry is not an object", i)
        try:
            a, b = entry["surface"]
            s = SurfaceModel(int(a), int(b))
        except (KeyError, TypeError, ValueError, SurfaceError) as exc:
            raise SectionDataError(f"bad surface: {exc}", i) from None
        x = _coeff_map(entry.get("x"), tower, "x", i)
        y = _coeff_map(entry.get("y"), tower, "y", i)
        prov = provenance or entry.get("provenance", "loaded-from-data")
        if prov not in PROVENANCES:
            raise SectionDataError(f"unknown provenance {prov!r}", i)
        q = make_section(s, tower, x, y, prov, str(entry.get("label", f"#{i}")))
        if not verify_section(q):
            raise SectionDataError(f"{q.label} does not satisfy the Weierstrass equation of {s.label}", i)
        out.append(q)
    return out


def load_sections(path) -> list[Section]:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SectionDataError(f"{path}: not valid JSON ({exc})") from None
    return sections_from_json(doc)


def save_sections(path, sections: list[Section], tower: FieldTower | None = None) -> None:
    Path(path).write_text(dumps(sections_to_json(sections, tower)))
