"""Command-line front end.

Exit codes: 0 success, 1 mathematical failure (verification or determinant
mismatch), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .algebra.factor import structured_factor, verify_factor_list
from .surface import (
    SurfaceError,
    SurfaceModel,
    birational_partner,
    classify_fibers,
    lattice_type,
    parse_surface,
    shioda_tate_rank,
)

EXIT_OK, EXIT_MATH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class MathFailure(Exception):
    def __init__(self, message: str, payload: dict | None = None):
        super().__init__(message)
        self.payload = payload or {}


@dataclass
class RunConfig:
    command: str
    surface: SurfaceModel | str | None = None
    precision: int = 256
    data: Path | None = None
    emit: Path | None = None
    source: Path | None = None
    fmt: str = "text"
    all_sections: bool = False
    verbose: int = 0
    extra: dict = field(default_factory=dict)


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _need_surface(cfg: RunConfig) -> SurfaceModel:
    if not isinstance(cfg.surface, SurfaceModel):
        raise UsageError(f"{cfg.command} needs --surface a,b")
    return cfg.surface


# -- commands ----------------------------------------------------------------


def cmd_classify(cfg: RunConfig) -> tuple[dict, str]:
    s = _need_surface(cfg)
    fibers = classify_fibers(s)
    doc = {
        "surface": [s.a, s.b],
        "kind": s.kind,
        "chi": s.chi,
        "fibers": [
            {"place": f.place, "index": f.index, "order": f.order, "type": f.kodaira_type, "components": f.components}
            for f in fibers
        ],
        "partner": [birational_partner(s).target.a, birational_partner(s).target.b],
    }
    try:
        doc["rank"] = shioda_tate_rank(s)
    except SurfaceError as exc:
        doc["rank"] = None
        doc["rank_note"] = str(exc)
    try:
        lt = lattice_type(s)
        doc["lattice"] = {"name": lt.name, "rank": lt.rank, "discriminant": str(lt.discriminant)}
    except SurfaceError:
        doc["lattice"] = None
    counts: dict[str, int] = {}
    for f in fibers:
        counts[f.kodaira_type] = counts.get(f.kodaira_type, 0) + 1
    lines = [f"surface {s.label}: {s.kind}, chi = {s.chi}, rank {doc['rank']}"]
    lines.append("fibers: " + ", ".join(f"{f.kodaira_type}@{f.place if f.index is None else f'root{f.index}'}" for f in fibers))
    lines.append("fiber counts: " + ", ".join(f"{n} x {t}" for t, n in counts.items()))
    if doc["lattice"]:
        lines.append(f"lattice: {doc['lattice']['name']} (det {doc['lattice']['discriminant']})")
    return doc, "\n".join(lines)


def cmd_fundpoly(cfg: RunConfig) -> tuple[dict, str]:
    from .sections import catalog

    s = _need_surface(cfg)
    try:
        fp = catalog.fundamental((s.a, s.b))
    except catalog.CatalogError as exc:
        raise UsageError(str(exc)) from None
    printed = catalog.printed_factors((s.a, s.b))
    fac = structured_factor(fp.poly, printed or None)
    doc = {
        "surface": [s.a, s.b],
        "survivor": fp.poly.var,
        "polynomial": str(fp.poly),
        "degree": fp.poly.degree,
        "factors": [
            {"factor": str(f.poly), "multiplicity": f.multiplicity, "proven_irreducible": f.proven_irreducible}
            for f in fac.factors
        ],
        "dropped_extraneous": [str(p) for p in fp.dropped],
    }
    lines = [f"{fp.poly.var}: {fp.poly}", f"factors: {fac}"]
    if printed:
        ok = verify_factor_list(fp.poly, printed)
        doc["printed_factor_list_verified"] = ok
        lines.append(f"printed factor list ({len(printed)} factors): {'verified' if ok else 'MISMATCH'}")
        if not ok:
            raise MathFailure("printed factor list does not multiply to the fundamental polynomial", doc)
    return doc, "\n".join(lines)


def _sections_for(cfg: RunConfig):
    from .sections import catalog

    if cfg.source:
        from .sections.io import load_sections

        return load_sections(cfg.source)
    s = _need_surface(cfg)
    ab = (s.a, s.b)
    if cfg.data and ab not in catalog.DERIVABLE:
        from .basechange import ingest_directory

        found = ingest_directory(cfg.data).get(ab)
        if not found:
            raise UsageError(f"no sections for {s.label} in {cfg.data}")
        return found
    try:
        if cfg.all_sections:
            key = catalog.GENERATOR_RECIPE.get(catalog.PARTNERS.get(ab, ab))
            if key is None:
                raise catalog.CatalogError(f"{s.label}")
            out = catalog.candidates(key)
            if ab in catalog.PARTNERS:
                from .sections.section import apply_partner_map

                out = [apply_partner_map(q) for q in out]
            return out
        return catalog.generators(ab)
    except catalog.CatalogError as exc:
        raise UsageError(f"sections of {s.label} are not derivable here; supply them with --data ({exc})") from None


def cmd_sections(cfg: RunConfig) -> tuple[dict, str]:
    from .sections.io import sections_to_json
    from .sections.section import verify_section

    qs = _sections_for(cfg)
    bad = [q.label for q in qs if not verify_section(q)]
    doc = sections_to_json(qs)
    lines = [f"{q.label}: {q}" for q in qs]
    lines.append(f"{len(qs) - len(bad)}/{len(qs)} sections verified")
    if bad:
        raise MathFailure(f"sections failed verification: {', '.join(bad)}", doc)
    return doc, "\n".join(lines)


def cmd_gram(cfg: RunConfig) -> tuple[dict, str]:
    from .heights import FIXTURES, gram
    from .sections import catalog

    qs = _sections_for(cfg)
    g = gram(qs)
    doc = g.to_json()
    s = qs[0].surface
    doc["surface"] = [s.a, s.b]
    text = g.to_text()
    target = catalog.target_name((s.a, s.b)) if not cfg.source else None
    if target:
        doc["target"] = target
        doc["matches_target"] = g.entries == FIXTURES[target]
        text += f"\nequals printed {target}: {doc['matches_target']}"
        if not doc["matches_target"]:
            raise MathFailure(f"Gram matrix differs from {target}", doc)
    if not g.is_positive_definite():
        raise MathFailure("Gram matrix is not positive definite", doc)
    return doc, text


def _assemble(cfg: RunConfig):
    from .basechange import (
        DATA_ONLY,
        BLOCK_FIXTURE,
        data_gram,
        fixture,
        ingest_directory,
        lift_to_master,
        verify_master_suite,
    )
    from .heights import gram
    from .sections import catalog

    points, blocks, sources = [], {}, {}
    for ab in catalog.DERIVABLE:
        gens = catalog.generators(ab)
        points.extend(lift_to_master(q) for q in gens)
        blocks[ab] = gram(gens)
        sources[ab] = "computed"
    data = ingest_directory(cfg.data) if cfg.data else {}
    for ab in DATA_ONLY:
        if ab in data:
            points.extend(lift_to_master(q) for q in data[ab])
            blocks[ab] = data_gram(data[ab], ab)
            sources[ab] = "data"
        else:
            blocks[ab] = fixture(BLOCK_FIXTURE[ab])
            sources[ab] = "fixture (no section data)"
    return verify_master_suite(points, blocks, sources)


def cmd_assemble(cfg: RunConfig) -> tuple[dict, str]:
    report = _assemble(cfg)
    doc = report.to_json()
    n = len(report.points)
    text = report.to_text()
    if n < 68:
        text += f"\npartial assembly: {n} of 68 points (no external data for the remaining blocks)"
    doc["partial"] = n < 68
    if not report.ok:
        raise MathFailure("; ".join(report.failures), doc)
    return doc, text


def cmd_verify(cfg: RunConfig) -> tuple[dict, str]:
    if cfg.source:
        return cmd_sections(cfg)
    if cfg.data:
        from .basechange import ingest_directory

        found = ingest_directory(cfg.data)
        doc = {SurfaceModel(*ab).label: len(qs) for ab, qs in sorted(found.items())}
        return {"verified": doc}, "\n".join(f"{k}: {v} sections verified" for k, v in doc.items())
    if isinstance(cfg.surface, SurfaceModel):
        return cmd_sections(cfg)
    return cmd_assemble(cfg)


COMMANDS = {
    "classify": cmd_classify,
    "fundpoly": cmd_fundpoly,
    "sections": cmd_sections,
    "gram": cmd_gram,
    "assemble": cmd_assemble,
    "verify": cmd_verify,
}


def _precision(text: str) -> int:
    try:
        bits = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("precision must be an integer number of bits") from None
    if not 64 <= bits <= 4096:
        raise argparse.ArgumentTypeError("precision must lie in 64..4096")
    return bits


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--surface", help="'a,b' or 'master'")
    common.add_argument("--precision", type=_precision, default=256, help="working precision in bits (64..4096)")
    common.add_argument("--data", type=Path, help="directory of section data files (*.json)")
    common.add_argument("--emit", type=Path, help="write the JSON result to this file")
    common.add_argument("--from", dest="source", type=Path, help="read sections from a JSON file")
    common.add_argument("--format", dest="fmt", choices=("json", "text"), default="text")
    common.add_argument("--all", dest="all_sections", action="store_true", help="all derived sections, not only generators")
    common.add_argument("-v", "--verbose", action="count", default=0)
    p = argparse.ArgumentParser(prog="shioda360", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return p


def parse_config(argv: list[str] | None) -> RunConfig:
    args = build_parser().parse_args(argv)
    surface = None
    if args.surface is not None:
        surface = parse_surface(args.surface)
    if args.data is not None and not args.data.is_dir():
        raise UsageError(f"data directory {args.data} does not exist")
    if args.source is not None and not args.source.is_file():
        raise UsageError(f"input file {args.source} does not exist")
    return RunConfig(
        args.command, surface, args.precision, args.data, args.emit, args.source, args.fmt, args.all_sections, args.verbose
    )


def main(argv: list[str] | None = None) -> int:
    from .numberfield.recognize import set_default_precision
    from .sections.io import SectionDataError

    try:
        cfg = parse_config(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (UsageError, SurfaceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    set_default_precision(cfg.precision)
    if cfg.surface == "master" and cfg.command not in ("assemble", "verify"):
        print("error: --surface master is only meaningful for assemble and verify", file=sys.stderr)
        return EXIT_USAGE
    code = EXIT_OK
    try:
        doc, text = COMMANDS[cfg.command](cfg)
    except (UsageError, SurfaceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SectionDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    except MathFailure as exc:
        doc, text, code = exc.payload, f"FAILED: {exc}", EXIT_MATH
    if cfg.emit:
        cfg.emit.write_text(_dump(doc))
    print(_dump(doc) if cfg.fmt == "json" else text, end="" if cfg.fmt == "json" else "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
