"""Base change v = t^k to Y^2 = X^3 + t^360 + 1, block Gram assembly, data ingestion."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .algebra.laurent import LaurentPoly
from .algebra.rational import Rational, qq
from .heights import FIXTURES, GramMatrix, det, fixture
from .sections.io import SectionDataError, load_sections
from .sections.section import Section
from .surface import DECOMPOSITION, MASTER_DEGREE, SurfaceModel, lattice_type

EXPECTED_M68 = {2: 152, 3: 118, 5: 40}

# surface -> printed Gram matrix of its block
BLOCK_FIXTURE = {
    (2, 1): "M1",
    (3, 1): "M1",
    (1, 2): "M2",
    (3, 2): "M2",
    (2, 2): "M2'",
    (1, 3): "M3",
    (2, 3): "M3",
    (1, 4): "M4",
    (0, 5): "M5",
    (1, 5): "M5",
    (1, 10): "M10",
}
DATA_ONLY = [(0, 5), (1, 5), (1, 10)]


class BaseChangeError(ValueError):
    pass


class AssemblyError(BaseChangeError):
    pass


def scale_for(s: SurfaceModel) -> int:
    """Height scale m = [C(t) : C(v)] = 360 / b."""
    k = s.master_exponent
    if k is None:
        raise BaseChangeError(f"b = {s.b} does not divide {MASTER_DEGREE}")
    return k


@dataclass
class MasterPoint:
    X: LaurentPoly
    Y: LaurentPoly
    origin: tuple  # (surface label, section label, k, a)

    def defect(self) -> LaurentPoly:
        ring = self.X.ring
        rhs = LaurentPoly({MASTER_DEGREE: 1, 0: 1}, ring, "t")
        return self.Y * self.Y - self.X * self.X * self.X - rhs

    def verify(self) -> bool:
        return self.defect().is_zero()


def _lift_exponent(k: int, i: int, a: int, den: int) -> int:
    num = k * (den * i - a)
    if num % den:
        raise BaseChangeError(f"exponent {k}({i} - {a}/{den}) is not an integer")
    return num // den


def lift_to_master(q: Section) -> MasterPoint:
    """X = sum A_i t^{k(i - a/3)}, Y = sum B_j t^{k(j - a/2)} with k = 360/b."""
    s = q.surface
    k = scale_for(s)
    x = {_lift_exponent(k, i, s.a, 3): c for i, c in q.x.coeffs.items()}
    y = {_lift_exponent(k, j, s.a, 2): c for j, c in q.y.coeffs.items()}
    X = LaurentPoly._raw(x, q.tower, "t")
    Y = LaurentPoly._raw(y, q.tower, "t")
    return MasterPoint(X, Y, (s.label, q.label, k, s.a))


def scale_block(m: int, g: GramMatrix) -> GramMatrix:
    return g.scaled(m)


def factor_rational(r: Rational, bound: int = 10**6) -> dict[int, int]:
    """Prime factorization of a smooth rational (negative exponents for the denominator)."""
    r = qq(r)
    if r == 0:
        raise ValueError("cannot factor zero")
    out: dict[int, int] = {}
    for part, sign in ((abs(int(r.numerator)), 1), (int(r.denominator), -1)):
        p = 2
        while part > 1 and p <= bound:
            while part % p == 0:
                out[p] = out.get(p, 0) + sign
                part //= p
            p += 1 if p == 2 else 2
        if part > 1:
            out[part] = out.get(part, 0) + sign
    return {p: e for p, e in sorted(out.items()) if e}


def format_factorization(f: dict[int, int]) -> str:
    return " * ".join(f"{p}^{e}" for p, e in f.items()) or "1"


@dataclass
class Block:
    surface: tuple[int, int]
    scale: int
    matrix: GramMatrix

    @property
    def rank(self) -> int:
        return self.matrix.size

    @property
    def det(self) -> Rational:
        return self.matrix.det


@dataclass
class BlockGram:
    blocks: list[Block]

    @property
    def rank(self) -> int:
        return sum(b.rank for b in self.blocks)

    @property
    def det(self) -> Rational:
        d = qq(1)
        for b in self.blocks:
            d *= b.det
        return d

    def factorization(self) -> dict[int, int]:
        return factor_rational(self.det)

    def entries(self) -> list[list[Rational]]:
        n = self.rank
        m = [[qq(0)] * n for _ in range(n)]
        off = 0
        for b in self.blocks:
            for i, row in enumerate(b.matrix.entries):
                for j, c in enumerate(row):
                    m[off + i][off + j] = c
            off += b.rank
        return m

    def full_det(self) -> Rational:
        """Determinant of the assembled 68 x 68 matrix (not the block product)."""
        return det(self.entries())


def fixture_blocks() -> dict[tuple[int, int], GramMatrix]:
    return {ab: fixture(name) for ab, name in BLOCK_FIXTURE.items()}


def assemble_m68(blocks: dict[tuple[int, int], GramMatrix]) -> BlockGram:
    """Scale each sub-surface Gram matrix by m = 360/b and stack them in decomposition order."""
    missing = [ab for ab in DECOMPOSITION if ab not in blocks]
    out = []
    for ab in DECOMPOSITION:
        if ab in blocks:
            s = SurfaceModel(*ab)
            g = blocks[ab]
            if g.size != lattice_type(s).rank:
                raise AssemblyError(f"block {s.label} has size {g.size}, expected rank {lattice_type(s).rank}")
            out.append(Block(ab, scale_for(s), scale_block(scale_for(s), g)))
    bg = BlockGram(out)
    if missing or bg.rank != 68:
        names = ", ".join(SurfaceModel(*ab).label for ab in missing)
        raise AssemblyError(f"assembled rank {bg.rank} != 68; missing blocks: {names or 'none'}")
    return bg


def expected_det() -> Rational:
    return qq(2) ** 152 * qq(3) ** 118 * qq(5) ** 40


# -- data ingestion --------------------------------------------------------------


def ingest_sections(path) -> list[Section]:
    """Load a section file (schema 1); every section must verify or nothing is returned."""
    return load_sections(path)


def ingest_directory(path) -> dict[tuple[int, int], list[Section]]:
    """Every *.json file in a directory, grouped by surface (files in sorted order)."""
    found: dict[tuple[int, int], list[Section]] = {}
    for f in sorted(Path(path).glob("*.json")):
        for q in ingest_sections(f):
            found.setdefault((q.surface.a, q.surface.b), []).append(q)
    return found


# -- reports -------------------------------------------------------------------------


@dataclass
class PointStatus:
    index: int
    surface: str
    label: str
    k: int
    verified: bool


@dataclass
class MasterReport:
    points: list[PointStatus]
    blocks: list[dict] = field(default_factory=list)
    rank: int = 0
    det: Rational | None = None
    factorization: dict[int, int] = field(default_factory=dict)
    complete: bool = False
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def det_matches(self) -> bool:
        return self.complete and self.factorization == EXPECTED_M68

    def to_json(self) -> dict:
        return {
            "points": [
                {"index": p.index, "surface": p.surface, "label": p.label, "k": p.k, "verified": p.verified}
                for p in self.points
            ],
            "verified_points": sum(p.verified for p in self.points),
            "blocks": self.blocks,
            "rank": self.rank,
            "det": None if self.det is None else str(self.det),
            "factorization": {str(p): e for p, e in self.factorization.items()},
            "expected_factorization": {str(p): e for p, e in EXPECTED_M68.items()},
            "complete": self.complete,
            "det_matches": self.det_matches,
            "failures": list(self.failures),
        }

    def to_text(self) -> str:
        lines = [f"points: {sum(p.verified for p in self.points)}/{len(self.points)} verified"]
        for b in self.blocks:
            lines.append(f"  block {b['surface']}: m = {b['scale']}, rank {b['rank']}, det {b['det']} ({b['source']})")
        lines.append(f"rank: {self.rank}" + ("" if self.complete else " (partial assembly)"))
        if self.det is not None:
            lines.append(f"det: {self.det}")
            lines.append(f"    = {format_factorization(self.factorization)}")
        if self.complete:
            lines.append(f"expected 2^152 * 3^118 * 5^40: {'match' if self.det_matches else 'MISMATCH'}")
        lines.extend(f"FAIL: {f}" for f in self.failures)
        return "\n".join(lines)


def verify_master_suite(
    points: list[MasterPoint],
    blocks: dict[tuple[int, int], GramMatrix] | None = None,
    sources: dict[tuple[int, int], str] | None = None,
) -> MasterReport:
    """Verify every point; assemble whatever blocks are present (the full M68 when all eleven are)."""
    statuses = []
    failures = []
    for i, p in enumerate(points, 1):
        ok = p.verify()
        statuses.append(PointStatus(i, p.origin[0], p.origin[1], p.origin[2], ok))
        if not ok:
            failures.append(f"point {i} ({p.origin[0]} {p.origin[1]}) does not satisfy Y^2 = X^3 + t^360 + 1")
    report = MasterReport(statuses, failures=failures)
    blocks = blocks or {}
    sources = sources or {}
    present = []
    for ab in DECOMPOSITION:
        if ab not in blocks:
            continue
        s = SurfaceModel(*ab)
        m = scale_for(s)
        g = scale_block(m, blocks[ab])
        present.append(Block(ab, m, g))
        report.blocks.append(
            {"surface": s.label, "scale": m, "rank": g.size, "det": str(g.det), "source": sources.get(ab, "given")}
        )
    bg = BlockGram(present)
    report.rank = bg.rank
    if present:
        report.det = bg.det
        report.factorization = bg.factorization()
    report.complete = report.rank == 68 and len(present) == len(DECOMPOSITION)
    if report.complete and report.factorization != EXPECTED_M68:
        report.failures.append(f"det M68 = {format_factorization(report.factorization)}, expected 2^152 * 3^118 * 5^40")
    return report


def data_gram(sections: list[Section], ab: tuple[int, int]) -> GramMatrix:
    """Gram matrix of ingested sections, which must equal the printed block fixture."""
    from .heights import gram

    g = gram(sections)
    name = BLOCK_FIXTURE.get(ab)
    if name and g.entries != FIXTURES[name]:
        raise SectionDataError(f"ingested sections of {SurfaceModel(*ab).label} do not reproduce {name}")
    return g
