"""The surfaces E_{a,b}: y^2 = x^3 + v^a (v^b + 1): fibers, ranks, lattices, partners."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .algebra.rational import Rational, qq

MASTER_DEGREE = 360

# members outside the coprime range that the decomposition still needs
LISTED_EXCEPTIONS = frozenset({(2, 2), (0, 5), (0, 6)})

# (order of vanishing) -> (Kodaira type, root lattice, number of components)
KODAIRA = {
    1: ("II", None, 1),
    2: ("IV", "A2", 3),
    3: ("I0*", "D4", 5),
    4: ("IV*", "E6", 7),
}


class SurfaceError(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceModel:
    a: int
    b: int

    def __post_init__(self) -> None:
        a, b = self.a, self.b
        if not (isinstance(a, int) and isinstance(b, int)):
            raise SurfaceError("a and b must be integers")
        if a < 0 or b < 1:
            raise SurfaceError(f"need a >= 0 and b >= 1, got ({a},{b})")
        if not 1 <= a + b <= 12:
            raise SurfaceError(f"a + b must lie in 1..12, got {a + b}")
        if gcd(a, b) != 1 and (a, b) not in LISTED_EXCEPTIONS:
            raise SurfaceError(f"gcd(a, b) = {gcd(a, b)} != 1 for ({a},{b})")

    @property
    def n(self) -> int:
        return -(-(self.a + self.b) // 6)

    @property
    def kind(self) -> str:
        return "rational" if self.a + self.b <= 6 else "K3"

    @property
    def chi(self) -> int:
        return self.n

    @property
    def a_prime(self) -> int:
        return 6 * self.n - (self.a + self.b)

    @property
    def master_exponent(self) -> int | None:
        return MASTER_DEGREE // self.b if MASTER_DEGREE % self.b == 0 else None

    @property
    def label(self) -> str:
        return f"({self.a},{self.b})"

    def rhs_exponents(self) -> tuple[int, int]:
        """Exponents of the two monomials of v^a (v^b + 1)."""
        return (self.a, self.a + self.b)


@dataclass(frozen=True)
class FiberInfo:
    place: str  # "zero", "root", or "infinity"
    index: int | None  # for roots of v^b = -1: v = exp(pi i (2 index + 1) / b)
    order: int
    kodaira_type: str
    root_lattice: str | None
    components: int

    @property
    def rank_defect(self) -> int:
        return self.components - 1


@dataclass(frozen=True)
class LatticeType:
    rank: int
    name: str
    discriminant: Rational


@dataclass(frozen=True)
class PartnerMap:
    source: SurfaceModel
    target: SurfaceModel
    x_weight: int
    y_weight: int

    @property
    def forward(self) -> str:
        return f"(x, y, v) -> (v^{self.x_weight} x, v^{self.y_weight} y, 1/v)"

    @property
    def inverse(self) -> str:
        return f"(X, Y, u) -> (u^-{self.x_weight} X, u^-{self.y_weight} Y, 1/u)"


def _fiber(place: str, index: int | None, order: int) -> FiberInfo:
    if order not in KODAIRA:
        raise SurfaceError(f"vanishing order {order} at {place} is outside the supported types II, IV, I0*, IV*")
    typ, lat, m = KODAIRA[order]
    return FiberInfo(place, index, order, typ, lat, m)


def classify_fibers(s: SurfaceModel) -> list[FiberInfo]:
    fibers = []
    if s.a:
        fibers.append(_fiber("zero", None, s.a))
    fibers.extend(_fiber("root", i, 1) for i in range(s.b))
    if s.a_prime:
        fibers.append(_fiber("infinity", None, s.a_prime))
    return fibers


def fiber_at(s: SurfaceModel, place: str) -> FiberInfo | None:
    for f in classify_fibers(s):
        if f.place == place:
            return f
    return None


def trivial_lattice(s: SurfaceModel) -> list[str]:
    return [f.root_lattice for f in classify_fibers(s) if f.root_lattice]


def delsarte_rank(d: int) -> int:
    return 2 * d - 2 - 4 * (d // 6)


def shioda_tate_rank(s: SurfaceModel) -> int:
    defect = sum(f.rank_defect for f in classify_fibers(s))
    if s.kind == "rational":
        return 8 - defect
    if (s.a, s.b) == (1, 10):
        # Picard number 18 = rank + 2 + defect, with the rank from the Delsarte formula
        return delsarte_rank(s.a + s.b) - defect
    raise SurfaceError(f"rank of the K3 member {s.label} is not covered (only (1,10) is supported)")


_LATTICES = {
    (2, 1): LatticeType(2, "A2*(1/2)", qq(1, 12)),
    (3, 1): LatticeType(2, "A2*(1/2)", qq(1, 12)),
    (1, 2): LatticeType(4, "D4*", qq(1, 4)),
    (3, 2): LatticeType(4, "D4*", qq(1, 4)),
    (2, 2): LatticeType(4, "A2*+A2*", qq(1, 9)),
    (1, 3): LatticeType(6, "E6*", qq(1, 3)),
    (2, 3): LatticeType(6, "E6*", qq(1, 3)),
    (1, 4): LatticeType(8, "E8", qq(1)),
    (1, 5): LatticeType(8, "E8", qq(1)),
    (0, 5): LatticeType(8, "E8", qq(1)),
    (0, 6): LatticeType(8, "E8", qq(1)),
    # the K3 entry records the determinant of the printed generator Gram matrix
    (1, 10): LatticeType(16, "K3-rank16", qq(625)),
}

TABLE_ONE = [(2, 1), (3, 1), (1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (1, 4), (1, 5), (0, 5), (0, 6)]

# the eleven pieces whose ranks add up to the rank of the master surface
DECOMPOSITION = [(1, 10), (0, 5), (1, 5), (1, 4), (2, 3), (1, 3), (2, 2), (3, 2), (1, 2), (3, 1), (2, 1)]


def lattice_type(s: SurfaceModel) -> LatticeType:
    try:
        return _LATTICES[(s.a, s.b)]
    except KeyError:
        raise SurfaceError(f"no lattice type recorded for {s.label}") from None


def birational_partner(s: SurfaceModel) -> PartnerMap:
    target = SurfaceModel(s.a_prime, s.b)
    return PartnerMap(s, target, 2 * s.n, 3 * s.n)


def decomposition_rank() -> int:
    return sum(shioda_tate_rank(SurfaceModel(a, b)) for a, b in DECOMPOSITION)


def parse_surface(text: str) -> SurfaceModel | str:
    """Parse a selector 'a,b' or the literal 'master'."""
    text = text.strip()
    if text == "master":
        return "master"
    parts = text.split(",")
    if len(parts) != 2:
        raise SurfaceError(f"surface selector must be 'a,b' or 'master', got {text!r}")
    try:
        a, b = (int(p) for p in parts)
    except ValueError:
        raise SurfaceError(f"surface selector must use decimal integers, got {text!r}") from None
    return SurfaceModel(a, b)
