"""Finite point spaces carrying an indexed family of pseudometrics.

A space is a point set {0, ..., N-1} together with M distance tables, one
per index.  Tables are plain nested tuples so that hot loops stay in pure
Python; callers that need arrays convert on demand.  Construction checks
only shape; the pseudometric axioms themselves are checked by
``validate_family``, which reports every violation instead of raising, so
imperfect inputs can be inspected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

#: Absolute tolerance used for all distance comparisons.  Distances are
#: doubles parsed from text, so axiom checks must absorb last-bit noise.
DEFAULT_TOL = 1e-9

PointId = int
Table = tuple[tuple[float, ...], ...]


def _as_table(rows: Sequence[Sequence[float]]) -> Table:
    return tuple(tuple(float(v) for v in row) for row in rows)


@dataclass(frozen=True)
class CompactSet:
    """Nonempty set of point ids, the finite stand-in for a compact subset."""

    members: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", frozenset(self.members))
        if not self.members:
            raise ValueError("compact set must be nonempty")
        for m in self.members:
            if not isinstance(m, int) or isinstance(m, bool) or m < 0:
                raise ValueError(f"invalid point id in compact set: {m!r}")

    @classmethod
    def of(cls, *members: int) -> "CompactSet":
        return cls(frozenset(members))

    def ordered(self) -> tuple[int, ...]:
        """Members in ascending id order, for deterministic iteration."""
        return tuple(sorted(self.members))

    def __contains__(self, point: int) -> bool:
        return point in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(self.ordered())

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class PseudometricFamily:
    """A finite point set with one symmetric distance table per index.

    ``separating`` records whether every pair of distinct points is given
    positive distance by at least one table.  Non-separating families are
    legal inputs for all distance computations; solver entry points gate
    on the flag.
    """

    point_count: int
    tables: Table | tuple[Table, ...]
    separating: bool = field(init=False)

    def __post_init__(self) -> None:
        if self.point_count < 1:
            raise ValueError("point_count must be >= 1")
        tables = tuple(_as_table(t) for t in self.tables)
        if not tables:
            raise ValueError("at least one distance table is required")
        n = self.point_count
        for i, table in enumerate(tables):
            if len(table) != n or any(len(row) != n for row in table):
                raise ValueError(
                    f"table {i} is not {n}x{n} (points declared: {n})"
                )
        object.__setattr__(self, "tables", tables)
        object.__setattr__(self, "separating", self._compute_separating())

    def _compute_separating(self) -> bool:
        n = self.point_count
        for x in range(n):
            for y in range(x + 1, n):
                if not any(t[x][y] > DEFAULT_TOL for t in self.tables):
                    return False
        return True

    @classmethod
    def from_tables(cls, tables: Sequence[Sequence[Sequence[float]]]) -> "PseudometricFamily":
        if not tables:
            raise ValueError("at least one distance table is required")
        return cls(point_count=len(tables[0]), tables=tuple(tables))

    @property
    def index_count(self) -> int:
        return len(self.tables)

    def distance(self, index: int, x: int, y: int) -> float:
        return self.tables[index][x][y]

    def points(self) -> range:
        return range(self.point_count)


@dataclass(frozen=True)
class AxiomViolation:
    """One failed pseudometric axiom check, located by table and points."""

    kind: str  # "nonnegativity" | "diagonal" | "symmetry" | "triangle"
    index: int
    points: tuple[int, ...]
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[AxiomViolation, ...]
    separating: bool

    @property
    def valid(self) -> bool:
        return not self.violations


def validate_family(family: PseudometricFamily, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Check every pseudometric axiom on every table, exhaustively.

    Lists all violations of nonnegativity, zero diagonal, symmetry and the
    triangle inequality (over all ordered triples).  Separation is reported
    as a flag, not a violation: it is a hypothesis of the solver, not an
    axiom of the distances.
    """
    n = family.point_count
    violations: list[AxiomViolation] = []
    for i, table in enumerate(family.tables):
        for x in range(n):
            if abs(table[x][x]) > tol:
                violations.append(AxiomViolation(
                    "diagonal", i, (x,), f"d({x},{x})={table[x][x]!r} != 0"))
            for y in range(n):
                v = table[x][y]
                if v < -tol:
                    violations.append(AxiomViolation(
                        "nonnegativity", i, (x, y), f"d({x},{y})={v!r} < 0"))
                if y > x and abs(v - table[y][x]) > tol:
                    violations.append(AxiomViolation(
                        "symmetry", i, (x, y),
                        f"d({x},{y})={v!r} != d({y},{x})={table[y][x]!r}"))
        for x in range(n):
            for y in range(n):
                dxy = table[x][y]
                for z in range(n):
                    if table[x][z] > dxy + table[y][z] + tol:
                        violations.append(AxiomViolation(
                            "triangle", i, (x, y, z),
                            f"d({x},{z})={table[x][z]!r} > "
                            f"d({x},{y})+d({y},{z})={dxy + table[y][z]!r}"))
    separating = True
    for x in range(n):
        for y in range(x + 1, n):
            if not any(t[x][y] > tol for t in family.tables):
                separating = False
    return ValidationReport(tuple(violations), separating)


def point_to_set_distance(family: PseudometricFamily, index: int, x: int,
                          target: CompactSet) -> float:
    """Distance from a point to a set: the minimum over the set's members."""
    row = family.tables[index][x]
    return min(row[a] for a in target.members)


def augmented_diameter(family: PseudometricFamily, subset: CompactSet) -> float:
    """Largest distance between any two members, across every index."""
    pts = subset.ordered()
    best = 0.0
    for table in family.tables:
        for x in pts:
            row = table[x]
            for y in pts:
                if y != x and row[y] > best:
                    best = row[y]
    return best
