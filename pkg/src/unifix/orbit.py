"""Orbit iteration toward a fixed point of a set-valued map.

From a start point, each step moves to a nearest point of the current
image under a chosen driver index (or under the pointwise max of all
indexes in "aggregate" mode).  On a finite space with a certified map the
step distances in the driver index contract geometrically, so a fixed
point (a point belonging to its own image) is reached within at most
point_count steps; only single-index driving carries that guarantee,
aggregate mode is best effort.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Final, Literal, Union

from .contraction import (
    ConditionReport,
    ContractionParams,
    MultiMap,
    check_condition,
)
from .space import DEFAULT_TOL, PseudometricFamily, point_to_set_distance

FIXED_POINT_FOUND: Final = "fixed_point_found"
CONVERGED_STATIONARY: Final = "converged_stationary"
MAX_STEPS_REACHED: Final = "max_steps_reached"

OrbitStatus = Literal[
    "fixed_point_found", "converged_stationary", "max_steps_reached"
]

AGGREGATE: Final = "aggregate"
Driver = Union[int, Literal["aggregate"]]


@dataclass(frozen=True)
class OrbitRecord:
    """A generated orbit: visited points plus per-index step distances.

    ``step_distances[i][n]`` is the distance, under index i, between the
    n-th and (n+1)-th visited points; every consecutive pair of points
    satisfies points[n+1] in F(points[n]).
    """

    points: tuple[int, ...]
    step_distances: tuple[tuple[float, ...], ...]
    driver: Driver
    status: OrbitStatus

    def __post_init__(self) -> None:
        if not self.points:
            raise ValueError("an orbit contains at least its start point")
        want = len(self.points) - 1
        for i, seq in enumerate(self.step_distances):
            if len(seq) != want:
                raise ValueError(
                    f"index {i}: {len(seq)} step distances for {want} steps")

    @property
    def steps(self) -> int:
        return len(self.points) - 1


def nearest_point(family: PseudometricFamily, index: int, x: int,
                  candidates) -> int:
    """Member of the candidate set closest to x under one index.

    Ties break toward the lowest point id so replays are deterministic.
    """
    row = family.tables[index][x]
    best = -1
    best_d = math.inf
    for a in candidates.ordered():
        if row[a] < best_d:
            best, best_d = a, row[a]
    return best


def nearest_point_aggregate(family: PseudometricFamily, x: int,
                            candidates) -> int:
    """Candidate minimizing the max distance over all indexes; lowest id wins ties."""
    best = -1
    best_d = math.inf
    for a in candidates.ordered():
        d = max(table[x][a] for table in family.tables)
        if d < best_d:
            best, best_d = a, d
    return best


def residuals(family: PseudometricFamily, mapping: MultiMap,
              x: int) -> tuple[float, ...]:
    """Per-index distance from x to its own image."""
    return tuple(point_to_set_distance(family, i, x, mapping.images[x])
                 for i in range(family.index_count))


def is_fixed_point(family: PseudometricFamily, mapping: MultiMap, x: int,
                   tol: float = DEFAULT_TOL) -> bool:
    """Whether x belongs to its own image.

    Membership is exact on a finite space; ``tol`` governs only the
    residual-based reporting done elsewhere (distances can be zero without
    membership when several indexes vanish on different members, so
    residual reports flag any disagreement instead of hiding it).
    """
    if not 0 <= x < family.point_count:
        raise ValueError(f"point id {x} outside 0..{family.point_count - 1}")
    del tol
    return x in mapping.images[x]


def generate_orbit(family: PseudometricFamily, mapping: MultiMap, start: int,
                   driver: Driver = 0, max_steps: int | None = None,
                   tol: float = DEFAULT_TOL) -> OrbitRecord:
    """Iterate nearest-point steps from a start point.

    Stops with ``fixed_point_found`` as soon as every per-index residual of
    the current point is within tol (membership in the image implies this),
    with ``max_steps_reached`` after ``max_steps`` transitions, and with
    ``converged_stationary`` if a self-step ever occurs without the residual
    criterion firing -- impossible for exact tables, kept as a defensive
    terminal state.
    """
    n = family.point_count
    if mapping.point_count != n:
        raise ValueError(
            f"map covers {mapping.point_count} points, space has {n}")
    if not 0 <= start < n:
        raise ValueError(f"start point {start} outside 0..{n - 1}")
    if isinstance(driver, int) and not isinstance(driver, bool):
        if not 0 <= driver < family.index_count:
            raise ValueError(
                f"driver index {driver} outside 0..{family.index_count - 1}")
    elif driver != AGGREGATE:
        raise ValueError(f"driver must be an index or {AGGREGATE!r}, got {driver!r}")
    if max_steps is None:
        max_steps = 10 * n
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")

    m = family.index_count
    points = [start]
    dists: list[list[float]] = [[] for _ in range(m)]
    x = start
    steps = 0
    status: OrbitStatus = MAX_STEPS_REACHED
    while True:
        image = mapping.images[x]
        if all(point_to_set_distance(family, i, x, image) <= tol
               for i in range(m)):
            status = FIXED_POINT_FOUND
            break
        if steps == max_steps:
            status = MAX_STEPS_REACHED
            break
        if driver == AGGREGATE:
            nxt = nearest_point_aggregate(family, x, image)
        else:
            nxt = nearest_point(family, driver, x, image)
        for i in range(m):
            dists[i].append(family.tables[i][x][nxt])
        points.append(nxt)
        steps += 1
        if nxt == x:
            status = CONVERGED_STATIONARY
            break
        x = nxt
    return OrbitRecord(tuple(points), tuple(tuple(seq) for seq in dists),
                       driver, status)


def step_contraction_check(orbit: OrbitRecord, params: ContractionParams,
                           tol: float = DEFAULT_TOL) -> tuple[tuple[bool, ...], ...]:
    """Per step n >= 1 and per index: d_i(x_n, x_n+1) <= k_i * d_i(x_n-1, x_n) + tol.

    Certified maps guarantee this only for the orbit's driver index; the
    other columns are informational.
    """
    if len(orbit.points) < 2:
        raise ValueError("need an orbit with at least one step")
    m = len(orbit.step_distances)
    if len(params.coeffs) != m:
        raise ValueError(
            f"{len(params.coeffs)} coefficient triples for {m} recorded indexes")
    rows = []
    for n in range(1, orbit.steps):
        rows.append(tuple(
            orbit.step_distances[i][n]
            <= params.coeffs[i].k * orbit.step_distances[i][n - 1] + tol
            for i in range(m)))
    return tuple(rows)


def tail_bound(n: int, k: float, first_step: float) -> float:
    """Geometric bound k^n * d / (1 - k) on any gap from the n-th point onward."""
    if not 0.0 < k < 1.0:
        raise ValueError(f"contraction factor must lie strictly in (0, 1), got {k!r}")
    if n < 0:
        raise ValueError("step number must be >= 0")
    if first_step < 0:
        raise ValueError("first step distance must be >= 0")
    return k ** n * first_step / (1.0 - k)


@dataclass(frozen=True)
class FixedPointResult:
    """Outcome of a solve run.

    ``point`` is the terminal point when the orbit ended on the fixed-point
    criterion, else None.  ``membership`` records exact membership of the
    terminal point in its own image; it can disagree with near-zero
    residuals only on degenerate families, and such runs are flagged by the
    caller rather than silently accepted.  ``anomaly`` marks the one
    outcome that contradicts the certified guarantee: condition satisfied
    yet no fixed point reached.
    """

    point: int | None
    residuals: tuple[float, ...]
    steps: int
    orbit: OrbitRecord
    certified: bool
    condition: ConditionReport
    membership: bool
    tol: float

    @property
    def status(self) -> OrbitStatus:
        return self.orbit.status

    @property
    def anomaly(self) -> bool:
        return self.certified and self.orbit.status != FIXED_POINT_FOUND


def solve(family: PseudometricFamily, mapping: MultiMap,
          params: ContractionParams, start: int, driver: Driver = 0,
          max_steps: int | None = None, tol: float = DEFAULT_TOL,
          allow_non_separating: bool = False) -> FixedPointResult:
    """Certify the contraction condition, then iterate an orbit to a fixed point.

    A failed condition check does not stop the iteration; it only marks the
    result as non-certified.  Requires a separating family unless
    explicitly overridden, since the convergence guarantee presumes that
    distinct points are metrically distinguishable.
    """
    if not family.separating and not allow_non_separating:
        raise ValueError(
            "family does not separate points; pass allow_non_separating=True to iterate anyway")
    report = check_condition(family, mapping, params, tol)
    orbit = generate_orbit(family, mapping, start, driver, max_steps, tol)
    terminal = orbit.points[-1]
    res = residuals(family, mapping, terminal)
    member = terminal in mapping.images[terminal]
    found = orbit.status == FIXED_POINT_FOUND
    return FixedPointResult(
        point=terminal if found else None,
        residuals=res,
        steps=orbit.steps,
        orbit=orbit,
        certified=report.satisfied and report.exhaustive,
        condition=report,
        membership=member,
        tol=tol,
    )
