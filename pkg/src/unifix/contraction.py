"""Contraction conditions for set-valued maps, and their global verification.

The central inequality compares, for every ordered pair of points (x, y)
and every index i,

    min{ H_i(Fx,Fy)^r,  d_i(x,Fx) * d_i(y,Fy)^(r-1),  d_i(y,Fy)^r }
        + a_i * min{ d_i(x,Fy), d_i(y,Fx) }
    <=  [ b_i * d_i(x,Fx) + c_i * d_i(x,y) ] * d_i(y,Fy)^(r-1)

with an integer exponent r >= 1 and per-index coefficients (a_i, b_i, c_i)
whose sum b_i + c_i lies strictly in (0, 1).  Powers follow the convention
base**0 == 1.0 *including* 0**0, so the exponent-1 form coincides exactly
with the exponent-free linear form below.  `check_condition` verifies the
inequality over every (x, y, i) tuple; a map passing that exhaustive check
is called *certified* and the orbit solver's convergence guarantees apply.

Three evaluators exist on purpose:

* ``condition_sides``          -- general exponent form (scalar, per tuple)
* ``condition_sides_linear``   -- independent exponent-free path, used to
                                  cross-check the r = 1 specialization
* ``single_valued_condition_terms`` -- the same inequality for a point map
                                  T, with intermediate terms exposed so the
                                  a_i = -1 difference form can be inspected
                                  term by term
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .hyperspace import hausdorff
from .space import DEFAULT_TOL, CompactSet, PseudometricFamily, point_to_set_distance


@dataclass(frozen=True)
class IndexCoefficients:
    """Coefficients (a, b, c) for one index; b + c must lie strictly in (0, 1)."""

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        for name, v in (("a", self.a), ("b", self.b), ("c", self.c)):
            if not math.isfinite(v):
                raise ValueError(f"coefficient {name} must be finite, got {v!r}")
        if not 0.0 < self.b + self.c < 1.0:
            raise ValueError(
                f"b + c must lie strictly in (0, 1), got {self.b + self.c!r}")

    @property
    def k(self) -> float:
        """Step contraction factor b + c."""
        return self.b + self.c


@dataclass(frozen=True)
class ContractionParams:
    """Exponent r and one coefficient triple per index."""

    exponent: int
    coeffs: tuple[IndexCoefficients, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.exponent, int) or isinstance(self.exponent, bool):
            raise ValueError("exponent must be an integer")
        if self.exponent < 1:
            raise ValueError("exponent must be >= 1")
        coeffs = tuple(self.coeffs)
        if not coeffs:
            raise ValueError("at least one coefficient triple is required")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def uniform(cls, a: float, b: float, c: float, index_count: int = 1,
                exponent: int = 1) -> "ContractionParams":
        return cls(exponent, (IndexCoefficients(a, b, c),) * index_count)


@dataclass(frozen=True)
class MultiMap:
    """A total set-valued map: one nonempty image per point."""

    images: tuple[CompactSet, ...]

    def __post_init__(self) -> None:
        images = tuple(self.images)
        if not images:
            raise ValueError("a map needs at least one point")
        n = len(images)
        for x, img in enumerate(images):
            for m in img.members:
                if m >= n:
                    raise ValueError(
                        f"image of point {x} contains {m}, outside 0..{n - 1}")
        object.__setattr__(self, "images", images)

    @classmethod
    def from_lists(cls, image_lists: Sequence[Sequence[int]]) -> "MultiMap":
        return cls(tuple(CompactSet(frozenset(lst)) for lst in image_lists))

    @property
    def point_count(self) -> int:
        return len(self.images)

    def image(self, x: int) -> CompactSet:
        return self.images[x]

    def as_single_valued(self) -> tuple[int, ...] | None:
        """The underlying point map if every image is a singleton, else None."""
        targets = []
        for img in self.images:
            if len(img.members) != 1:
                return None
            targets.append(next(iter(img.members)))
        return tuple(targets)


def lift_single_valued(targets: Sequence[int]) -> MultiMap:
    """Wrap a point map T as the set-valued map x -> {Tx}."""
    targets = tuple(targets)
    n = len(targets)
    for x, t in enumerate(targets):
        if not 0 <= t < n:
            raise ValueError(f"target of point {x} is {t}, outside 0..{n - 1}")
    return MultiMap(tuple(CompactSet.of(t) for t in targets))


def uniqueness_applicable(params: ContractionParams) -> tuple[bool, ...]:
    """Per index: whether the strict gate a > c > 0 for uniqueness holds."""
    return tuple(co.a > co.c > 0.0 for co in params.coeffs)


@dataclass(frozen=True)
class ConditionViolation:
    x: int
    y: int
    index: int
    lhs: float
    rhs: float


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of checking the condition over a set of (x, y, i) tuples.

    ``worst_margin`` is the minimum of rhs - lhs over all checked tuples;
    it is >= -tolerance exactly when the report is satisfied.  Only an
    ``exhaustive`` satisfied report certifies a map.
    """

    satisfied: bool
    worst_margin: float
    violations: tuple[ConditionViolation, ...]
    tuples_checked: int
    exhaustive: bool = True


def _powi(base: float, k: int) -> float:
    # repeated multiplication so 0**0 == 1 and results match the
    # vectorized checker bit for bit
    out = 1.0
    for _ in range(k):
        out *= base
    return out


def condition_sides(family: PseudometricFamily, mapping: MultiMap,
                    params: ContractionParams, x: int, y: int,
                    index: int) -> tuple[float, float]:
    """Both sides of the general-exponent inequality at one (x, y, index)."""
    r = params.exponent
    co = params.coeffs[index]
    fx = mapping.images[x]
    fy = mapping.images[y]
    d_x_fx = point_to_set_distance(family, index, x, fx)
    d_y_fy = point_to_set_distance(family, index, y, fy)
    d_x_fy = point_to_set_distance(family, index, x, fy)
    d_y_fx = point_to_set_distance(family, index, y, fx)
    h = hausdorff(family, index, fx, fy)
    pow_rm1 = _powi(d_y_fy, r - 1)
    lhs = min(min(_powi(h, r), d_x_fx * pow_rm1), _powi(d_y_fy, r)) \
        + co.a * min(d_x_fy, d_y_fx)
    rhs = (co.b * d_x_fx + co.c * family.tables[index][x][y]) * pow_rm1
    return lhs, rhs


def condition_sides_linear(family: PseudometricFamily, mapping: MultiMap,
                           params: ContractionParams, x: int, y: int,
                           index: int) -> tuple[float, float]:
    """Exponent-free form of the inequality; independent of the general path.

    min{H_i(Fx,Fy), d_i(x,Fx), d_i(y,Fy)} + a_i*min{d_i(x,Fy), d_i(y,Fx)}
    against b_i*d_i(x,Fx) + c_i*d_i(x,y).
    """
    co = params.coeffs[index]
    fx = mapping.images[x]
    fy = mapping.images[y]
    d_x_fx = point_to_set_distance(family, index, x, fx)
    d_y_fy = point_to_set_distance(family, index, y, fy)
    d_x_fy = point_to_set_distance(family, index, x, fy)
    d_y_fx = point_to_set_distance(family, index, y, fx)
    h = hausdorff(family, index, fx, fy)
    lhs = min(min(h, d_x_fx), d_y_fy) + co.a * min(d_x_fy, d_y_fx)
    rhs = co.b * d_x_fx + co.c * family.tables[index][x][y]
    return lhs, rhs


@dataclass(frozen=True)
class SingleValuedTerms:
    """Intermediate values of the point-map inequality at one tuple.

    lhs = min_triple + a * min_cross; with a = -1 this is exactly the
    difference-of-minima form, inspectable term by term.
    """

    min_triple: float
    min_cross: float
    lhs: float
    rhs: float


def single_valued_condition_terms(family: PseudometricFamily,
                                  targets: Sequence[int],
                                  params: ContractionParams, x: int, y: int,
                                  index: int) -> SingleValuedTerms:
    """Evaluate the point-map inequality at (x, y, index), exposing terms."""
    table = family.tables[index]
    co = params.coeffs[index]
    tx = targets[x]
    ty = targets[y]
    min_triple = min(min(table[tx][ty], table[x][tx]), table[y][ty])
    min_cross = min(table[x][ty], table[y][tx])
    lhs = min_triple + co.a * min_cross
    rhs = co.b * table[x][tx] + co.c * table[x][y]
    return SingleValuedTerms(min_triple, min_cross, lhs, rhs)


def _require_compatible(family: PseudometricFamily, mapping: MultiMap,
                        params: ContractionParams) -> None:
    if mapping.point_count != family.point_count:
        raise ValueError(
            f"map covers {mapping.point_count} points, space has {family.point_count}")
    if len(params.coeffs) != family.index_count:
        raise ValueError(
            f"{len(params.coeffs)} coefficient triples for {family.index_count} indexes")


def _powi_array(base: np.ndarray, k: int) -> np.ndarray:
    out = np.ones_like(base)
    for _ in range(k):
        out = out * base
    return out


def _condition_grids(family: PseudometricFamily, mapping: MultiMap,
                     params: ContractionParams, index: int,
                     member_lists: list[tuple[int, ...]],
                     mask: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """lhs and rhs over the full (x, y) grid for one index.

    Mirrors ``condition_sides`` operation for operation (including powers
    by repeated multiplication) so both paths produce identical floats.
    """
    r = params.exponent
    co = params.coeffs[index]
    dist = np.asarray(family.tables[index], dtype=np.float64)
    # point_to_image[v, w] = d_index(v, F(w))
    point_to_image = np.stack(
        [dist[:, mem].min(axis=1) for mem in member_lists], axis=1)
    # directed[x, y] = sup over a in F(x) of d(a, F(y))
    masked = np.where(mask.T[:, :, None], point_to_image[None, :, :], -np.inf)
    directed = masked.max(axis=1)
    h_grid = np.maximum(directed, directed.T)
    self_res = np.ascontiguousarray(np.diagonal(point_to_image))
    d_x_fx = self_res[:, None]
    d_y_fy = self_res[None, :]
    pow_rm1 = _powi_array(d_y_fy, r - 1)
    lhs = np.minimum(np.minimum(_powi_array(h_grid, r), d_x_fx * pow_rm1),
                     _powi_array(d_y_fy, r)) \
        + co.a * np.minimum(point_to_image, point_to_image.T)
    rhs = (co.b * d_x_fx + co.c * dist) * pow_rm1
    return lhs, rhs


def check_condition(family: PseudometricFamily, mapping: MultiMap,
                    params: ContractionParams,
                    tol: float = DEFAULT_TOL) -> ConditionReport:
    """Verify the inequality over every ordered pair (x, y) and every index.

    The condition is directional: (x, y) and (y, x) are distinct tuples and
    both are checked.  A tuple violates when lhs > rhs + tol; ties within
    the tolerance pass.  Violations are listed in (x, y, index) order.
    """
    _require_compatible(family, mapping, params)
    n = family.point_count
    member_lists = [img.ordered() for img in mapping.images]
    mask = np.zeros((n, n), dtype=bool)
    for w, mem in enumerate(member_lists):
        mask[list(mem), w] = True
    worst = math.inf
    violations: list[ConditionViolation] = []
    for i in range(family.index_count):
        lhs, rhs = _condition_grids(family, mapping, params, i, member_lists, mask)
        margin = rhs - lhs
        worst = min(worst, float(margin.min()))
        for x, y in np.argwhere(lhs > rhs + tol):
            violations.append(ConditionViolation(
                int(x), int(y), i, float(lhs[x, y]), float(rhs[x, y])))
    violations.sort(key=lambda v: (v.x, v.y, v.index))
    return ConditionReport(
        satisfied=not violations,
        worst_margin=worst,
        violations=tuple(violations),
        tuples_checked=n * n * family.index_count,
    )


def check_condition_sampled(family: PseudometricFamily, mapping: MultiMap,
                            params: ContractionParams, samples: int,
                            tol: float = DEFAULT_TOL,
                            seed: int = 0) -> ConditionReport:
    """Spot-check the inequality on randomly drawn tuples.

    Intended for spaces too large for the exhaustive scan; the resulting
    report is marked non-exhaustive and never certifies a map.
    """
    _require_compatible(family, mapping, params)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = random.Random(seed)
    n = family.point_count
    m = family.index_count
    worst = math.inf
    violations: list[ConditionViolation] = []
    for _ in range(samples):
        x = rng.randrange(n)
        y = rng.randrange(n)
        i = rng.randrange(m)
        lhs, rhs = condition_sides(family, mapping, params, x, y, i)
        worst = min(worst, rhs - lhs)
        if lhs > rhs + tol:
            violations.append(ConditionViolation(x, y, i, lhs, rhs))
    violations.sort(key=lambda v: (v.x, v.y, v.index))
    return ConditionReport(
        satisfied=not violations,
        worst_margin=worst,
        violations=tuple(violations),
        tuples_checked=samples,
        exhaustive=False,
    )


def check_single_valued_condition(family: PseudometricFamily,
                                  targets: Sequence[int],
                                  params: ContractionParams,
                                  tol: float = DEFAULT_TOL) -> ConditionReport:
    """Exhaustive check of the point-map inequality over (x, y, index)."""
    targets = tuple(targets)
    if len(targets) != family.point_count:
        raise ValueError(
            f"point map covers {len(targets)} points, space has {family.point_count}")
    if len(params.coeffs) != family.index_count:
        raise ValueError(
            f"{len(params.coeffs)} coefficient triples for {family.index_count} indexes")
    n = family.point_count
    worst = math.inf
    violations: list[ConditionViolation] = []
    for x in range(n):
        for y in range(n):
            for i in range(family.index_count):
                terms = single_valued_condition_terms(family, targets, params, x, y, i)
                worst = min(worst, terms.rhs - terms.lhs)
                if terms.lhs > terms.rhs + tol:
                    violations.append(ConditionViolation(x, y, i, terms.lhs, terms.rhs))
    return ConditionReport(
        satisfied=not violations,
        worst_margin=worst,
        violations=tuple(violations),
        tuples_checked=n * n * family.index_count,
    )
