"""Brute-force ground truth and seeded instance generation.

Fixed points are enumerated by direct membership scan, uniqueness is
certified only after the single-valued condition has been verified
exhaustively, and random instances are produced by rejection sampling
against the exhaustive condition check.  Families come from per-index
shortest paths over random weighted graphs, which satisfies the
pseudometric axioms by construction and keeps every family separating.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

from .contraction import (
    ConditionReport,
    ContractionParams,
    IndexCoefficients,
    MultiMap,
    check_condition,
    check_single_valued_condition,
    lift_single_valued,
    uniqueness_applicable,
)
from .space import DEFAULT_TOL, CompactSet, PseudometricFamily

CONSTANT = "constant"
LIFTED_SINGLE_VALUED = "lifted_single_valued"
RANDOM_MULTIVALUED = "random_multivalued"
MAP_KINDS = (CONSTANT, LIFTED_SINGLE_VALUED, RANDOM_MULTIVALUED)

#: Rejection budget per generated instance.
DEFAULT_MAX_ATTEMPTS = 10_000


class GenerationError(RuntimeError):
    """Raised when no certified instance appears within the attempt budget."""


@dataclass(frozen=True)
class InstanceProfile:
    """Shape, kind, seed and coefficient ranges for generated instances.

    Ranges are inclusive; the b and c ranges must keep b + c strictly
    inside (0, 1) for every possible draw.
    """

    point_count: int
    index_count: int
    map_kind: str = RANDOM_MULTIVALUED
    seed: int = 0
    exponent_choices: tuple[int, ...] = (1,)
    a_range: tuple[float, float] = (0.0, 0.0)
    b_range: tuple[float, float] = (0.05, 0.45)
    c_range: tuple[float, float] = (0.05, 0.45)

    def __post_init__(self) -> None:
        if self.point_count < 1:
            raise ValueError("point_count must be >= 1")
        if self.index_count < 1:
            raise ValueError("index_count must be >= 1")
        if self.map_kind not in MAP_KINDS:
            raise ValueError(f"map_kind must be one of {MAP_KINDS}, got {self.map_kind!r}")
        for name, (lo, hi) in (("a_range", self.a_range),
                               ("b_range", self.b_range),
                               ("c_range", self.c_range)):
            if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
                raise ValueError(f"{name} must be a finite (lo, hi) with lo <= hi")
        if self.b_range[0] + self.c_range[0] <= 0.0:
            raise ValueError("b and c ranges must keep b + c > 0")
        if self.b_range[1] + self.c_range[1] >= 1.0:
            raise ValueError("b and c ranges must keep b + c < 1")
        if not self.exponent_choices:
            raise ValueError("at least one exponent choice is required")
        for r in self.exponent_choices:
            if not isinstance(r, int) or isinstance(r, bool) or r < 1:
                raise ValueError(f"exponents must be integers >= 1, got {r!r}")


@dataclass(frozen=True)
class GeneratedInstance:
    family: PseudometricFamily
    mapping: MultiMap
    params: ContractionParams
    attempts: int


def enumerate_fixed_points(mapping: MultiMap) -> frozenset[int]:
    """Exactly the points belonging to their own image."""
    return frozenset(x for x in range(mapping.point_count)
                     if x in mapping.images[x])


@dataclass(frozen=True)
class UniquenessVerdict:
    """Outcome of a uniqueness certification run.

    status is "unique" when the hypotheses were verified and exactly one
    fixed point exists, "counterexample" when the hypotheses were verified
    but the count differs from one, and "not_applicable" when any
    hypothesis could not be verified (never a silent pass).
    """

    status: str  # "unique" | "counterexample" | "not_applicable"
    fixed_points: frozenset[int]
    reason: str
    condition: ConditionReport | None = None


def certify_uniqueness(family: PseudometricFamily, targets: Sequence[int],
                       params: ContractionParams,
                       tol: float = DEFAULT_TOL) -> UniquenessVerdict:
    """Certify that a point map has exactly one fixed point.

    Verifies the single-valued contraction condition exhaustively, then the
    strict coefficient gate a > c > 0 on at least one index, and only then
    compares against the brute-force fixed point enumeration.
    """
    report = check_single_valued_condition(family, targets, params, tol)
    if not report.satisfied:
        return UniquenessVerdict(
            "not_applicable", frozenset(),
            f"contraction condition fails on {len(report.violations)} tuple(s)",
            report)
    if not any(uniqueness_applicable(params)):
        return UniquenessVerdict(
            "not_applicable", frozenset(),
            "no index has a > c > 0", report)
    fixed = enumerate_fixed_points(lift_single_valued(targets))
    if len(fixed) == 1:
        return UniquenessVerdict("unique", fixed, "hypotheses verified; exactly one fixed point", report)
    return UniquenessVerdict(
        "counterexample", fixed,
        f"hypotheses verified but {len(fixed)} fixed points found", report)


def _shortest_path_table(rng: random.Random, n: int) -> tuple[tuple[float, ...], ...]:
    inf = math.inf
    dist = [[0.0 if i == j else inf for j in range(n)] for i in range(n)]

    def add_edge(u: int, v: int) -> None:
        # weights are rounded before the shortest-path pass so triangle
        # slack never comes down to rounding noise
        w = round(rng.uniform(0.05, 2.0), 3)
        if w < dist[u][v]:
            dist[u][v] = w
            dist[v][u] = w

    order = list(range(n))
    rng.shuffle(order)
    for pos in range(1, n):
        add_edge(order[rng.randrange(pos)], order[pos])
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < 0.3:
                add_edge(u, v)
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik == inf:
                continue
            di = dist[i]
            for j in range(n):
                alt = dik + dk[j]
                if alt < di[j]:
                    di[j] = alt
    return tuple(tuple(row) for row in dist)


def random_family(rng: random.Random, point_count: int,
                  index_count: int) -> PseudometricFamily:
    """A valid separating family: per-index shortest paths of random graphs."""
    if point_count < 1 or index_count < 1:
        raise ValueError("point_count and index_count must be >= 1")
    return PseudometricFamily(
        point_count,
        tuple(_shortest_path_table(rng, point_count) for _ in range(index_count)))


def random_map(rng: random.Random, family: PseudometricFamily,
               kind: str) -> MultiMap:
    """A map of the requested kind over the family's point set."""
    n = family.point_count
    if kind == CONSTANT:
        z = rng.randrange(n)
        return MultiMap(tuple(CompactSet.of(z) for _ in range(n)))
    if kind == LIFTED_SINGLE_VALUED:
        # biased toward a sink so a usable share of draws contracts
        z = rng.randrange(n)
        agg = [max(family.tables[i][x][z] for i in range(family.index_count))
               for x in range(n)]
        targets = []
        for x in range(n):
            if x == z or rng.random() < 0.6:
                targets.append(z)
            else:
                closer = [u for u in range(n) if agg[u] < agg[x]]
                targets.append(rng.choice(closer) if closer else z)
        return lift_single_valued(targets)
    if kind == RANDOM_MULTIVALUED:
        images = []
        for _ in range(n):
            members = [p for p in range(n) if rng.random() < 0.35]
            if not members:
                members = [rng.randrange(n)]
            images.append(CompactSet(frozenset(members)))
        return MultiMap(tuple(images))
    raise ValueError(f"unknown map kind {kind!r}")


def random_params(rng: random.Random, profile: InstanceProfile) -> ContractionParams:
    """Coefficients drawn uniformly from the profile's ranges."""
    r = profile.exponent_choices[rng.randrange(len(profile.exponent_choices))]
    coeffs = tuple(
        IndexCoefficients(rng.uniform(*profile.a_range),
                          rng.uniform(*profile.b_range),
                          rng.uniform(*profile.c_range))
        for _ in range(profile.index_count))
    return ContractionParams(r, coeffs)


def generate_instance(profile: InstanceProfile,
                      max_attempts: int = DEFAULT_MAX_ATTEMPTS,
                      tol: float = DEFAULT_TOL) -> GeneratedInstance:
    """Rejection-sample (family, map, params) until the condition certifies.

    Deterministic for a fixed profile: the same profile always yields the
    same instance.  Raises GenerationError when the budget runs out; a
    failed generation is an explicit outcome, never a non-certified
    instance labeled certified.
    """
    rng = random.Random(profile.seed)
    for attempt in range(1, max_attempts + 1):
        family = random_family(rng, profile.point_count, profile.index_count)
        mapping = random_map(rng, family, profile.map_kind)
        params = random_params(rng, profile)
        if check_condition(family, mapping, params, tol).satisfied:
            return GeneratedInstance(family, mapping, params, attempt)
    raise GenerationError(
        f"no certified {profile.map_kind} instance with N={profile.point_count}, "
        f"M={profile.index_count} after {max_attempts} attempts (seed {profile.seed})")
