"""Shared builders and independent brute-force oracles for the test suite.

The oracles here deliberately re-derive values from first principles
(explicit loops, math.pow) so they stay independent of the library code
paths they check.
"""

from __future__ import annotations

import math
import random

from unifix import (
    CompactSet,
    ContractionParams,
    IndexCoefficients,
    MultiMap,
    PseudometricFamily,
)


def family(*tables) -> PseudometricFamily:
    return PseudometricFamily.from_tables(list(tables))


def mmap(*image_lists) -> MultiMap:
    return MultiMap.from_lists(image_lists)


def cset(*members) -> CompactSet:
    return CompactSet.of(*members)


def params(a: float, b: float, c: float, m: int = 1, r: int = 1) -> ContractionParams:
    return ContractionParams.uniform(a, b, c, index_count=m, exponent=r)


def params_per_index(triples, r: int = 1) -> ContractionParams:
    return ContractionParams(r, tuple(IndexCoefficients(a, b, c) for a, b, c in triples))


# the two-point instance used across the suite: d(p,q)=1, Fp={p}, Fq={p}
def two_point_instance():
    fam = family([[0.0, 1.0], [1.0, 0.0]])
    return fam, mmap([0], [0])


# the swap instance: d(p,q)=1, Fp={q}, Fq={p}
def swap_instance():
    fam = family([[0.0, 1.0], [1.0, 0.0]])
    return fam, mmap([1], [0])


def brute_set_distance(table, x: int, members) -> float:
    return min(table[x][a] for a in members)


def brute_hausdorff(table, a_members, b_members) -> float:
    forward = max(brute_set_distance(table, p, b_members) for p in a_members)
    backward = max(brute_set_distance(table, q, a_members) for q in b_members)
    return max(forward, backward)


def brute_condition_sides(fam: PseudometricFamily, mapping: MultiMap,
                          pr: ContractionParams, x: int, y: int,
                          index: int) -> tuple[float, float]:
    """Straight transcription of the inequality using math.pow."""
    table = fam.tables[index]
    co = pr.coeffs[index]
    r = pr.exponent
    fx = mapping.images[x].ordered()
    fy = mapping.images[y].ordered()
    d_x_fx = brute_set_distance(table, x, fx)
    d_y_fy = brute_set_distance(table, y, fy)
    h = brute_hausdorff(table, fx, fy)
    lhs = min(math.pow(h, r),
              d_x_fx * math.pow(d_y_fy, r - 1),
              math.pow(d_y_fy, r)) \
        + co.a * min(brute_set_distance(table, x, fy),
                     brute_set_distance(table, y, fx))
    rhs = (co.b * d_x_fx + co.c * table[x][y]) * math.pow(d_y_fy, r - 1)
    return lhs, rhs


def all_subsets(n: int):
    """Every nonempty subset of range(n), as CompactSets, in mask order."""
    return [CompactSet(frozenset(p for p in range(n) if mask >> p & 1))
            for mask in range(1, 1 << n)]


def seeded_rng(seed: int) -> random.Random:
    return random.Random(seed)
