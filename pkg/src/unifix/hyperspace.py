"""Hausdorff pseudometrics between compact subsets.

Two textbook formulas are implemented as fully independent code paths (no
shared inner helper): the max of the two directed suprema, and the
envelope form taking the supremum of |d(x,A) - d(x,B)| over the whole
space.  Their agreement is asserted by the test suite as a genuine
cross-check rather than by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .space import CompactSet, PseudometricFamily


def hausdorff(family: PseudometricFamily, index: int, a: CompactSet,
              b: CompactSet) -> float:
    """max of sup_{x in A} d(x,B) and sup_{y in B} d(A,y), by exhaustive scan."""
    table = family.tables[index]
    sup_ab = max(min(table[x][y] for y in b.members) for x in a.members)
    sup_ba = max(min(table[y][x] for x in a.members) for y in b.members)
    return max(sup_ab, sup_ba)


def hausdorff_via_envelope(family: PseudometricFamily, index: int, a: CompactSet,
                           b: CompactSet) -> float:
    """sup over every point x of |d(x,A) - d(x,B)|."""
    table = family.tables[index]
    best = 0.0
    for x in range(family.point_count):
        row = table[x]
        da = min(row[p] for p in a.members)
        db = min(row[q] for q in b.members)
        gap = da - db if da >= db else db - da
        if gap > best:
            best = gap
    return best


@dataclass(frozen=True)
class HausdorffValue:
    """A Hausdorff distance paired with the index it was computed under."""

    value: float
    index: int

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError("Hausdorff distance cannot be negative")


def hausdorff_profile(family: PseudometricFamily, a: CompactSet,
                      b: CompactSet) -> tuple[HausdorffValue, ...]:
    """Hausdorff distance between two sets under every index."""
    return tuple(HausdorffValue(hausdorff(family, i, a, b), i)
                 for i in range(family.index_count))
