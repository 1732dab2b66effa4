import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import all_subsets, cset, family, seeded_rng
from unifix import (
    CompactSet,
    PseudometricFamily,
    augmented_diameter,
    point_to_set_distance,
    random_family,
    validate_family,
)


class TestCompactSet:
    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            CompactSet(frozenset())

    def test_negative_id_rejected(self):
        with pytest.raises(ValueError):
            CompactSet.of(-1)

    def test_bool_rejected(self):
        with pytest.raises(ValueError):
            CompactSet.of(True)

    def test_basicprotocols(self):
        s = cset(3, 1, 2)
        assert s.ordered() == (1, 2, 3)
        assert list(s) == [1, 2, 3]
        assert len(s) == 3
        assert 2 in s and 5 not in s

    def test_accepts_any_iterable(self):
        assert CompactSet([2, 0]).members == frozenset({0, 2})


class TestFamilyConstruction:
    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            PseudometricFamily(3, ([[0.0, 1.0], [1.0, 0.0]],))

    def test_ragged_rows_rejected(self):
        with pytest.raises(ValueError):
            PseudometricFamily(2, ([[0.0, 1.0], [1.0]],))

    def test_no_tables_rejected(self):
        with pytest.raises(ValueError):
            PseudometricFamily(2, ())

    def test_zero_points_rejected(self):
        with pytest.raises(ValueError):
            PseudometricFamily(0, ([],))

    def test_counts_and_lookup(self):
        fam = family([[0, 1], [1, 0]], [[0, 3], [3, 0]])
        assert fam.point_count == 2
        assert fam.index_count == 2
        assert fam.distance(1, 0, 1) == 3.0

    def test_separating_flag(self):
        assert family([[0, 1], [1, 0]]).separating
        assert not family([[0, 0], [0, 0]]).separating
        # second index separates the pair the first one collapses
        assert family([[0, 0], [0, 0]], [[0, 2], [2, 0]]).separating


class TestValidateFamily:
    def test_one_point_valid_and_vacuously_separating(self):
        report = validate_family(family([[0.0]]))
        assert report.valid and report.separating

    def test_two_point_valid(self):
        report = validate_family(family([[0, 1], [1, 0]]))
        assert report.valid and report.separating

    def test_triangle_violation_located(self):
        # d(0,2)=5 exceeds d(0,1)+d(1,2)=3
        fam = family([[0, 2, 5], [2, 0, 1], [5, 1, 0]])
        report = validate_family(fam)
        assert not report.valid
        triangles = [v for v in report.violations if v.kind == "triangle"]
        assert (0, 1, 2) in [v.points for v in triangles]

    def test_diagonal_violation(self):
        report = validate_family(family([[1.0]]))
        assert [v.kind for v in report.violations] == ["diagonal"]

    def test_symmetry_violation(self):
        report = validate_family(family([[0, 1], [2, 0]]))
        assert "symmetry" in {v.kind for v in report.violations}

    def test_negative_distance_violation(self):
        report = validate_family(family([[0, -1], [-1, 0]]))
        assert "nonnegativity" in {v.kind for v in report.violations}

    def test_non_separating_is_valid_but_flagged(self):
        report = validate_family(family([[0, 0], [0, 0]]))
        assert report.valid
        assert not report.separating

    def test_tolerance_absorbs_tiny_noise(self):
        fam = family([[0, 1, 2 + 5e-10], [1, 0, 1], [2 + 5e-10, 1, 0]])
        assert validate_family(fam).valid


class TestPointToSetDistance:
    def test_zero_when_member(self):
        fam = family([[0, 1], [1, 0]])
        assert point_to_set_distance(fam, 0, 0, cset(0, 1)) == 0.0

    def test_singleton(self):
        fam = family([[0, 2], [2, 0]])
        assert point_to_set_distance(fam, 0, 0, cset(1)) == 2.0

    def test_minimum_over_members(self):
        fam = family([[0, 2, 5], [2, 0, 4], [5, 4, 0]])
        assert point_to_set_distance(fam, 0, 0, cset(1, 2)) == 2.0

    def test_matches_single_distance_on_singletons(self):
        fam = random_family(seeded_rng(11), 5, 2)
        for i in range(2):
            for x in range(5):
                for y in range(5):
                    assert point_to_set_distance(fam, i, x, cset(y)) \
                        == fam.tables[i][x][y]

    def test_triangle_property_to_sets(self):
        # d(x, A) <= d(x, y) + d(y, A), exhaustively on a small space
        fam = random_family(seeded_rng(7), 6, 2)
        subsets = all_subsets(6)
        for i in range(2):
            table = fam.tables[i]
            for a in subsets:
                dist = [point_to_set_distance(fam, i, x, a) for x in range(6)]
                for x in range(6):
                    for y in range(6):
                        assert dist[x] <= table[x][y] + dist[y] + 1e-9


class TestAugmentedDiameter:
    def test_singleton_zero(self):
        fam = family([[0, 1], [1, 0]])
        assert augmented_diameter(fam, cset(0)) == 0.0

    def test_max_across_indexes(self):
        fam = family([[0, 1], [1, 0]], [[0, 3], [3, 0]])
        assert augmented_diameter(fam, cset(0, 1)) == 3.0

    def test_single_index_pair(self):
        fam = family([[0, 2], [2, 0]])
        assert augmented_diameter(fam, cset(0, 1)) == 2.0

    def test_monotone_under_inclusion(self):
        fam = random_family(seeded_rng(3), 5, 3)
        subsets = all_subsets(5)
        diam = {s.members: augmented_diameter(fam, s) for s in subsets}
        for s in subsets:
            for t in subsets:
                if t.members <= s.members:
                    assert diam[s.members] >= diam[t.members]


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(1, 9), m=st.integers(1, 4))
def test_shortest_path_families_always_validate(seed, n, m):
    fam = random_family(seeded_rng(seed), n, m)
    report = validate_family(fam)
    assert report.valid
    assert report.separating
    assert fam.separating


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_diameter_bounds_point_to_set(seed):
    rng = seeded_rng(seed)
    n = rng.randint(2, 7)
    fam = random_family(rng, n, rng.randint(1, 3))
    members = frozenset(rng.sample(range(n), rng.randint(1, n)))
    sub = CompactSet(members)
    diam = augmented_diameter(fam, sub)
    for i in range(fam.index_count):
        for x in members:
            assert point_to_set_distance(fam, i, x, sub) <= diam + 1e-12
