import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import all_subsets, cset, family, seeded_rng
from unifix import (
    CompactSet,
    HausdorffValue,
    hausdorff,
    hausdorff_profile,
    hausdorff_via_envelope,
    random_family,
)

THREE_POINT = family([[0, 2, 5], [2, 0, 4], [5, 4, 0]])


class TestHausdorffDirect:
    def test_identical_sets(self):
        assert hausdorff(THREE_POINT, 0, cset(0, 1), cset(0, 1)) == 0.0

    def test_singletons_reduce_to_distance(self):
        assert hausdorff(THREE_POINT, 0, cset(0), cset(1)) == 2.0

    def test_asymmetric_sets(self):
        # sup_a d(a,B) = min(2,5) = 2; sup_b d(A,b) = max(2,5) = 5
        assert hausdorff(THREE_POINT, 0, cset(0), cset(1, 2)) == 5.0

    def test_symmetric_in_arguments(self):
        a, b = cset(0), cset(1, 2)
        assert hausdorff(THREE_POINT, 0, a, b) == hausdorff(THREE_POINT, 0, b, a)


class TestHausdorffEnvelope:
    def test_identical_sets(self):
        assert hausdorff_via_envelope(THREE_POINT, 0, cset(0, 2), cset(0, 2)) == 0.0

    def test_singletons_two_point_space(self):
        fam = family([[0, 1], [1, 0]])
        assert hausdorff_via_envelope(fam, 0, cset(0), cset(1)) == 1.0

    def test_asymmetric_sets(self):
        assert hausdorff_via_envelope(THREE_POINT, 0, cset(0), cset(1, 2)) == 5.0


class TestDualFormulaIdentity:
    def test_exhaustive_small_spaces(self):
        for seed in (1, 2, 3):
            rng = seeded_rng(seed)
            n = 2 + seed
            fam = random_family(rng, n, 2)
            subsets = all_subsets(n)
            for i in range(fam.index_count):
                for a in subsets:
                    for b in subsets:
                        direct = hausdorff(fam, i, a, b)
                        envelope = hausdorff_via_envelope(fam, i, a, b)
                        assert abs(direct - envelope) <= 1e-9

    def test_holds_on_degenerate_family(self):
        # all distances zero: both formulas must agree at zero
        fam = family([[0, 0], [0, 0]])
        for a in all_subsets(2):
            for b in all_subsets(2):
                assert hausdorff(fam, 0, a, b) == 0.0
                assert hausdorff_via_envelope(fam, 0, a, b) == 0.0


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_dual_formula_identity_randomized(seed):
    rng = seeded_rng(seed)
    n = rng.randint(1, 8)
    m = rng.randint(1, 4)
    fam = random_family(rng, n, m)
    for _ in range(20):
        a = CompactSet(frozenset(rng.sample(range(n), rng.randint(1, n))))
        b = CompactSet(frozenset(rng.sample(range(n), rng.randint(1, n))))
        i = rng.randrange(m)
        assert abs(hausdorff(fam, i, a, b)
                   - hausdorff_via_envelope(fam, i, a, b)) <= 1e-9


class TestPseudometricAxioms:
    def test_axioms_over_all_subset_triples(self):
        for seed in (10, 11):
            rng = seeded_rng(seed)
            n = rng.randint(2, 4)
            fam = random_family(rng, n, 2)
            subsets = all_subsets(n)
            for i in range(fam.index_count):
                pairs = {
                    (a.members, b.members): hausdorff(fam, i, a, b)
                    for a in subsets for b in subsets
                }
                for a in subsets:
                    assert pairs[(a.members, a.members)] == 0.0
                    for b in subsets:
                        assert pairs[(a.members, b.members)] \
                            == pairs[(b.members, a.members)]
                        for c in subsets:
                            assert pairs[(a.members, c.members)] <= \
                                pairs[(a.members, b.members)] \
                                + pairs[(b.members, c.members)] + 1e-9

    def test_singleton_coupling(self):
        fam = random_family(seeded_rng(4), 6, 3)
        for i in range(3):
            for x in range(6):
                for y in range(6):
                    assert hausdorff(fam, i, cset(x), cset(y)) == fam.tables[i][x][y]


class TestHausdorffValue:
    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            HausdorffValue(-0.5, 0)

    def test_profile_covers_every_index(self):
        fam = family([[0, 1], [1, 0]], [[0, 3], [3, 0]])
        profile = hausdorff_profile(fam, cset(0), cset(1))
        assert [(hv.index, hv.value) for hv in profile] == [(0, 1.0), (1, 3.0)]
