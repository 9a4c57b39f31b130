"""
Tests for complete sum tables, good pairs, the table cache and real sums.
"""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dworklab.errors import (
    CacheFormatError,
    DensityAssertionError,
    HypothesisViolation,
    MemoryCapExceeded,
    VariableCountMismatch,
)
from dworklab.expsum import (
    RationalAngle,
    SumTable,
    SumTableCache,
    complete_sum,
    decompose_sum,
    good_pairs,
    incomplete_sum_check,
    k2_threshold,
    naive_table,
    read_table,
    real_sum,
    scan_all_pairs,
    specialized_tail,
    weil_deligne_bound,
    write_table,
)
from dworklab.parsers import parse_field_poly, parse_form


@pytest.fixture
def square_mod_5():
    return parse_field_poly('x1^2', 5)


class TestCompleteSums:
    def test_gauss_sum_magnitude(self, square_mod_5):
        assert abs(complete_sum(square_mod_5, 1, [0])) == pytest.approx(math.sqrt(5))

    def test_trivial_frequencies(self, square_mod_5):
        assert complete_sum(square_mod_5, 0, [0]) == pytest.approx(5)
        assert abs(complete_sum(square_mod_5, 0, [2])) < 1e-12

    @given(st.integers(min_value=1, max_value=10), st.integers(min_value=1, max_value=10))
    @settings(max_examples=25, deadline=None)
    def test_orthogonality(self, b1, b2):
        poly = parse_field_poly('x1^3 + x1*x2^2 + x2^3', 11)
        assert abs(complete_sum(poly, 0, [b1, b2])) < 1e-9

    def test_point_validation(self, square_mod_5):
        with pytest.raises(VariableCountMismatch):
            complete_sum(square_mod_5, 1, [0, 0])


class TestTables:
    def test_scan_matches_naive(self):
        poly = parse_field_poly('x1^3 + 2*x1*x2^2 + x2^3', 7)
        fast, slow = scan_all_pairs(poly), naive_table(poly)
        assert fast.values.shape == (7, 7, 7)
        assert np.allclose(fast.values, slow.values, atol=1e-9)

    def test_invariants(self):
        table = scan_all_pairs(parse_field_poly('x1^3 + 2*x1*x2^2 + x2^3', 7))
        assert table.check_parseval()
        assert table.check_conjugate_symmetry()
        assert table.satisfies_weil_deligne()
        assert table.value(0, (0, 0)) == pytest.approx(49)

    def test_square_table_sits_on_the_bound(self, square_mod_5):
        table = scan_all_pairs(square_mod_5)
        mags = table.magnitudes()
        assert np.allclose(mags[1:], math.sqrt(5))
        assert table.max_nonzero_frequency() == pytest.approx(weil_deligne_bound(2, 1, 5))

    def test_memory_cap(self, square_mod_5):
        with pytest.raises(MemoryCapExceeded):
            scan_all_pairs(square_mod_5, {'expsum': {'memory_cap_bytes': 100}})

    def test_thresholds(self):
        assert weil_deligne_bound(3, 2, 7) == pytest.approx(28.0)
        assert k2_threshold(3, 1) == 6
        assert k2_threshold(2, 1) == 3


class TestGoodPairs:
    def test_square_pairs(self, square_mod_5):
        pairs = good_pairs(scan_all_pairs(square_mod_5))
        assert pairs.count == 20
        assert all(a != 0 for a, _ in pairs.pairs)
        assert pairs.density_checked
        assert pairs.mask().sum() == 20

    @pytest.mark.parametrize('q', [11, 13])
    def test_cubic_density(self, q):
        pairs = good_pairs(scan_all_pairs(parse_field_poly('x1^3 + 2*x1^2', q)))
        assert pairs.density_checked
        assert pairs.meets_density()
        assert pairs.to_dict()['alpha2'] == '1/32'

    def test_density_failure_raises(self):
        poly = parse_field_poly('x1^3', 11)
        empty = SumTable(q=11, m=1, k=3, poly=poly, values=np.zeros((11, 11), dtype=complex))
        with pytest.raises(DensityAssertionError):
            good_pairs(empty)

    def test_small_prime_only_warns(self):
        poly = parse_field_poly('x1^3', 5)
        empty = SumTable(q=5, m=1, k=3, poly=poly, values=np.zeros((5, 5), dtype=complex))
        result = good_pairs(empty)
        assert result.count == 0
        assert not result.density_checked


class TestCache:
    def test_roundtrip(self, tmp_path, square_mod_5):
        table = scan_all_pairs(square_mod_5)
        path = tmp_path / 'table.dwxs'
        write_table(table, path)
        loaded = read_table(path, square_mod_5)
        assert loaded.k == table.k
        assert np.array_equal(loaded.values, table.values)

    def test_digest_mismatch(self, tmp_path, square_mod_5):
        path = tmp_path / 'table.dwxs'
        write_table(scan_all_pairs(square_mod_5), path)
        with pytest.raises(CacheFormatError):
            read_table(path, parse_field_poly('2*x1^2', 5))

    def test_truncated_file(self, tmp_path, square_mod_5):
        path = tmp_path / 'table.dwxs'
        write_table(scan_all_pairs(square_mod_5), path)
        path.write_bytes(path.read_bytes()[:-8])
        with pytest.raises(CacheFormatError):
            read_table(path, square_mod_5)

    def test_get_or_compute(self, tmp_path, square_mod_5):
        cache = SumTableCache(tmp_path / 'cache')
        assert cache.get(square_mod_5) is None
        table = cache.get_or_compute(square_mod_5)
        assert cache.path_for(square_mod_5).exists()
        assert np.array_equal(cache.get(square_mod_5).values, table.values)

    def test_corrupt_entry_is_ignored(self, tmp_path, square_mod_5):
        cache = SumTableCache(tmp_path)
        cache.path_for(square_mod_5).write_bytes(b'garbage')
        assert cache.get(square_mod_5) is None


class TestIncompleteSums:
    def test_full_cutoffs_give_complete_sum(self):
        poly = parse_field_poly('x1^3 + x2^3', 7)
        report = incomplete_sum_check(poly, [], [7, 7])
        assert report.truncated == []
        assert report.value == pytest.approx(complete_sum(poly, 1, [0, 0]))
        assert report.within_bound

    def test_truncated_coordinate(self):
        poly = parse_field_poly('x1^3 + x2^3', 7)
        report = incomplete_sum_check(poly, [1], [7, 3])
        assert report.truncated == [2]
        assert report.within_bound
        assert report.to_dict()['within_bound'] is True


class TestRealSums:
    def test_specialized_tail(self, family_332):
        tail = specialized_tail(family_332, (1, 1), 4)
        assert tail == parse_form('192 + 4*x1^2 + x1^3', 1)

    def test_zero_phases_count_points(self, family_332):
        zero = RationalAngle(0)
        assert real_sum(family_332, (1, 1), 4, [10.5], [zero, zero]) == pytest.approx(7)

    def test_full_periods_repeat_complete_sum(self, family_332):
        y = [RationalAngle(1, 11), RationalAngle(3, 11)]
        total = real_sum(family_332, (1, 1), 4, [4 + 22], y)
        tail = specialized_tail(family_332, (1, 1), 4).reduce_mod(11)
        assert total == pytest.approx(2 * complete_sum(tail, 1, [3]), abs=1e-9)

    def test_perturbed_phases_match_direct_evaluation(self, family_332):
        s = 1e-7
        y = [RationalAngle(1, 11), RationalAngle(3, 11, 1e-3)]
        total = real_sum(family_332, (1, 1), 4, [30], y, s)
        direct = sum(
            cmath.exp(1j * (m * (2 * math.pi * 3 / 11 + 1e-3)
                            + (192 + 4 * m * m + m ** 3) * (2 * math.pi / 11 + s)))
            for m in range(4, 30)
        )
        assert total == pytest.approx(direct, abs=1e-8)

    def test_exact_decomposition_has_no_error(self, family_332):
        y = [RationalAngle(1, 11), RationalAngle(3, 11)]
        result = decompose_sum(family_332, (1, 1), 4, [26], y, 0.0, 11, 1, [3], 0.0)
        assert result.full_periods == [2]
        assert result.error < 1e-9
        assert result.within_budget

    def test_remainder_stays_in_budget(self, family_332):
        y = [RationalAngle(1, 11), RationalAngle(3, 11)]
        result = decompose_sum(family_332, (1, 1), 4, [29], y, 0.0, 11, 1, [3], 0.0)
        assert result.error <= 3 + 1e-9
        assert result.within_budget

    def test_hypothesis_violations(self, family_332):
        y = [RationalAngle(2, 11), RationalAngle(3, 11)]
        with pytest.raises(HypothesisViolation):
            decompose_sum(family_332, (1, 1), 4, [26], y, 0.0, 11, 1, [3], 0.0)
        y = [RationalAngle(1, 11), RationalAngle(3, 11, 0.5)]
        with pytest.raises(HypothesisViolation):
            decompose_sum(family_332, (1, 1), 4, [26], y, 0.0, 11, 1, [3], 0.01)
