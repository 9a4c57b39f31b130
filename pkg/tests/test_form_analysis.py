"""
Tests for intertwining rank, Dwork-regularity, bad primes, witnesses and the
example families.
"""

import itertools
from fractions import Fraction

import pytest

from dworklab.algebra import primes_up_to
from dworklab.analysis import (
    bad_primes,
    codimensions,
    corollary_threshold,
    count_line_solutions,
    deligne_after_specialization,
    delta_threshold,
    dwork_regular_via_euler,
    find_derivative_witness,
    first_derivative_at,
    generate_example,
    intertwining_rank,
    is_dispersive,
    is_dwork_regular,
    is_excluded_prime,
    is_nonsingular,
    nonregular_example,
    realizes_rank_at_first,
    relabel_for_rank,
    subsets_in_order,
)
from dworklab.errors import (
    CharacteristicDividesDegree,
    NotDworkRegular,
    NotHomogeneous,
    ParameterRangeError,
    PreconditionError,
)
from dworklab.parsers import parse_form


def _grid_case(*args):
    return pytest.param(*args, marks=pytest.mark.slow) if args[0] == 4 else args


FAMILY_GRID = [_grid_case(n, k, r) for n in (2, 3, 4) for k in (3, 4, 5) for r in range(2, n + 1)]
NONREGULAR_GRID = [_grid_case(n, k) for n in (2, 3, 4) for k in (3, 4, 5)]


class TestIntertwiningRank:
    def test_rank_two_example(self):
        report = intertwining_rank(parse_form('x1^3 + x1*x2^2 + x2*x3*x4'))
        assert report.rank == 2
        assert report.witness_variable == 1
        assert report.intertwining_sets[1] == [1, 2]
        assert report.ranks == {1: 2, 2: 4, 3: 3, 4: 3}

    def test_diagonal_has_rank_one(self):
        report = intertwining_rank(parse_form('x1^3 + x2^3 + x3^3 + x4^3'))
        assert report.rank == 1
        assert report.witness_variable == 1

    def test_family_keeps_its_order(self):
        form = generate_example(3, 3, 2)
        report = intertwining_rank(form)
        assert report.rank == 2
        assert report.order == [1, 2, 3]
        assert realizes_rank_at_first(form, 2)

    def test_relabel_moves_witness_first(self):
        # X_1 links all three; X_2 and X_3 have rank 2
        form = parse_form('x1^3 + x2^3 + x3^3 + x1*x2^2 + x1*x3^2', 3)
        report = intertwining_rank(form)
        assert report.ranks == {1: 3, 2: 2, 3: 2}
        assert report.witness_variable == 2
        assert report.order == [2, 1, 3]
        relabeled, _ = relabel_for_rank(form, report)
        assert realizes_rank_at_first(relabeled, 2)
        assert intertwining_rank(relabeled).rank == report.rank

    def test_to_dict_uses_string_keys(self):
        data = intertwining_rank(generate_example(3, 3, 2)).to_dict()
        assert data['rank'] == 2
        assert data['intertwining_sets']['2'] == [1, 2, 3]

    def test_rejects_inhomogeneous(self):
        with pytest.raises(NotHomogeneous):
            intertwining_rank(parse_form('x1^2 + x2'))

    def test_rejects_linear(self):
        with pytest.raises(ParameterRangeError):
            intertwining_rank(parse_form('x1 + x2'))


class TestRegularity:
    def test_subset_order(self):
        assert list(subsets_in_order(3)) == [
            (1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3),
        ]

    def test_nonsingular_examples(self):
        assert is_nonsingular(parse_form('x1^2 + x2^2'))
        assert not is_nonsingular(parse_form('x1^2 + 2*x1*x2 + x2^2'))
        assert is_nonsingular(parse_form('x1^3 + x2^3 + x2*x3^2'))

    def test_nonsingular_but_not_dwork_regular(self):
        verdict = is_dwork_regular(parse_form('x1^3 + x2^3 + x2*x3^2'))
        assert verdict.nonsingular
        assert not verdict.dwork_regular
        assert verdict.failing_subset == [3]
        assert verdict.kind == 'zero_polynomial'

    def test_product_of_variables(self):
        verdict = is_dwork_regular(parse_form('x1*x2'))
        assert not verdict.dwork_regular
        assert verdict.failing_subset == [1]
        assert verdict.kind == 'zero_polynomial'

    def test_singular_restriction_is_reported(self):
        # every variable appears as a pure power, but H_{1,2} = (x1 + x2)^2
        verdict = is_dwork_regular(parse_form('x1^2 + 2*x1*x2 + x2^2 + x3^2', 3))
        assert verdict.failing_subset == [1, 2]
        assert verdict.kind == 'singular'

    @pytest.mark.parametrize('n,k,r', FAMILY_GRID)
    def test_generated_family_is_regular_with_rank(self, n, k, r):
        form = generate_example(n, k, r)
        verdict = is_dwork_regular(form)
        assert verdict.dwork_regular
        assert verdict.subsets_checked == 2 ** n - 1
        assert intertwining_rank(form).rank == r

    def test_even_family_shape(self):
        assert generate_example(3, 4, 2) == parse_form('x1^4 + x2^4 + x3^4 + x1^2*x2^2 + x2^2*x3^2')
        assert generate_example(3, 3, 2) == parse_form('x1^3 + x2^3 + x3^3 + x1*x2^2 + x2*x3^2')

    @pytest.mark.parametrize('n,k', NONREGULAR_GRID)
    def test_nonregular_family_fails_at_last_variable(self, n, k):
        form = nonregular_example(n, k)
        verdict = is_dwork_regular(form)
        assert not verdict.dwork_regular
        assert verdict.failing_subset == [n]
        assert is_nonsingular(form)

    def test_threaded_check_reports_first_failure(self):
        form = parse_form('x1^2 + 2*x1*x2 + x2^2 + x3^2', 3)
        serial = is_dwork_regular(form)
        threaded = is_dwork_regular(form, threads=4)
        assert threaded.failing_subset == serial.failing_subset
        assert threaded.kind == serial.kind

    def test_euler_criterion_agrees(self):
        for form in (generate_example(3, 3, 2), nonregular_example(3, 3), parse_form('x1*x2'),
                     parse_form('x1^2 + x2^2')):
            assert dwork_regular_via_euler(form) == is_dwork_regular(form).dwork_regular

    def test_over_finite_field(self):
        form = generate_example(3, 3, 2)
        assert is_dwork_regular(form.reduce_mod(7)).dwork_regular
        with pytest.raises(CharacteristicDividesDegree):
            is_dwork_regular(form.reduce_mod(3))

    def test_rejects_linear_forms(self):
        with pytest.raises(ParameterRangeError):
            is_dwork_regular(parse_form('x1 + x2'))


class TestPrimes:
    def test_bad_primes_of_binary_quadratic(self):
        report = bad_primes(parse_form('x1^2 + 5*x1*x2 + x2^2'), 10)
        assert report.excluded == [2]
        assert report.bad == [3, 7]
        assert report.good == [5]
        assert report.largest_bad_prime == 7
        assert not report.stabilized

    def test_sum_of_squares_has_no_bad_odd_prime(self):
        report = bad_primes(parse_form('x1^2 + x2^2'), 20)
        assert report.excluded == [2]
        assert report.bad == []
        assert report.good_count == 7
        assert report.largest_bad_prime is None
        assert report.stabilized

    def test_report_frame(self):
        frame = bad_primes(parse_form('x1^2 + 5*x1*x2 + x2^2'), 10).to_frame()
        assert list(frame['prime']) == [2, 3, 5, 7]
        assert list(frame['class']) == ['excluded', 'bad', 'good', 'bad']

    def test_threaded_scan_matches(self):
        form = parse_form('x1^2 + 5*x1*x2 + x2^2')
        assert bad_primes(form, 30, threads=3).to_dict() == bad_primes(form, 30).to_dict()

    def test_denominators_exclude_primes(self):
        form = parse_form('x1^3 + 1/5*x2^3')
        assert is_excluded_prime(form, 5)
        assert is_excluded_prime(form, 3)
        assert not is_excluded_prime(form, 7)

    def test_scan_refuses_non_regular_form(self):
        with pytest.raises(NotDworkRegular) as exc:
            bad_primes(parse_form('x1*x2'), 10)
        assert exc.value.failing_subset == [1]

    def test_scan_rejects_small_bound(self):
        with pytest.raises(ParameterRangeError):
            bad_primes(parse_form('x1^2 + x2^2'), 1)

    @pytest.mark.parametrize('text, expected', [
        ('x1^2 + 5*x1*x2 + x2^2', [3, 7]),
        # t^3 + t + 1 has discriminant -31
        ('x1^3 + x1*x2^2 + x2^3', [31]),
        ('x1^3 + x2^3 + x3^3', []),
    ])
    def test_scan_stable_between_bounds(self, text, expected):
        form = parse_form(text)
        short, long = bad_primes(form, 50), bad_primes(form, 200)
        assert short.bad == long.bad == expected
        assert long.stabilized
        assert short.stabilized == all(2 * q <= 50 for q in expected)

    @pytest.mark.slow
    def test_family_scan_extends_shorter_scan(self):
        form = generate_example(3, 3, 2)
        short, long = bad_primes(form, 50), bad_primes(form, 200)
        assert short.bad == [q for q in long.bad if q <= 50]
        assert short.excluded == long.excluded == [3]
        assert set(long.good) | set(long.bad) | set(long.excluded) == set(primes_up_to(200))


class TestDeligne:
    def test_zero_specialization(self):
        h = generate_example(3, 3, 2).reduce_mod(7)
        cert = deligne_after_specialization(h, [0, 0])
        assert cert.is_deligne
        assert cert.degree == 3
        assert cert.variables == [3]

    def test_nonzero_specialization(self):
        h = generate_example(3, 3, 2).reduce_mod(7)
        cert = deligne_after_specialization(h, [3, 5])
        assert cert.is_deligne
        assert cert.degree == 3

    def test_specialized_polynomial(self):
        cert = deligne_after_specialization(generate_example(3, 3, 2), [1, 1])
        assert cert.specialized == parse_form('3 + x3^2 + x3^3', 3)

    def test_refuses_non_regular_input(self):
        with pytest.raises(NotDworkRegular):
            deligne_after_specialization(nonregular_example(3, 3).reduce_mod(7), [0, 0])

    def test_characteristic_dividing_degree(self):
        h = generate_example(3, 3, 2).reduce_mod(3)
        with pytest.raises(CharacteristicDividesDegree):
            deligne_after_specialization(h, [1, 1])

    def test_rank_must_leave_variables(self):
        with pytest.raises(ParameterRangeError):
            deligne_after_specialization(generate_example(3, 3, 2), [1, 1, 1])

    @pytest.mark.slow
    @pytest.mark.parametrize('n,k,r', [(3, 3, 2), (3, 4, 2), (4, 3, 2)])
    def test_every_specialization_over_good_primes(self, n, k, r):
        form = generate_example(n, k, r)
        good = bad_primes(form, 31).good
        assert good
        for q in good:
            h = form.reduce_mod(q)
            assert is_dwork_regular(h).dwork_regular
            for values in itertools.product(range(q), repeat=r):
                cert = deligne_after_specialization(h, list(values), check_regular=False)
                assert cert.is_deligne, (q, values)
                assert cert.degree == k
                assert cert.leading_form == h.restrict(range(r + 1, n + 1))


class TestWitness:
    def test_family_witness(self, family_332):
        witness = find_derivative_witness(family_332, 2)
        assert witness.M == (1, 1)
        assert witness.value == 4
        assert witness.m_star == 2

    def test_diagonal_witness(self):
        witness = find_derivative_witness(parse_form('x1^3 + x2^3'), 1)
        assert witness.M == (1,)
        assert witness.value == 3

    def test_search_skips_vanishing_tuples(self):
        form = parse_form('x1^3 - 3*x1*x2^2')
        assert first_derivative_at(form, (1, 1)) == 0
        witness = find_derivative_witness(form, 2, check_regular=False)
        assert witness.M == (1, 2)
        assert witness.value == -9

    def test_witness_requires_relabeled_form(self):
        with pytest.raises(PreconditionError):
            find_derivative_witness(generate_example(3, 3, 2), 3)

    def test_witness_requires_regular_form(self):
        with pytest.raises(NotDworkRegular):
            find_derivative_witness(parse_form('x1^3 - 3*x1*x2^2'), 2)

    def test_rank_out_of_range(self, family_332):
        with pytest.raises(ParameterRangeError):
            find_derivative_witness(family_332, 0)


class TestDispersive:
    def test_family_is_dispersive(self):
        cert = is_dispersive(generate_example(3, 3, 2))
        assert cert.dispersive
        assert cert.root_bound == 3
        assert cert.gradient_nonvanishing

    def test_lower_order_terms_are_ignored(self):
        cert = is_dispersive(parse_form('x1^2 + x2^2 + x1 + 7'))
        assert cert.dispersive
        assert cert.root_bound == 2

    def test_product_is_refused(self):
        with pytest.raises(NotDworkRegular):
            is_dispersive(parse_form('x1*x2'))

    def test_line_solutions_bounded_by_degree(self):
        form = generate_example(3, 3, 2)
        for base in ([0, 0, 0], [1, -1, 2], [Fraction(1, 2), 3, -2]):
            for i in (1, 2, 3):
                assert count_line_solutions(form, base, i, 1) <= 3
        assert count_line_solutions(parse_form('x1^2 + x2^2'), [0, 0], 1, 1) == 2


class TestThresholds:
    def test_codimensions(self):
        assert codimensions(3, 3) == (3, 5)

    def test_delta_examples(self):
        assert delta_threshold(3, 3, 2) == Fraction(1, 20)
        assert delta_threshold(3, 2, 1) == Fraction(1, 8)

    @pytest.mark.parametrize('n', [2, 3, 4, 5])
    @pytest.mark.parametrize('k', [2, 3, 4])
    def test_rank_one_delta(self, n, k):
        assert delta_threshold(n, k, 1) == Fraction(n - 1, 4 * ((k - 1) * n + 1))

    @pytest.mark.parametrize('n,k', [(2, 3), (3, 3), (4, 5)])
    def test_corollary_is_half_rank_delta(self, n, k):
        assert corollary_threshold(n, k) == Fraction(1, 4) + delta_threshold(n, k, Fraction(n, 2))

    def test_parameter_ranges(self):
        with pytest.raises(ParameterRangeError):
            delta_threshold(3, 3, 4)
        with pytest.raises(ParameterRangeError):
            generate_example(3, 2, 2)
        with pytest.raises(ParameterRangeError):
            generate_example(3, 3, 1)
