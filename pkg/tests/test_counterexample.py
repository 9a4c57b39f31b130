"""
Tests for the counterexample pipeline on the (n, k, r) = (3, 3, 2) family.
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from dworklab.analysis import find_derivative_witness
from dworklab.counterexample import (
    CONSTRAINT_2,
    CONSTRAINT_3,
    INCREASING,
    NON_INCREASING,
    Constants,
    TestFunction,
    analytic_exponent,
    build_boxes,
    construct_point,
    evaluate_operator,
    feasible_instance,
    growth_experiment,
    lower_bound_chain,
    monotonicity,
    omega_star_measure,
    solve_parameters,
    standard_profile,
    t_window,
    union_volume,
)
from dworklab.errors import (
    HypothesisViolation,
    InfeasibleInstance,
    ParameterRangeError,
    PlanRefused,
    TWindowEmpty,
)
from dworklab.expsum import SumTableCache


@pytest.fixture(scope='module')
def plan():
    return solve_parameters(3, 3, 2)


@pytest.fixture(scope='module')
def constants():
    return Constants.from_config()


@pytest.fixture(scope='module')
def witness(family_332):
    return find_derivative_witness(family_332, 2)


@pytest.fixture(scope='module')
def instance(plan, constants, witness):
    return feasible_instance(plan, j=40, witness_value=witness.value,
                             constants=constants.as_dict(), delta0=constants.delta0)


@pytest.fixture(scope='module')
def boxset(instance, family_332, witness, constants):
    return build_boxes(instance, family_332, witness.M, constants)


class TestParameters:
    def test_plan_332(self, plan):
        assert plan.D == 5
        assert plan.kappa == Fraction(1, 10)
        assert plan.lam == Fraction(4, 5)
        assert plan.delta == Fraction(1, 20)
        assert plan.s_threshold == Fraction(3, 10)
        assert plan.modulus == 10
        assert plan.m == 1

    def test_binding_relations_hold_with_equality(self, plan):
        assert plan.verify()
        binding = [rel for rel in plan.relations if rel.sense in ('>=', '<=')]
        assert all(rel.equality for rel in binding)

    def test_rank_one_plan(self):
        plan = solve_parameters(2, 3, 1)
        assert (plan.kappa, plan.lam) == (Fraction(1, 10), Fraction(4, 5))
        assert plan.s_threshold == Fraction(3, 10)

    def test_quadratic_plan(self):
        assert solve_parameters(3, 2, 1).s_threshold == Fraction(1, 4) + Fraction(1, 8)

    def test_analytic_exponent_vanishes_at_threshold(self, plan):
        assert analytic_exponent(plan, plan.s_threshold) == 0
        assert analytic_exponent(plan, Fraction(1, 4)) == Fraction(1, 20)

    def test_full_rank_is_refused(self):
        with pytest.raises(PlanRefused):
            solve_parameters(3, 3, 3)
        with pytest.raises(ParameterRangeError):
            solve_parameters(3, 3, 0)


class TestInstances:
    def test_progression_instance(self, instance):
        assert instance.R == 2.0 ** 40
        assert instance.L == 2.0 ** 32
        assert instance.Q == 16
        assert instance.S1 == 2.0 ** 20
        assert instance.rl == 256
        assert all(instance.checks.values())
        assert instance.window.compatible

    def test_progression_requires_modulus(self, plan):
        with pytest.raises(InfeasibleInstance) as exc:
            feasible_instance(plan, j=45)
        assert exc.value.constraint == 'progression'

    def test_explicit_instance_accepted(self, plan):
        inst = feasible_instance(plan, R=2.0 ** 40, L=2.0 ** 32, Q=16, S1=2.0 ** 20)
        assert inst.rl == 256
        assert inst.j is None

    def test_constraint_two_violation(self, plan):
        with pytest.raises(InfeasibleInstance) as exc:
            feasible_instance(plan, R=2.0 ** 40, L=2.0 ** 30, Q=16, S1=2.0 ** 10)
        assert exc.value.constraint == CONSTRAINT_2

    def test_constraint_three_violation(self, plan):
        with pytest.raises(InfeasibleInstance) as exc:
            feasible_instance(plan, R=2.0 ** 40, L=2.0 ** 32, Q=32, S1=2.0 ** 20)
        assert exc.value.constraint == CONSTRAINT_3

    def test_non_integral_ratio(self, plan):
        with pytest.raises(InfeasibleInstance) as exc:
            feasible_instance(plan, R=2.0 ** 40, L=3.0, Q=16, S1=2.0 ** 20)
        assert exc.value.constraint == 'integrality'

    def test_t_window_failures(self, instance, witness):
        with pytest.raises(TWindowEmpty):
            t_window(instance, witness.value, 1e-30, 1.0, 0.01, 1.0)
        with pytest.raises(TWindowEmpty) as exc:
            t_window(instance, witness.value, 0.01, 0.01, 1e-6, 0.1)
        assert exc.value.inequality == 't <= c3/R^(k-1)'


class TestProfile:
    def test_profile_shape(self):
        profile = standard_profile()
        assert float(profile.phi(0.0)) == pytest.approx(1.0, abs=1e-6)
        ys = np.linspace(-20, 20, 81)
        assert np.all(profile.phi(ys) >= -1e-9)
        assert np.all(profile.phi_hat(np.array([-1.5, 1.2, 3.0])) == 0)
        assert profile.phi_hat(0.0) > 0

    def test_delta0(self, constants):
        profile = standard_profile()
        assert constants.delta0 > 0
        assert float(profile.phi(constants.delta0)) == pytest.approx(1 - constants.c0 / 2, abs=1e-6)

    def test_constants_validation(self):
        with pytest.raises(ParameterRangeError):
            Constants(c0=0.7)
        with pytest.raises(ParameterRangeError):
            Constants(c3=0.0)


class TestBoxes:
    def test_primes_and_counts(self, boxset):
        assert boxset.primes == [11, 13]
        assert boxset.box_count == sum(g.count for g in boxset.good.values())
        assert all(g.density_checked for g in boxset.good.values())
        assert boxset.same_prime_disjoint()

    def test_union_below_sum_of_measures(self, boxset):
        assert 0 < boxset.union_measure <= boxset.sum_of_measures * (1 + 1e-9)
        assert boxset.method == 'sweep'
        assert boxset.to_dict()['box_count'] == boxset.box_count

    def test_union_volume_of_overlapping_boxes(self):
        lo = np.array([[0.0, 0.0], [1.0, 1.0], [5.0, 5.0]])
        hi = np.array([[2.0, 2.0], [3.0, 3.0], [6.0, 6.0]])
        assert union_volume(lo, hi) == pytest.approx(4 + 4 - 1 + 1)

    def test_omega_star(self, boxset, instance, witness):
        star = omega_star_measure(boxset, instance, witness.value)
        assert star.periods[0] == 13
        assert star.lower > 0
        assert star.lower <= star.upper

    def test_cache_reuse(self, tmp_path, instance, family_332, witness, constants, boxset):
        cache = SumTableCache(tmp_path)
        first = build_boxes(instance, family_332, witness.M, constants, cache=cache)
        assert len(list(tmp_path.glob('*.dwxs'))) == 2
        second = build_boxes(instance, family_332, witness.M, constants, cache=cache)
        assert first.box_count == second.box_count == boxset.box_count


def _strongest_pair(boxset, q):
    good = boxset.good[q]
    i = int(np.argmax(good.magnitudes))
    a, b = good.pairs[i]
    return q, a, b


class TestLowerBound:
    def test_exact_rational_point(self, instance, family_332, witness, constants, boxset):
        report = lower_bound_chain(instance, family_332, witness, _strongest_pair(boxset, 11),
                                   [0.0, 0.0], constants)
        assert report.certified
        assert report.half_weil_floor == pytest.approx(0.5 * 23 * math.sqrt(11))
        assert report.s_abs >= report.half_weil_floor
        assert report.main_meets_paper_floor
        assert report.e2_measured <= report.main_term / 2
        assert report.e2_measured <= report.e2_budget

    def test_half_width_clamped_to_one_over_n(self, instance, family_332, witness, constants,
                                              boxset):
        report = lower_bound_chain(instance, family_332, witness, _strongest_pair(boxset, 11),
                                   [0.0, 0.0], constants)
        assert report.box_half_width == pytest.approx(constants.c5 / 121)
        assert report.clamped
        assert report.half_width == 1.0 / 256
        assert report.to_dict()['clamped'] is True
        unclamped = lower_bound_chain(instance, family_332, witness,
                                      _strongest_pair(boxset, 13), [0.0, 0.0], constants)
        assert not unclamped.clamped
        assert unclamped.half_width == unclamped.box_half_width

    def test_box_boundary(self, instance, family_332, witness, constants, boxset):
        for q in boxset.primes:
            edge = min(constants.c5 * q ** -2.0, 1.0 / instance.rl)
            for sign in (1.0, -1.0):
                report = lower_bound_chain(instance, family_332, witness,
                                           _strongest_pair(boxset, q), [1e-6, sign * edge],
                                           constants)
                assert report.chain_holds
                assert report.certified
                assert report.e2_measured <= report.e2_budget

    def test_offset_beyond_one_over_n(self, instance, family_332, witness, constants, boxset):
        # inside the c5 box for q = 11 but past the VN <= 1 limit
        with pytest.raises(HypothesisViolation):
            lower_bound_chain(instance, family_332, witness, _strongest_pair(boxset, 11),
                              [0.0, 0.004], constants)

    def test_offsets_outside_box(self, instance, family_332, witness, constants, boxset):
        with pytest.raises(ParameterRangeError):
            lower_bound_chain(instance, family_332, witness, _strongest_pair(boxset, 11),
                              [0.0, 1.0], constants)

    def test_time_shift_outside_window(self, instance, family_332, witness, constants, boxset):
        q = 11
        with pytest.raises(TWindowEmpty):
            lower_bound_chain(instance, family_332, witness, _strongest_pair(boxset, q),
                              [constants.c4 / q, 0.0], constants)


@pytest.fixture(scope='module', params=[256, 512, 1024], ids=lambda rl: f'rl{rl}')
def scaled_boxes(request, plan, family_332, witness, constants):
    # R fixed at 2^40; constraint 2 then needs C2 = (R/L)/256 at Q = 16
    shrink = request.param // 256
    inst = feasible_instance(plan, R=2.0 ** 40, L=2.0 ** 32 / shrink, Q=16,
                             S1=2.0 ** 20 / shrink ** 3,
                             implied_constants=(1.0, float(shrink), 1.0))
    assert inst.rl == request.param
    return inst, build_boxes(inst, family_332, witness.M, constants)


class TestLowerBoundSweep:
    @pytest.mark.slow
    @pytest.mark.parametrize('q', [11, 13])
    def test_every_good_pair(self, scaled_boxes, family_332, witness, constants, q):
        inst, boxes = scaled_boxes
        good = boxes.good[q]
        assert good.count > 0
        edge = min(constants.c5 * q ** -2.0, 1.0 / inst.rl)
        for (a, b), magnitude in zip(good.pairs, good.magnitudes):
            for offsets in ([0.0, 0.0], [1e-6, edge], [1e-6, -edge]):
                report = lower_bound_chain(inst, family_332, witness, (q, a, b), offsets,
                                           constants)
                assert report.chain_holds
                assert report.main_meets_paper_floor
                assert report.main_term - report.e2_measured > 0
                assert report.e2_measured < report.main_term / 2
                assert report.s_abs >= report.main_term / 2
                assert report.certified == report.meets_half_weil_floor
                if magnitude >= math.sqrt(q):
                    assert report.certified

    @pytest.mark.parametrize('q', [11, 13])
    def test_strongest_pair_certified(self, scaled_boxes, family_332, witness, constants, q):
        inst, boxes = scaled_boxes
        report = lower_bound_chain(inst, family_332, witness, _strongest_pair(boxes, q),
                                   [0.0, 0.0], constants)
        assert report.certified
        assert report.half_weil_floor == pytest.approx(0.5 * (inst.rl // q) * math.sqrt(q))


class TestEvolution:
    def test_construct_point(self, instance, witness, constants):
        f = TestFunction(instance, witness, standard_profile())
        x, t = construct_point(f, [1.0, 2.0], c1=constants.c1)
        assert -constants.c1 < x[0] <= -constants.c1 / 2
        assert x[1] == constants.c1 / 2
        assert x[2] == pytest.approx(2.0 / instance.L)
        turns = (t * instance.L_power_k - 1.0) / (2 * math.pi)
        assert turns == pytest.approx(round(turns), abs=1e-6)
        assert 0 <= t <= instance.window.t_max

    def test_time_zero_is_identity(self, instance, witness, family_332):
        f = TestFunction(instance, witness, standard_profile())
        x = [0.0, 0.5, 0.0]
        config = {'quadrature': {'start_nodes': 8, 'max_nodes': 64, 'rtol': 1e-5}}
        value = evaluate_operator(f, family_332, x, 0.0, config=config, check_window=False)
        assert value.value == pytest.approx(f.abs_value(x), rel=1e-4)

    def test_operator_bounded_below_by_sum(self, instance, witness, family_332, constants,
                                           boxset):
        q, a, b = _strongest_pair(boxset, 11)
        f = TestFunction(instance, witness, standard_profile())
        x, t = construct_point(f, [2 * math.pi * a / q, 2 * math.pi * b[0] / q],
                               c1=constants.c1)
        config = {'quadrature': {'start_nodes': 8, 'max_nodes': 64, 'rtol': 1e-5}}
        value = evaluate_operator(f, family_332, x, t, constants=constants, config=config)
        floor = (1 - constants.c0) ** 3 * value.s_abs - constants.c3 * value.sup_partial
        assert floor > 0
        assert value.value >= floor
        assert value.s_abs >= 0.5 * 23 * math.sqrt(11)

    def test_operator_is_linear_in_amplitude(self, instance, witness, family_332, constants):
        f = TestFunction(instance, witness, standard_profile())
        x, t = construct_point(f, [1.0, 2.0], c1=constants.c1)
        config = {'quadrature': {'start_nodes': 8, 'max_nodes': 64, 'rtol': 1e-5}}
        base = evaluate_operator(f, family_332, x, t, constants=constants, config=config)
        for alpha in (2.5, -0.5, 3j, 1 - 1j):
            scaled = evaluate_operator(f.scaled(alpha), family_332, x, t, constants=constants,
                                       config=config)
            assert scaled.value == pytest.approx(abs(alpha) * base.value, rel=1e-12)
            assert scaled.s_abs == base.s_abs

    def test_norm_bracket(self, instance, witness):
        f = TestFunction(instance, witness, standard_profile())
        lo, hi = f.norm_bracket()
        assert lo == hi
        assert f.annulus == (instance.R / (4 * math.sqrt(3)), 4 * math.sqrt(3) * instance.R)


class TestGrowth:
    def test_monotonicity_labels(self):
        assert monotonicity([1.0, 2.0, 3.0]) == INCREASING
        assert monotonicity([3.0, 3.0, 1.0]) == NON_INCREASING

    def test_growth_below_threshold(self, plan, family_332):
        report = growth_experiment(plan, family_332, [30, 40, 50], Fraction(1, 4))
        assert [row['j'] for row in report.rows] == [40, 50]
        assert [j for j, _ in report.skipped] == [30]
        assert report.monotonicity == INCREASING
        assert report.slope == pytest.approx(float(report.analytic_exponent), abs=1e-9)

    def test_growth_above_threshold(self, plan, family_332):
        report = growth_experiment(plan, family_332, [40, 50], Fraction(7, 20))
        assert report.monotonicity == NON_INCREASING
        assert report.analytic_exponent == Fraction(-1, 20)
        assert report.to_dict()['s'] == Fraction(7, 20)
