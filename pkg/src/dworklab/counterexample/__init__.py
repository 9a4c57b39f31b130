"""
Counterexample pipeline: parameters, initial datum, boxes, lower bounds and growth.
"""

from .boxes import BoxSet, OmegaStar, build_boxes, omega_star_measure, union_volume
from .evolution import OperatorValue, construct_point, evaluate_operator
from .growth import INCREASING, MIXED, NON_INCREASING, GrowthReport, growth_experiment, monotonicity
from .lower_bound import LowerBoundReport, box_angles, lower_bound_chain
from .parameters import (
    CONSTRAINT_1,
    CONSTRAINT_2,
    CONSTRAINT_3,
    Instance,
    ParamPlan,
    TWindow,
    analytic_exponent,
    feasible_instance,
    solve_parameters,
    t_window,
)
from .profile import Constants, Profile, standard_profile
from .test_function import TestFunction

__all__ = [
    'BoxSet',
    'OmegaStar',
    'build_boxes',
    'omega_star_measure',
    'union_volume',
    'OperatorValue',
    'construct_point',
    'evaluate_operator',
    'INCREASING',
    'MIXED',
    'NON_INCREASING',
    'GrowthReport',
    'growth_experiment',
    'monotonicity',
    'LowerBoundReport',
    'box_angles',
    'lower_bound_chain',
    'CONSTRAINT_1',
    'CONSTRAINT_2',
    'CONSTRAINT_3',
    'Instance',
    'ParamPlan',
    'TWindow',
    'analytic_exponent',
    'feasible_instance',
    'solve_parameters',
    't_window',
    'Constants',
    'Profile',
    'standard_profile',
    'TestFunction',
]
