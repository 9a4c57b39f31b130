"""
Growth of the certified maximal-function ratio along the R = 2^j progression.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from ..algebra import Form
from ..analysis import find_derivative_witness
from ..errors import InfeasibleInstance, NoPrimesInRange, ParameterRangeError, TWindowEmpty
from ..expsum import SumTableCache
from .boxes import build_boxes, omega_star_measure
from .parameters import ParamPlan, analytic_exponent, feasible_instance
from .profile import Constants, standard_profile
from .test_function import TestFunction

logger = logging.getLogger(__name__)

INCREASING = 'increasing'
NON_INCREASING = 'non-increasing'
MIXED = 'mixed'


def monotonicity(values: Sequence[float]) -> str:
    diffs = np.diff(np.asarray(values, dtype=float))
    if len(diffs) and np.all(diffs > 0):
        return INCREASING
    if np.all(diffs <= 0):
        return NON_INCREASING
    return MIXED


@dataclass
class GrowthReport:
    plan: ParamPlan
    s: Fraction
    rows: List[Dict] = field(default_factory=list)
    skipped: List[Tuple[int, str]] = field(default_factory=list)
    omega_constant: float = 0.0

    @property
    def ratios(self) -> List[float]:
        return [row['ratio'] for row in self.rows]

    @property
    def monotonicity(self) -> str:
        return monotonicity(self.ratios)

    @property
    def analytic_exponent(self) -> Fraction:
        return analytic_exponent(self.plan, self.s)

    @property
    def slope(self) -> Optional[float]:
        """log2 R slope of log2(ratio log Q), i.e. with the (log Q)^-1 factor removed."""
        if len(self.rows) < 2:
            return None
        x = np.array([math.log2(row['R']) for row in self.rows])
        y = np.array([math.log2(row['ratio'] * math.log(row['Q'])) for row in self.rows])
        return float(np.polyfit(x, y, 1)[0])

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows)

    def to_dict(self) -> Dict:
        return {
            'n': self.plan.n, 'k': self.plan.k, 'r': self.plan.r,
            's': self.s,
            'rows': self.rows,
            'skipped': [{'j': j, 'reason': why} for j, why in self.skipped],
            'omega_constant': self.omega_constant,
            'monotonicity': self.monotonicity,
            'slope': self.slope,
            'analytic_exponent': self.analytic_exponent,
        }


def growth_experiment(plan: ParamPlan, p_k: Form, j_list: Sequence[int], s,
                      constants: Optional[Constants] = None, config: Optional[Dict] = None,
                      box_q_cap: float = 64, threads: Optional[int] = None,
                      seed: Optional[int] = None, cache: Optional[SumTableCache] = None,
                      progress: bool = False) -> GrowthReport:
    """
    Certified ratio |Omega*| * pointwise bound / (R^s |f|_2) for each feasible j.

    Omega* is measured from the boxes where Q <= box_q_cap; the smallest measured
    |Omega*| log Q is the constant of the certified bound |Omega*| >= c/log Q used for
    every row.

    Args:
        plan: ParamPlan of (n, k, r)
        p_k: Leading form with X_1 intertwined with X_1..X_r
        j_list: Exponents on the progression
        s: Sobolev exponent
        constants: c0..c5, delta0
        config: Optional configuration
        box_q_cap: Largest Q for which boxes are built
        threads, seed, cache: Passed to build_boxes
        progress: Show a progress bar on stderr

    Returns:
        GrowthReport
    """
    constants = constants or Constants.from_config(config)
    profile = standard_profile()
    witness = find_derivative_witness(p_k, plan.r, config=config)
    s = Fraction(s)
    if s >= plan.s_threshold:
        logger.info('s=%s is at or above the threshold %s', s, plan.s_threshold)
    report = GrowthReport(plan=plan, s=s)
    feasible = []
    measured: Dict[int, float] = {}
    bar = tqdm(sorted(j_list), desc='growth', mininterval=1.0, disable=not progress)
    for j in bar:
        try:
            instance = feasible_instance(plan, j=j, witness_value=witness.value,
                                         constants=constants.as_dict(), delta0=constants.delta0)
            if instance.Q <= box_q_cap:
                boxset = build_boxes(instance, p_k, witness.M, constants, config,
                                     threads=threads, seed=seed, cache=cache)
                star = omega_star_measure(boxset, instance, witness.value)
                if star.lower <= 0:
                    raise NoPrimesInRange('Omega* holds no full period')
                measured[j] = star.lower
        except (InfeasibleInstance, NoPrimesInRange, TWindowEmpty, ParameterRangeError) as e:
            logger.info('j=%d skipped: %s', j, e)
            report.skipped.append((j, str(e)))
            continue
        feasible.append((j, instance))
    if not feasible:
        return report
    if not measured:
        raise NoPrimesInRange(f'no row with Q <= {box_q_cap} to measure Omega*')
    report.omega_constant = min(measured[j] * math.log(inst.Q)
                                for j, inst in feasible if j in measured)
    n, m = plan.n, plan.m
    for j, instance in feasible:
        f = TestFunction(instance, witness, profile)
        lo, hi = f.norm_bracket()
        omega = report.omega_constant / math.log(instance.Q)
        pointwise = 0.5 * (1 - constants.c0) ** n * 2.0 ** (-m - 1) \
            * (instance.rl / math.sqrt(instance.Q)) ** m
        ratio = omega * pointwise / (instance.R ** float(s) * hi)
        report.rows.append({
            'j': j, 'R': instance.R, 'L': instance.L, 'Q': instance.Q,
            'omega_measure': omega,
            'omega_measured': measured.get(j),
            'lower_bound': pointwise,
            'f_norm_bracket': [lo, hi],
            'ratio': ratio,
        })
    return report
