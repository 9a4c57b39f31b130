"""
Lower bound for |S(2R/L; w, t)| at a point of a good box.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

from ..analysis import DerivativeWitness
from ..algebra import Form
from ..errors import HypothesisViolation, ParameterRangeError, TWindowEmpty
from ..expsum import RationalAngle, decompose_sum, sum_terms
from .parameters import Instance, t_window
from .profile import Constants

logger = logging.getLogger(__name__)


@dataclass
class LowerBoundReport:
    q: int
    a: int
    b: Tuple[int, ...]
    offsets: Tuple[float, ...]
    s_abs: float
    t_abs: float
    main_term: float
    e2_measured: float
    e2_aligned: float
    e2_budget: float
    e1_budget: float
    sup_partial: float
    tau: float
    box_half_width: float
    half_width: float
    paper_floor: float
    half_weil_floor: float
    chain_lower_bound: float
    constants: Dict = field(default_factory=dict)

    @property
    def clamped(self) -> bool:
        """The box half-width c5 q^(-1-1/m) was cut down to 1/N."""
        return self.half_width < self.box_half_width

    @property
    def chain_holds(self) -> bool:
        """E2 <= main/2, hence |S| >= main/2."""
        return self.e2_measured <= self.main_term / 2 and self.s_abs >= self.main_term / 2

    @property
    def main_meets_paper_floor(self) -> bool:
        return self.main_term >= self.paper_floor

    @property
    def meets_half_weil_floor(self) -> bool:
        return self.s_abs >= self.half_weil_floor

    @property
    def certified(self) -> bool:
        """|S| >= (1/2) floor(R/(Lq))^m q^(m/2) with the error chain intact."""
        return self.chain_holds and self.meets_half_weil_floor

    def to_dict(self) -> Dict:
        return {
            'q': self.q, 'a': self.a, 'b': list(self.b), 'offsets': list(self.offsets),
            's_abs': self.s_abs, 't_abs': self.t_abs, 'main_term': self.main_term,
            'e1_budget': self.e1_budget, 'e2_measured': self.e2_measured,
            'e2_aligned': self.e2_aligned, 'e2_budget': self.e2_budget,
            'tau': self.tau, 'box_half_width': self.box_half_width,
            'half_width': self.half_width, 'clamped': self.clamped,
            'paper_floor': self.paper_floor,
            'half_weil_floor': self.half_weil_floor,
            'chain_lower_bound': self.chain_lower_bound,
            'chain_holds': self.chain_holds,
            'certified': self.certified,
            'main_meets_paper_floor': self.main_meets_paper_floor,
            'meets_half_weil_floor': self.meets_half_weil_floor,
        }


def box_angles(q: int, a: int, b: Sequence[int], offsets: Sequence[float]):
    """(y_1, y_tail) for the box point 2 pi (a, b)/q + offsets."""
    y = [RationalAngle(a, q, float(offsets[0]))]
    y += [RationalAngle(bj, q, float(o)) for bj, o in zip(b, offsets[1:])]
    return y


def lower_bound_chain(instance: Instance, p_k: Form, witness: DerivativeWitness,
                      point: Tuple[int, int, Sequence[int]], offsets: Sequence[float],
                      constants: Constants, config: Optional[Dict] = None,
                      approximation_constant: float = 1.0) -> LowerBoundReport:
    """
    Evaluate S(2R/L; w, t) at y = 2 pi (a, b)/q + offsets with t tuned so that
    L^k t = 2 pi a/q exactly, and compare it with the main term.

    Args:
        instance: Feasible instance
        p_k: Leading form, X_1 intertwined with X_1..X_r
        witness: Derivative witness M
        point: (q, a, b) of a good pair
        offsets: (o_1, o_{r+1}, ..., o_n) inside the box
        constants: c0..c5 and delta0
        config: Optional configuration
        approximation_constant: C in the E1 budget C c3 sup |S(u)|

    Returns:
        LowerBoundReport
    """
    q, a, b = point
    b = tuple(int(v) for v in b)
    m = instance.m
    if len(offsets) != m + 1 or len(b) != m:
        raise ParameterRangeError(f'expected {m + 1} offsets and {m} linear frequencies')
    rl = instance.rl
    h1 = constants.c4 / q
    box_h = constants.c5 * q ** (-1.0 - 1.0 / m)
    if abs(offsets[0]) > h1 or any(abs(o) > box_h for o in offsets[1:]):
        raise ParameterRangeError('offsets fall outside the box B(a, b; q)')
    # the decomposition needs VN <= 1 with N = R/L terms per coordinate
    h = min(box_h, 1.0 / rl)
    if any(abs(o) > h for o in offsets[1:]):
        raise HypothesisViolation(f'linear offsets exceed 1/N = {1.0 / rl:.3e} '
                                  f'inside the box of half-width {box_h:.3e}')

    window = t_window(instance, witness.value, constants.c1, constants.c2, constants.c3,
                      constants.delta0)
    s = -float(offsets[0])
    tau = s / instance.L_power_k
    if abs(tau) > window.tau_max:
        raise TWindowEmpty('|tau| <= c2 delta0/(S1 R^(k-1))',
                           f'tau {tau:.3e} exceeds {window.tau_max:.3e}')

    y = box_angles(q, a, b, offsets)
    u = [2 * rl] * m
    decomposition = decompose_sum(p_k, witness.M, rl, u, y, s, q, a, b, h, config)
    if abs(decomposition.t_value) < 0.5 * q ** (m / 2.0):
        raise HypothesisViolation(f'({a}, {b}) is not a good pair mod {q}')
    sup_partial = sum_terms(p_k, witness.M, rl, u, y, s).sup_partial_sums()

    main = abs(decomposition.main_term)
    s_abs = abs(decomposition.s_value)
    e1 = approximation_constant * constants.c3 * sup_partial
    periods = rl // q
    report = LowerBoundReport(
        q=q, a=a, b=b, offsets=tuple(float(o) for o in offsets),
        s_abs=s_abs,
        t_abs=abs(decomposition.t_value),
        main_term=main,
        e2_measured=decomposition.magnitude_error,
        e2_aligned=decomposition.error,
        e2_budget=decomposition.budget,
        e1_budget=e1,
        sup_partial=sup_partial,
        tau=tau,
        box_half_width=box_h,
        half_width=h,
        paper_floor=2.0 ** (-m - 1) * (rl / math.sqrt(instance.Q)) ** m,
        half_weil_floor=0.5 * periods ** m * q ** (m / 2.0),
        chain_lower_bound=(1 - constants.c0) ** instance.plan.n * s_abs - e1,
        constants=constants.as_dict(),
    )
    if not report.certified:
        logger.warning('q=%d (a=%d, b=%s): |S|=%.4g, main=%.4g, floor=%.4g, E2=%.4g not certified',
                       q, a, b, s_abs, main, report.half_weil_floor, report.e2_measured)
    return report
