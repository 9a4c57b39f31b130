"""
Closed-form counterexample exponents and feasibility of concrete instances.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..analysis import delta_threshold
from ..errors import InfeasibleInstance, ParameterRangeError, PlanRefused, TWindowEmpty

logger = logging.getLogger(__name__)

CONSTRAINT_1 = 'constraint 1: 1/Q <= L^k/(S1 R^(k-1))'
CONSTRAINT_2 = 'constraint 2: Q^(-1-1/(n-r)) <= L/R'
CONSTRAINT_3 = 'constraint 3: R/L >= Q^(1+Delta0)'


@dataclass
class Relation:
    name: str
    lhs: Fraction
    rhs: Fraction
    sense: str

    @property
    def holds(self) -> bool:
        if self.sense == '>=':
            return self.lhs >= self.rhs
        if self.sense == '<=':
            return self.lhs <= self.rhs
        return self.lhs > self.rhs

    @property
    def equality(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> Dict:
        return {'name': self.name, 'lhs': self.lhs, 'rhs': self.rhs,
                'holds': self.holds, 'equality': self.equality}


@dataclass
class ParamPlan:
    """Exponents R = 2^j, L = R^lambda, Q = R^kappa, S1 = R^sigma."""
    n: int
    k: int
    r: int
    D: int
    sigma: Fraction
    kappa: Fraction
    lam: Fraction
    delta0: Fraction
    delta: Fraction
    relations: List[Relation] = field(default_factory=list)

    @property
    def m(self) -> int:
        return self.n - self.r

    @property
    def s_threshold(self) -> Fraction:
        return Fraction(1, 4) + self.delta

    @property
    def modulus(self) -> int:
        return 2 * self.D

    def verify(self) -> bool:
        return all(rel.holds for rel in self.relations)

    def to_dict(self) -> Dict:
        return {
            'n': self.n, 'k': self.k, 'r': self.r, 'D': self.D,
            'sigma': self.sigma, 'kappa': self.kappa, 'lambda': self.lam,
            'delta0': self.delta0, 'delta': self.delta,
            's_threshold': self.s_threshold, 'modulus': self.modulus,
            'relations': [rel.to_dict() for rel in self.relations],
        }


def _relations(n: int, k: int, r: int, sigma: Fraction, kappa: Fraction,
               lam: Fraction, delta0: Fraction) -> List[Relation]:
    m = n - r
    return [
        Relation('kappa + k lambda >= k - 1 + sigma', kappa + k * lam, k - 1 + sigma, '>='),
        Relation('((n-r+1)/(n-r)) kappa + lambda >= 1', Fraction(m + 1, m) * kappa + lam, Fraction(1), '>='),
        Relation('lambda <= 1 - kappa (1 + Delta0)', lam, 1 - kappa * (1 + delta0), '<='),
        Relation('lambda > (k-1)/k', lam, Fraction(k - 1, k), '>'),
        Relation('kappa > 0', kappa, Fraction(0), '>'),
        Relation('lambda < 1', Fraction(1), lam, '>'),
    ]


def solve_parameters(n: int, k: int, r: int) -> ParamPlan:
    """
    Optimal sigma, kappa, lambda for a Dwork-regular leading form of rank r.

    Args:
        n: Number of variables (>= 2)
        k: Degree (>= 2)
        r: Intertwining rank, 1 <= r < n

    Returns:
        ParamPlan whose relations are re-verified in exact arithmetic
    """
    if n < 2 or k < 2:
        raise ParameterRangeError(f'need n >= 2 and k >= 2, got n={n}, k={k}')
    if r == n:
        raise PlanRefused(
            'r = n leaves no trailing variables: the construction only reaches s < 1/4'
        )
    if not 1 <= r < n:
        raise ParameterRangeError(f'need 1 <= r < n, got r={r}')
    m = n - r
    D = (k - 1) * (m + 1) + 1
    sigma = Fraction(1, 2)
    kappa = Fraction(m, 2 * D)
    lam = 1 - Fraction(m + 1, 2 * D)
    delta0 = Fraction(1, m)
    plan = ParamPlan(n=n, k=k, r=r, D=D, sigma=sigma, kappa=kappa, lam=lam,
                     delta0=delta0, delta=delta_threshold(n, k, r),
                     relations=_relations(n, k, r, sigma, kappa, lam, delta0))
    if not plan.verify():
        failed = [rel.name for rel in plan.relations if not rel.holds]
        raise AssertionError(f'closed-form plan violates {failed}')
    logger.debug('plan (%d,%d,%d): kappa=%s lambda=%s', n, k, r, kappa, lam)
    return plan


def analytic_exponent(plan: ParamPlan, s) -> Fraction:
    """sigma/2 + m/2 - (kappa + lambda) m/2 - s."""
    m = plan.m
    return plan.sigma / 2 + Fraction(m, 2) - (plan.kappa + plan.lam) * Fraction(m, 2) - Fraction(s)


@dataclass
class TWindow:
    """Admissible times t around -x_1/d1P for the slab x_1 in (-c1, -c1/2]."""
    derivative: float
    tau_max: float
    t_max: float
    margin: float

    @property
    def compatible(self) -> bool:
        return self.margin > 0

    def to_dict(self) -> Dict:
        return {'derivative': self.derivative, 'tau_max': self.tau_max,
                't_max': self.t_max, 'margin': self.margin}


@dataclass
class Instance:
    plan: ParamPlan
    R: float
    L: float
    Q: float
    S1: float
    rl: int
    j: Optional[int] = None
    implied_constants: Tuple[float, float, float] = (1.0, 1.0, 1.0)
    checks: Dict[str, bool] = field(default_factory=dict)
    window: Optional[TWindow] = None

    @property
    def k(self) -> int:
        return self.plan.k

    @property
    def m(self) -> int:
        return self.plan.m

    @property
    def L_power_k(self) -> float:
        return self.L ** self.k

    @property
    def R_power(self) -> float:
        """R^(k-1)."""
        return self.R ** (self.k - 1)

    def to_dict(self) -> Dict:
        out = {
            'j': self.j, 'R': self.R, 'L': self.L, 'Q': self.Q, 'S1': self.S1,
            'R_over_L': self.rl, 'implied_constants': list(self.implied_constants),
            'checks': self.checks,
        }
        if self.window is not None:
            out['t_window'] = self.window.to_dict()
        return out


def t_window(instance: Instance, witness_value, c1: float, c2: float, c3: float,
             delta0: float) -> TWindow:
    """
    d1P_k(M * R, R~) = R^(k-1) d1P_k(M) since X_1 only meets X_1..X_r.

    Raises:
        TWindowEmpty: with the violated inequality
    """
    derivative = instance.R_power * abs(float(witness_value))
    tau_max = c2 * delta0 / (instance.S1 * instance.R_power)
    margin = c1 / (2 * derivative) - tau_max
    window = TWindow(derivative=derivative, tau_max=tau_max,
                     t_max=c3 / instance.R_power, margin=margin)
    if margin <= 0:
        raise TWindowEmpty('c1/(2 d1P) - c2 delta0/(S1 R^(k-1)) > 0',
                           f'margin {margin:.3e}')
    if c1 / derivative + tau_max > window.t_max:
        raise TWindowEmpty('t <= c3/R^(k-1)',
                           f'largest t {c1 / derivative + tau_max:.3e} exceeds {window.t_max:.3e}')
    return window


def _rl_from(R: float, L: float) -> int:
    ratio = Fraction(R) / Fraction(L)
    if ratio.denominator != 1:
        raise InfeasibleInstance('integrality', f'R/L = {float(ratio)} is not an integer')
    return int(ratio)


def _check_constraints(plan: ParamPlan, R: float, L: float, Q: float, S1: float,
                       constants: Sequence[float]) -> Dict[str, bool]:
    k, m = plan.k, plan.m
    C1, C2, C3 = constants
    delta0 = float(plan.delta0)
    # in log space, with a small slack for the exact powers of two
    log = math.log
    slack = 1e-9
    checks = {
        CONSTRAINT_1: -log(Q) <= log(C1) + k * log(L) - log(S1) - (k - 1) * log(R) + slack,
        CONSTRAINT_2: -(1 + 1 / m) * log(Q) <= log(C2) + log(L) - log(R) + slack,
        CONSTRAINT_3: log(R) - log(L) + slack >= log(C3) + (1 + delta0) * log(Q),
    }
    return checks


def feasible_instance(plan: ParamPlan, j: Optional[int] = None, R: Optional[float] = None,
                      L: Optional[float] = None, Q: Optional[float] = None,
                      S1: Optional[float] = None,
                      implied_constants: Tuple[float, float, float] = (1.0, 1.0, 1.0),
                      witness_value=None, constants: Optional[Dict] = None,
                      delta0: Optional[float] = None) -> Instance:
    """
    Instance on the progression R = 2^j or from an explicit (R, L, Q, S1).

    Args:
        plan: ParamPlan
        j: Exponent with j = 0 mod plan.modulus
        R, L, Q, S1: Explicit quadruple (used when j is None)
        implied_constants: Constants of the three size conditions, recorded
        witness_value: d1P_k(M); when given with constants the t-window is checked
        constants: c1, c2, c3 as a dict
        delta0: Profile radius for the t-window

    Returns:
        Instance

    Raises:
        InfeasibleInstance: first violated condition, by name
    """
    if j is not None:
        if j <= 0 or j % plan.modulus:
            raise InfeasibleInstance('progression', f'j={j} is not a positive multiple of {plan.modulus}')
        R = 2.0 ** j
        L = 2.0 ** int(j * plan.lam)
        Q = 2.0 ** int(j * plan.kappa)
        S1 = 2.0 ** float(j * plan.sigma)
    elif None in (R, L, Q, S1):
        raise ParameterRangeError('give either j or all of R, L, Q, S1')
    rl = _rl_from(R, L)
    checks = _check_constraints(plan, R, L, Q, S1, implied_constants)
    for name, ok in checks.items():
        if not ok:
            raise InfeasibleInstance(name, f'R={R:g}, L={L:g}, Q={Q:g}, S1={S1:g}')
    instance = Instance(plan=plan, R=R, L=L, Q=Q, S1=S1, rl=rl, j=j,
                        implied_constants=tuple(implied_constants), checks=checks)
    if witness_value is not None and constants is not None:
        instance.window = t_window(instance, witness_value, constants['c1'], constants['c2'],
                                   constants['c3'], delta0 if delta0 is not None else 0.0)
    return instance
