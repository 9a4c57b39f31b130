"""
Numerical evaluation of |T_t^P f(x)| for the constructed initial datum.

T_t f(x) = (2 pi)^(-n) sum_m e^(i Phi_m) int Phi_hat(xi, eta)
           e^(i ((S o xi).v + eta.w + D_m(xi, eta))) d(xi, eta)

with Phi_m = P(M * R, L m) t + L m.w reduced exactly mod 2 pi and D_m the Taylor remainder
[P(Z_m + delta) - P(Z_m)] t, delta = (S1 xi_1, xi_2, .., xi_r, eta). The unimodular factor
e((M * R).v) is dropped.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import special

from ..algebra import Form
from ..config import section
from ..errors import ParameterRangeError, QuadratureNonConvergence, VariableCountMismatch
from .parameters import t_window
from .profile import Constants
from .test_function import TestFunction

logger = logging.getLogger(__name__)

PI = Fraction('3.1415926535897932384626433832795028841971693993751058209749445923')
TWO_PI = 2 * PI
M_CHUNK = 64


def reduce_angle(phase: Fraction) -> float:
    """phase mod 2 pi in [0, 2 pi), from the exact rational phase."""
    k = math.floor(phase / TWO_PI)
    return float(phase - k * TWO_PI)


@dataclass
class OperatorValue:
    value: float
    s_abs: float
    sup_partial: float
    nodes: int
    estimates: List[float]

    def to_dict(self) -> Dict:
        return {'abs_T': self.value, 's_abs': self.s_abs, 'sup_partial': self.sup_partial,
                'nodes': self.nodes}


def _taylor_terms(p_k: Form) -> List[Tuple[Tuple[int, ...], Form, int]]:
    """(beta, d^beta P, beta!) for 1 <= |beta| <= k."""
    n, k = p_k.n, p_k.total_degree()
    out = []
    for beta in itertools.product(range(k + 1), repeat=n):
        if not 1 <= sum(beta) <= k:
            continue
        d = p_k
        for i, times in enumerate(beta):
            for _ in range(times):
                d = d.partial_derivative(i + 1)
        if not d.is_zero():
            out.append((beta, d, math.prod(math.factorial(b) for b in beta)))
    return out


def construct_point(f: TestFunction, y: Sequence[float], s: float = 0.0,
                    c1: float = 0.01, middle: Optional[Sequence[float]] = None
                    ) -> Tuple[List[float], float]:
    """
    (x, t) with L^k t = y_1 + s (mod 2 pi), L x_j = y_j for j > r and x_1 in (-c1, -c1/2].

    Args:
        f: Test function
        y: (y_1, y_{r+1}, ..., y_n) in [0, 2 pi)
        s: Time shift of y_1
        c1: Slab constant
        middle: x_2..x_r (c1/2 each if omitted)

    Returns:
        (x, t)
    """
    inst = f.instance
    r = inst.plan.r
    value = float(f.witness.value)
    if value <= 0:
        raise ParameterRangeError('construction needs a positive derivative witness value')
    derivative = inst.R_power * value
    scale = inst.L_power_k / derivative
    lo, hi = c1 * scale / 2.0, c1 * scale
    shift = math.ceil((lo - y[0]) / (2.0 * math.pi))
    y1 = y[0] + 2.0 * math.pi * shift
    if not lo <= y1 < hi:
        raise ParameterRangeError('the x_1 slab holds no full period of y_1')
    x1 = -y1 / scale
    middle = list(middle) if middle is not None else [c1 / 2.0] * (r - 1)
    tail = [yj / inst.L for yj in y[1:]]
    t = (y1 + s) / inst.L_power_k
    return [x1] + middle + tail, t


def _check_slab(x: Sequence[float], t: float, window, c1: float) -> None:
    if not -c1 < x[0] <= -c1 / 2:
        raise ParameterRangeError(f'x_1 = {x[0]} outside (-c1, -c1/2]')
    if any(abs(v) > c1 for v in x[1:]):
        raise ParameterRangeError('x_2..x_n must lie in [-c1, c1]')
    if not 0 <= t <= window.t_max:
        raise ParameterRangeError(f't = {t} outside [0, {window.t_max:.3e}]')


def evaluate_operator(f: TestFunction, p_k: Form, x: Sequence[float], t: float,
                      constants: Optional[Constants] = None, config: Optional[Dict] = None,
                      check_window: bool = True) -> OperatorValue:
    """
    |T_t^P f(x)| by tensor Gauss-Legendre quadrature with node doubling.

    Args:
        f: Test function of the instance
        p_k: Leading form (P = P_k)
        x: Point in R^n
        t: Time
        constants: c0..c5, delta0 (for the window check)
        config: Optional configuration ('quadrature' section)
        check_window: Require x in the slab and t in the admissible window

    Returns:
        OperatorValue with |T_t f(x)| and |S(2R/L; w, t)|
    """
    inst = f.instance
    n, r, m = inst.plan.n, inst.plan.r, inst.m
    if len(x) != n:
        raise VariableCountMismatch(f'x has {len(x)} coordinates, expected {n}')
    if check_window:
        constants = constants or Constants.from_config(config)
        window = t_window(inst, f.witness.value, constants.c1, constants.c2, constants.c3,
                          constants.delta0)
        _check_slab(x, t, window, constants.c1)
    opts = section(config, 'quadrature')
    nodes = int(opts.get('start_nodes', 4))
    max_nodes = int(opts.get('max_nodes', 128))
    rtol = float(opts.get('rtol', 1e-6))

    R, L, S1 = Fraction(inst.R), Fraction(inst.L), Fraction(inst.S1)
    t_exact = Fraction(t)
    w_exact = [Fraction(v) for v in x[r:]]
    base = [v * R for v in f.witness.M]
    grid = list(itertools.product(range(inst.rl, 2 * inst.rl), repeat=m))
    taylor = _taylor_terms(p_k)

    phases = np.empty(len(grid))
    coeffs = np.empty((len(grid), len(taylor)))
    for gi, ms in enumerate(grid):
        z = base + [L * mj for mj in ms]
        phase = p_k.evaluate(z) * t_exact + sum(L * mj * wj for mj, wj in zip(ms, w_exact))
        phases[gi] = reduce_angle(phase)
        for ti, (beta, d, fact) in enumerate(taylor):
            coeffs[gi, ti] = float(d.evaluate(z) * t_exact * S1 ** beta[0] / fact)
    unit = np.exp(1j * phases)
    partial = unit.reshape((inst.rl,) * m)
    for axis in range(m):
        partial = np.cumsum(partial, axis=axis)
    s_value = complex(unit.sum())

    estimates: List[complex] = []
    while True:
        value = _quadrature(f, x, unit, coeffs, taylor, nodes)
        estimates.append(value)
        if len(estimates) >= 2:
            prev = estimates[-2]
            if abs(value - prev) <= rtol * max(abs(value), 1e-300):
                break
        if nodes * 2 > max_nodes:
            raise QuadratureNonConvergence(
                f'no agreement to {rtol} with {nodes} nodes per axis; last {abs(value):.6g}')
        nodes *= 2
    result = abs(f.amplitude) * abs(estimates[-1])
    logger.debug('|T_t f(x)| = %.6g with %d nodes per axis', result, nodes)
    return OperatorValue(value=result, s_abs=abs(s_value),
                         sup_partial=float(np.max(np.abs(partial))),
                         nodes=nodes, estimates=[abs(e) for e in estimates])


def _quadrature(f: TestFunction, x: Sequence[float], unit: np.ndarray, coeffs: np.ndarray,
                taylor, nodes: int) -> complex:
    n = f.n
    xs, ws = special.roots_legendre(nodes)
    mesh = np.meshgrid(*([xs] * n), indexing='ij')
    points = np.stack([g.ravel() for g in mesh])
    weight_mesh = np.meshgrid(*([ws] * n), indexing='ij')
    weights = np.prod([g.ravel() for g in weight_mesh], axis=0)
    weights = weights * np.prod(f.profile.phi_hat(points), axis=0)
    linear = f.instance.S1 * points[0] * x[0]
    for i in range(1, n):
        linear = linear + points[i] * x[i]
    monomials = np.stack([np.prod(points ** np.array(beta)[:, None], axis=0)
                          for beta, _, _ in taylor]) if taylor else np.zeros((0, points.shape[1]))
    total = 0j
    for start in range(0, len(unit), M_CHUNK):
        block = coeffs[start:start + M_CHUNK] @ monomials
        inner = np.exp(1j * (linear[None, :] + block)) @ weights
        total += complex(np.dot(unit[start:start + M_CHUNK], inner))
    return total / (2.0 * math.pi) ** n
