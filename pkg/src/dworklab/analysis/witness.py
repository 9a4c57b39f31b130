"""
Derivative witnesses and the dispersivity certificate.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..algebra import Form
from ..config import section
from ..errors import NotDworkRegular, ParameterRangeError, PreconditionError, WitnessNotFound
from .rank import intertwining_rank
from .regularity import is_dwork_regular, is_nonsingular

logger = logging.getLogger(__name__)


@dataclass
class DerivativeWitness:
    """Integer tuple M >= 1 with dP_k/dX_1 (M_1..M_r) != 0."""
    M: Tuple[int, ...]
    value: Fraction
    box: int

    @property
    def m_star(self) -> int:
        """max(2, M_1, ..., M_r)."""
        return max([2] + list(self.M))

    def to_dict(self) -> Dict:
        return {'M': list(self.M), 'value': self.value, 'box': self.box}


def first_derivative_at(p_k: Form, M: Sequence[int]) -> Fraction:
    """dP_k/dX_1 at (M_1, ..., M_r, 0, ..., 0)."""
    point = list(M) + [0] * (p_k.n - len(M))
    return p_k.partial_derivative(1).evaluate(point)


def find_derivative_witness(p_k: Form, r: int, b_max: Optional[int] = None,
                            config: Optional[Dict] = None,
                            check_regular: bool = True) -> DerivativeWitness:
    """
    Lexicographically smallest M in [1, B]^r with dP_k/dX_1 (M) != 0, doubling B up to
    b_max.

    Args:
        p_k: Form whose X_1 intertwines exactly with X_1..X_r
        r: Intertwining rank
        b_max: Largest box size (config witness.b_max if omitted)
        config: Optional configuration
        check_regular: Verify Dwork-regularity first

    Returns:
        DerivativeWitness
    """
    opts = section(config, 'witness')
    b_max = int(b_max if b_max is not None else opts.get('b_max', 32))
    b = min(int(opts.get('b_start', 2)), b_max)
    if not 1 <= r <= p_k.n:
        raise ParameterRangeError(f'rank {r} outside 1..{p_k.n}')
    report = intertwining_rank(p_k)
    if report.intertwining_sets[1] != list(range(1, r + 1)):
        raise PreconditionError(
            f'X_1 intertwines with {report.intertwining_sets[1]}, expected 1..{r}; '
            'relabel with relabel_for_rank first'
        )
    if check_regular:
        verdict = is_dwork_regular(p_k, config)
        if not verdict.dwork_regular:
            raise NotDworkRegular('witness search needs a Dwork-regular form', verdict.failing_subset)
    derivative = p_k.partial_derivative(1)
    while True:
        for M in itertools.product(range(1, b + 1), repeat=r):
            value = derivative.evaluate(list(M) + [0] * (p_k.n - r))
            if value != 0:
                logger.debug('derivative witness %s (value %s) in box %d', M, value, b)
                return DerivativeWitness(tuple(M), value, b)
        if b >= b_max:
            raise WitnessNotFound(f'no witness in [1, {b_max}]^{r}')
        b = min(2 * b, b_max)


@dataclass
class DispersiveCertificate:
    """Gradient non-vanishing away from 0 plus a per-line root-count bound."""
    dispersive: bool
    root_bound: int
    gradient_nonvanishing: bool
    pure_power_coefficients: List[Fraction] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {
            'dispersive': self.dispersive,
            'root_bound': self.root_bound,
            'gradient_nonvanishing': self.gradient_nonvanishing,
        }


def is_dispersive(p: Form, config: Optional[Dict] = None) -> DispersiveCertificate:
    """
    Certify dispersivity of P from a Dwork-regular leading form.

    Returns:
        DispersiveCertificate with root_bound = k
    """
    if p.is_zero():
        raise PreconditionError('the zero polynomial is not dispersive')
    p_k = p.leading_form()
    k = p_k.total_degree()
    if k < 2:
        raise PreconditionError('dispersivity needs degree >= 2')
    verdict = is_dwork_regular(p_k, config)
    if not verdict.dwork_regular:
        raise NotDworkRegular('leading form is not Dwork-regular', verdict.failing_subset)
    gradient_ok = is_nonsingular(p_k, config=config)
    coeffs = []
    for i in range(p.n):
        e = tuple(k if j == i else 0 for j in range(p.n))
        coeffs.append(p_k.coefficient(e))
    return DispersiveCertificate(
        dispersive=gradient_ok and all(c != 0 for c in coeffs),
        root_bound=k,
        gradient_nonvanishing=gradient_ok,
        pure_power_coefficients=coeffs,
    )


def count_line_solutions(p: Form, base: Sequence, i: int, value) -> int:
    """
    Number of real t with P(base with X_i = t) = value.

    With the other coordinates fixed, P is a polynomial in X_i containing c X_i^k,
    c != 0, so the count is at most k.
    """
    fixed = {j + 1: base[j] for j in range(p.n) if j + 1 != i}
    line = p.specialize(fixed) - Form.constant(p.n, value)
    degree = line.total_degree()
    if degree <= 0:
        return 0
    coeffs = [0.0] * (degree + 1)
    for e, c in line.terms.items():
        coeffs[e[i - 1]] = float(c)
    roots = np.polynomial.Polynomial(coeffs).roots()
    real = roots[np.abs(roots.imag) < 1e-9].real
    return int(len(np.unique(np.round(real, 9))))
