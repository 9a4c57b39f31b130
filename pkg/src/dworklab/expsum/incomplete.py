"""
Mixed complete/incomplete sums against the (log q)^|I| q^(n/2) bound.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterable, Sequence

import numpy as np

from ..algebra import FieldPoly
from ..errors import ParameterRangeError, VariableCountMismatch
from .tables import evaluate_on_grid, grid_points, phase_histogram_sum

logger = logging.getLogger(__name__)


def incomplete_constant(k: int, n: int, q: int, truncated: int) -> float:
    """(k - 1)^n (2 + 3/log q)^|I|, from completing each truncated coordinate."""
    return float((k - 1) ** n) * (2.0 + 3.0 / math.log(q)) ** truncated


@dataclass
class IncompleteSumReport:
    value: complex
    truncated: list
    normalizer: float
    ratio: float
    constant: float

    @property
    def magnitude(self) -> float:
        return abs(self.value)

    @property
    def within_bound(self) -> bool:
        return self.ratio <= self.constant * (1 + 1e-9)

    def to_dict(self) -> Dict:
        return {
            'value': [self.value.real, self.value.imag],
            'magnitude': self.magnitude,
            'truncated': self.truncated,
            'ratio': self.ratio,
            'constant': self.constant,
            'within_bound': self.within_bound,
        }


def incomplete_sum_check(poly: FieldPoly, J: Iterable[int], H: Sequence[int],
                         a: int = 1, b: Sequence[int] = ()) -> IncompleteSumReport:
    """
    Sum exp(2 pi i (a Q(x) + b.x)/q) with x_j over F_q for j in J and
    1 <= x_i <= H_i otherwise.

    Args:
        poly: Q over F_q in n variables
        J: 1-based coordinates summed completely
        H: Cutoffs for all n coordinates; entries for J are ignored
        a: Multiplier of Q
        b: Linear frequencies (zero if omitted)

    Returns:
        IncompleteSumReport with ratio |sum| / (q^(n/2) (log q)^|I|)
    """
    q, n = poly.q, poly.n
    if len(H) != n:
        raise VariableCountMismatch(f'H has {len(H)} entries, expected {n}')
    b = tuple(b) or (0,) * n
    if len(b) != n:
        raise VariableCountMismatch(f'b has {len(b)} entries, expected {n}')
    complete = set(J)
    if not complete <= set(range(1, n + 1)):
        raise ParameterRangeError(f'J must be a subset of 1..{n}')
    truncated = []
    points = grid_points(n, q)
    keep = np.ones(points.shape[1], dtype=bool)
    for i in range(1, n + 1):
        if i in complete:
            continue
        h = int(H[i - 1])
        if not 1 <= h <= q:
            raise ParameterRangeError(f'cutoff H_{i}={h} outside 1..{q}')
        if h < q:
            truncated.append(i)
            # x_i in {1..h} as residues; x_i = q is the residue 0
            keep &= (points[i - 1] >= 1) & (points[i - 1] <= h)
    phase = (a % q) * evaluate_on_grid(poly, points)
    for i, bi in enumerate(b):
        if bi % q:
            phase = phase + (bi % q) * points[i]
    counts = np.bincount(phase[keep] % q, minlength=q)
    value = phase_histogram_sum(counts, q)
    normalizer = q ** (n / 2.0) * math.log(q) ** len(truncated)
    k = max(poly.total_degree(), 1)
    return IncompleteSumReport(
        value=value,
        truncated=truncated,
        normalizer=normalizer,
        ratio=abs(value) / normalizer,
        constant=incomplete_constant(k, n, q, len(truncated)),
    )
