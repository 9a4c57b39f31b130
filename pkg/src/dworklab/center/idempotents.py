"""
Decomposability over Q through rational idempotents of the Harrison center.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Dict, List, Optional

import numpy as np

from ..algebra import Form, RationalMatrix
from ..config import section
from ..errors import DegenerateForm
from .harrison import CenterBasis, compute_center, is_nondegenerate

logger = logging.getLogger(__name__)

DECOMPOSABLE = 'decomposable'
INDECOMPOSABLE = 'indecomposable-over-Q'
INCONCLUSIVE = 'inconclusive'


@dataclass
class DecomposabilityVerdict:
    central: bool
    verdict: str
    center: CenterBasis
    idempotent: Optional[RationalMatrix] = None
    reason: str = ''
    details: Dict = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return {
            'center_dimension': self.center.dimension,
            'central': self.central,
            'verdict': self.verdict,
            'idempotent': self.idempotent.to_lists() if self.idempotent is not None else None,
            'reason': self.reason,
        }


def is_nontrivial_idempotent(e: RationalMatrix) -> bool:
    n = e.rows
    return (e @ e) == e and not e.is_zero() and e != RationalMatrix.identity(n)


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    p, q = isqrt(x.numerator), isqrt(x.denominator)
    if p * p == x.numerator and q * q == x.denominator:
        return Fraction(p, q)
    return None


def _fast_path(center: CenterBasis) -> Optional[RationalMatrix]:
    """Basis elements, their complements and 0/1 combinations."""
    ident = RationalMatrix.identity(center.n)
    for b in center.basis:
        for candidate in (b, ident - b):
            if is_nontrivial_idempotent(candidate):
                return candidate
    if center.dimension <= 10:
        for mask in itertools.product((0, 1), repeat=center.dimension):
            if 1 < sum(mask) < center.dimension:
                candidate = center.combination(mask)
                if is_nontrivial_idempotent(candidate):
                    return candidate
    return None


def _solve_dimension_two(center: CenterBasis):
    """
    Rational solutions of (aI + bB)^2 = aI + bB with b != 0.

    Returns:
        (idempotent or None, details)
    """
    n = center.n
    ident = RationalMatrix.identity(n)
    b = next(m for m in center.basis if RationalMatrix([ident.flat(), m.flat()]).rank() == 2)
    c = b @ b
    # with u = 2a - 1 every off-diagonal entry and diagonal difference reads u*p + beta*s = 0
    linear = []
    for i in range(n):
        for j in range(n):
            if i != j:
                linear.append((b[i, j], c[i, j]))
        if i:
            linear.append((b[i, i] - b[0, 0], c[i, i] - c[0, 0]))
    p0, s0 = next((p, s) for p, s in linear if p != 0)
    t = s0 / p0
    if any(p * t != s for p, s in linear):
        return None, {'reason': 'linear conditions force beta = 0'}
    # diagonal entry: beta^2 (t^2/4 - t B_00 + C_00) = 1/4
    d = t * t / 4 - t * b[0, 0] + c[0, 0]
    details = {'t': t, 'quadratic_coefficient': 4 * d}
    if d == 0:
        return None, dict(details, reason='no beta satisfies the diagonal equation')
    beta = _rational_sqrt(1 / (4 * d))
    if beta is None:
        return None, dict(details, reason=f'beta^2 = {1 / (4 * d)} has no rational root')
    for sign in (1, -1):
        beta_s = sign * beta
        alpha = (1 - t * beta_s) / 2
        candidate = ident.scale(alpha) + b.scale(beta_s)
        if is_nontrivial_idempotent(candidate):
            return candidate, dict(details, alpha=alpha, beta=beta_s)
    return None, dict(details, reason='rational candidates fail A^2 = A')


def _bounded_search(center: CenterBasis, height: int, trials: int,
                    seed: Optional[int]) -> Optional[RationalMatrix]:
    d = center.dimension
    for coeffs in itertools.product((-1, 0, 1), repeat=d):
        candidate = center.combination(coeffs)
        if is_nontrivial_idempotent(candidate):
            return candidate
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        nums = rng.integers(-height, height + 1, size=d)
        dens = rng.integers(1, height + 1, size=d)
        coeffs = [Fraction(int(p), int(q)) for p, q in zip(nums, dens)]
        candidate = center.combination(coeffs)
        if is_nontrivial_idempotent(candidate):
            return candidate
    return None


def decide_decomposability(f: Form, config: Optional[Dict] = None,
                           seed: Optional[int] = None) -> DecomposabilityVerdict:
    """
    Decide decomposability over Q from the Harrison center.

    Args:
        f: Nondegenerate form of degree >= 3
        config: Optional configuration ('center' section)
        seed: Seed of the randomized idempotent search (dimension >= 3)

    Returns:
        DecomposabilityVerdict
    """
    if not is_nondegenerate(f):
        raise DegenerateForm('some nonzero v has sum_i v_i dF/dX_i = 0')
    center = compute_center(f)
    if center.dimension == 1:
        return DecomposabilityVerdict(True, INDECOMPOSABLE, center,
                                      reason='center is Q * I')
    found = _fast_path(center)
    if found is not None:
        return DecomposabilityVerdict(False, DECOMPOSABLE, center, found,
                                      reason='idempotent among basis combinations')
    if center.dimension == 2:
        found, details = _solve_dimension_two(center)
        if found is not None:
            return DecomposabilityVerdict(False, DECOMPOSABLE, center, found,
                                          reason='rational root of the idempotent equations',
                                          details=details)
        return DecomposabilityVerdict(False, INDECOMPOSABLE, center,
                                      reason=details.get('reason', ''), details=details)
    opts = section(config, 'center')
    found = _bounded_search(center, int(opts.get('idempotent_height', 20)),
                            int(opts.get('random_trials', 2000)), seed)
    if found is not None:
        return DecomposabilityVerdict(False, DECOMPOSABLE, center, found,
                                      reason='bounded-height search')
    logger.warning('no rational idempotent found in a %d-dimensional center', center.dimension)
    return DecomposabilityVerdict(False, INCONCLUSIVE, center,
                                  reason='bounded-height search exhausted')
