"""
Reduction of Dwork-regular forms modulo primes and the Deligne property after
specialization.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import pandas as pd
from tqdm import tqdm

from ..algebra import FieldPoly, Form, Polynomial, primes_up_to
from ..errors import (
    CharacteristicDividesDegree,
    NotDworkRegular,
    ParameterRangeError,
)
from .regularity import is_dwork_regular, is_nonsingular

logger = logging.getLogger(__name__)


@dataclass
class BadPrimeReport:
    """Classification of the primes in [2, q_max]."""
    q_max: int
    excluded: List[int] = field(default_factory=list)
    bad: List[int] = field(default_factory=list)
    good: List[int] = field(default_factory=list)

    @property
    def good_count(self) -> int:
        return len(self.good)

    @property
    def largest_bad_prime(self) -> Optional[int]:
        return max(self.bad) if self.bad else None

    @property
    def stabilized(self) -> bool:
        """No bad prime in the upper half (q_max/2, q_max] of the scan."""
        return all(2 * q <= self.q_max for q in self.bad)

    def to_dict(self) -> Dict:
        return {
            'q_max': self.q_max,
            'excluded_primes': self.excluded,
            'bad_primes': self.bad,
            'good_count': self.good_count,
            'largest_bad_prime': self.largest_bad_prime,
            'stabilized': self.stabilized,
        }

    def to_frame(self) -> pd.DataFrame:
        rows = ([(q, 'excluded') for q in self.excluded]
                + [(q, 'bad') for q in self.bad]
                + [(q, 'good') for q in self.good])
        return pd.DataFrame(rows, columns=['prime', 'class']).sort_values('prime').reset_index(drop=True)


def is_excluded_prime(h: Form, q: int) -> bool:
    """q divides the degree or some coefficient denominator."""
    if h.total_degree() % q == 0:
        return True
    return any(c.denominator % q == 0 for c in h.terms.values())


def _classify(h: Form, q: int, config: Optional[Dict]) -> str:
    if is_excluded_prime(h, q):
        return 'excluded'
    reduced = h.reduce_mod(q)
    if reduced.is_zero() or reduced.total_degree() < 2:
        return 'bad'
    return 'good' if is_dwork_regular(reduced, config).dwork_regular else 'bad'


def bad_primes(h: Form, q_max: int, config: Optional[Dict] = None,
               threads: Optional[int] = None, progress: bool = False) -> BadPrimeReport:
    """
    Classify every prime q <= q_max for a form that is Dwork-regular over Q.

    Args:
        h: Dwork-regular Form over Q
        q_max: Largest prime to scan (>= 2)
        config: Optional configuration
        threads: Worker count for the per-prime checks
        progress: Show a progress bar on stderr

    Returns:
        BadPrimeReport partitioning the scanned primes
    """
    if q_max < 2:
        raise ParameterRangeError('q_max must be at least 2')
    verdict = is_dwork_regular(h, config)
    if not verdict.dwork_regular:
        raise NotDworkRegular('bad-prime scan needs a form that is Dwork-regular over Q',
                              verdict.failing_subset)
    primes = primes_up_to(q_max)
    iterator = tqdm(primes, desc='bad primes', mininterval=1.0, disable=not progress)
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            classes = list(pool.map(lambda q: _classify(h, q, config), iterator))
    else:
        classes = [_classify(h, q, config) for q in iterator]
    report = BadPrimeReport(q_max=q_max)
    for q, kind in zip(primes, classes):
        getattr(report, kind).append(q)
    logger.info('bad primes up to %d: %s (excluded %s)', q_max, report.bad, report.excluded)
    return report


@dataclass
class DeligneCertificate:
    """Result of specializing X_1..X_r and testing the Deligne conditions."""
    is_deligne: bool
    degree: int
    leading_form: Polynomial
    specialized: Polynomial
    variables: List[int]


def deligne_after_specialization(h: Polynomial, values: Sequence, config: Optional[Dict] = None,
                                 check_regular: bool = True) -> DeligneCertificate:
    """
    Specialize X_i = values[i-1] for i <= r and certify the Deligne conditions in the
    remaining variables: char does not divide the degree and the leading form is
    nonsingular.

    Args:
        h: Dwork-regular FieldPoly (a Form is accepted and treated over Q)
        values: Constants for X_1..X_r, r = len(values) < n
        config: Optional configuration
        check_regular: Verify the Dwork-regular precondition first

    Returns:
        DeligneCertificate
    """
    r = len(values)
    if not 0 <= r < h.n:
        raise ParameterRangeError(f'need 0 <= r < n, got r={r}, n={h.n}')
    k = h.total_degree()
    if isinstance(h, FieldPoly) and k % h.q == 0:
        raise CharacteristicDividesDegree(h.q, k)
    if check_regular:
        verdict = is_dwork_regular(h, config)
        if not verdict.dwork_regular:
            raise NotDworkRegular('specialization needs a Dwork-regular input', verdict.failing_subset)
    specialized = h.specialize({i + 1: v for i, v in enumerate(values)})
    remaining = list(range(r + 1, h.n + 1))
    if specialized.is_zero():
        return DeligneCertificate(False, -1, specialized, specialized, remaining)
    lead = specialized.leading_form()
    d = lead.total_degree()
    char_ok = not (isinstance(h, FieldPoly) and d % h.q == 0)
    nonsingular = char_ok and d >= 1 and is_nonsingular(lead, remaining, config)
    return DeligneCertificate(char_ok and nonsingular, d, lead, specialized, remaining)
