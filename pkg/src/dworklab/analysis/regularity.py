"""
Nonsingularity and Dwork-regularity of forms over Q and F_q.
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from ..algebra import FieldPoly, Polynomial
from ..config import section
from ..errors import CharacteristicDividesDegree, NotHomogeneous, ParameterRangeError
from ..groebner import Ideal, find_projective_zero, is_irrelevant, singular_locus_generators

logger = logging.getLogger(__name__)

ZERO_POLYNOMIAL = 'zero_polynomial'
SINGULAR = 'singular'

# P(F_q) / P(F_{q^2}) pre-pass only when the scan stays this small
_PREPASS_POINT_LIMIT = 20000


@dataclass
class RegularityVerdict:
    """Outcome of the subset criterion."""
    dwork_regular: bool
    nonsingular: bool
    failing_subset: Optional[List[int]] = None
    kind: Optional[str] = None
    subsets_checked: int = 0

    def to_dict(self) -> Dict:
        return {
            'dwork_regular': self.dwork_regular,
            'nonsingular': self.nonsingular,
            'failing_subset': self.failing_subset,
            'kind': self.kind,
            'subsets_checked': self.subsets_checked,
        }


def _check_degree(h: Polynomial, minimum: int) -> int:
    if not h.is_homogeneous():
        raise NotHomogeneous('expected a homogeneous polynomial')
    k = h.total_degree()
    if k < minimum:
        raise ParameterRangeError(f'degree {k} below {minimum}')
    if isinstance(h, FieldPoly) and k % h.q == 0:
        raise CharacteristicDividesDegree(h.q, k)
    return k


def _prepass_finds_zero(gens: List[Polynomial], variables: Tuple[int, ...], height: int) -> bool:
    if isinstance(gens[0], FieldPoly):
        q = gens[0].q
        m = len(variables)
        for extension in (1, 2):
            if (q ** extension) ** (m - 1) * 2 > _PREPASS_POINT_LIMIT:
                break
            if find_projective_zero(gens, variables, extension=extension) is not None:
                return True
        return False
    if (2 * height + 1) ** len(variables) > _PREPASS_POINT_LIMIT:
        return False
    return find_projective_zero(gens, variables, height=height) is not None


@lru_cache(maxsize=4096)
def _nonsingular(h: Polynomial, variables: Tuple[int, ...], prepass: bool, height: int) -> bool:
    if h.is_zero():
        return False
    if len(variables) == 1:
        return True
    gens = singular_locus_generators(h, variables)
    if prepass and _prepass_finds_zero(gens, variables, height):
        logger.debug('pre-pass found a singular point of %r', h)
        return False
    return is_irrelevant(Ideal(gens, variables))


def is_nonsingular(h: Polynomial, variables: Optional[Sequence[int]] = None,
                   config: Optional[Dict] = None) -> bool:
    """
    True iff H and its partials have no common zero in projective space.

    Args:
        h: Homogeneous Form or FieldPoly of degree >= 1 (over F_q, q must not divide it)
        variables: 1-based variables H is regarded in (default: all n)
        config: Optional configuration ('groebner' section)
    """
    if h.is_zero():
        return False
    _check_degree(h, 1)
    variables = tuple(variables) if variables else tuple(range(1, h.n + 1))
    opts = section(config, 'groebner')
    return _nonsingular(h, variables, bool(opts.get('prepass', True)),
                        int(opts.get('prepass_height', 2)))


def subsets_in_order(n: int):
    """Nonempty subsets of 1..n, by size then lexicographically."""
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(1, n + 1), size):
            yield subset


def _subset_failure(h: Polynomial, subset: Tuple[int, ...], config: Optional[Dict]) -> Optional[str]:
    restricted = h.restrict(subset)
    if len(subset) == 1:
        return ZERO_POLYNOMIAL if restricted.is_zero() else None
    if restricted.is_zero():
        return SINGULAR
    return None if is_nonsingular(restricted, subset, config) else SINGULAR


def is_dwork_regular(h: Polynomial, config: Optional[Dict] = None,
                     threads: Optional[int] = None) -> RegularityVerdict:
    """
    Subset criterion: H_S != 0 for |S| = 1 and H_S nonsingular in the S-variables for
    |S| >= 2, over all 2^n - 1 nonempty S.

    Args:
        h: Homogeneous Form or FieldPoly of degree >= 2
        config: Optional configuration
        threads: Worker count for the subset checks; the first failure in subset order
            is reported regardless

    Returns:
        RegularityVerdict
    """
    _check_degree(h, 2)
    subsets = list(subsets_in_order(h.n))
    nonsingular = is_nonsingular(h, config=config)
    failure: Optional[Tuple[Tuple[int, ...], str]] = None
    checked = 0
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            kinds = list(pool.map(lambda s: _subset_failure(h, s, config), subsets))
        checked = len(subsets)
        failure = next(((s, k) for s, k in zip(subsets, kinds) if k), None)
    else:
        for subset in subsets:
            checked += 1
            kind = _subset_failure(h, subset, config)
            if kind:
                failure = (subset, kind)
                break
    if failure:
        logger.debug('not Dwork-regular: subset %s fails (%s)', failure[0], failure[1])
        return RegularityVerdict(False, nonsingular, list(failure[0]), failure[1], checked)
    return RegularityVerdict(True, nonsingular, None, None, checked)


def dwork_regular_via_euler(h: Polynomial) -> bool:
    """Direct test: (H, X_1 dH/dX_1, ..., X_n dH/dX_n) has no projective zero."""
    _check_degree(h, 2)
    gens = [h]
    for i in range(1, h.n + 1):
        xi = h._new({tuple(1 if j == i - 1 else 0 for j in range(h.n)): 1})
        gens.append(xi * h.partial_derivative(i))
    return is_irrelevant(Ideal(gens))
