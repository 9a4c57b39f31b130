"""
Good pairs: (a, b) with alpha1 q^(m/2) <= |T(a, b; q)| <= (k - 1)^m q^(m/2).
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..errors import DensityAssertionError
from .tables import SumTable, k2_threshold, weil_deligne_bound

logger = logging.getLogger(__name__)

UPPER_RTOL = 1e-9


def default_alpha2(k: int, m: int) -> Fraction:
    """(1/8)(k - 1)^(-2m)."""
    return Fraction(1, 8 * (k - 1) ** (2 * m))


@dataclass
class GoodPairSet:
    """Good pairs of one prime, row-major in (a, b_1, ..., b_m)."""
    q: int
    m: int
    k: int
    alpha1: float
    alpha2: Fraction
    pairs: List[Tuple[int, Tuple[int, ...]]] = field(default_factory=list)
    magnitudes: List[float] = field(default_factory=list)
    density_checked: bool = False

    @property
    def count(self) -> int:
        return len(self.pairs)

    @property
    def density(self) -> float:
        return self.count / float(self.q ** (self.m + 1))

    def meets_density(self) -> bool:
        return Fraction(self.count) >= self.alpha2 * self.q ** (self.m + 1)

    def mask(self) -> np.ndarray:
        """Boolean array over (a, b) marking good pairs."""
        out = np.zeros((self.q,) * (self.m + 1), dtype=bool)
        for a, b in self.pairs:
            out[(a,) + b] = True
        return out

    def to_dict(self) -> Dict:
        return {
            'q': self.q,
            'count': self.count,
            'density': self.density,
            'alpha1': self.alpha1,
            'alpha2': str(self.alpha2),
            'density_checked': self.density_checked,
        }


def good_pairs(table: SumTable, alpha1: float = 0.5, alpha2: Optional[Fraction] = None,
               k1: Optional[int] = None) -> GoodPairSet:
    """
    Filter a table to its good pairs.

    The density bound count >= alpha2 q^(m+1) is asserted when q > max(k, K2, k1).

    Args:
        table: Complete-sum table of a Deligne polynomial
        alpha1: Lower bound factor
        alpha2: Density factor, (1/8)(k - 1)^(-2m) if omitted
        k1: Observed bad-prime threshold, if known

    Returns:
        GoodPairSet
    """
    q, m, k = table.q, table.m, table.k
    if alpha2 is None:
        alpha2 = default_alpha2(k, m)
    root = q ** (m / 2.0)
    mags = table.magnitudes()
    upper = weil_deligne_bound(k, m, q) * (1 + UPPER_RTOL)
    good = (mags >= alpha1 * root) & (mags <= upper)
    indices = np.argwhere(good)
    result = GoodPairSet(
        q=q, m=m, k=k, alpha1=alpha1, alpha2=Fraction(alpha2),
        pairs=[(int(ix[0]), tuple(int(v) for v in ix[1:])) for ix in indices],
        magnitudes=[float(mags[tuple(ix)]) for ix in indices],
    )
    threshold = max(k, k2_threshold(k, m), k1 or 0)
    if q > threshold:
        result.density_checked = True
        if not result.meets_density():
            raise DensityAssertionError(
                f'q={q}: {result.count} good pairs, need at least {float(alpha2) * q ** (m + 1):.3f}'
            )
    elif not result.meets_density():
        logger.warning('q=%d below density threshold %d: %d good pairs', q, threshold, result.count)
    logger.debug('q=%d: %d good pairs (density %.4f)', q, result.count, result.density)
    return result
