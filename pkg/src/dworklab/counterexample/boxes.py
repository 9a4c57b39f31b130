"""
Diophantine boxes around good rational points and the measure of their union.

Boxes live on the torus [0, 2 pi)^(m+1) in the coordinates (y_1, y_{r+1}, ..., y_n),
times the slab [0, c1]^(r-1) in (x_2, ..., x_r).
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..algebra import Form, primes_between
from ..analysis import deligne_after_specialization
from ..config import section
from ..errors import (
    CharacteristicDividesDegree,
    DenominatorDivisibleByQ,
    NoPrimesInRange,
    NotDworkRegular,
)
from ..expsum import GoodPairSet, SumTableCache, good_pairs, scan_all_pairs, specialized_tail
from .parameters import Instance
from .profile import Constants

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
MC_CHUNK = 100_000


@dataclass(frozen=True)
class Box:
    q: int
    a: int
    b: Tuple[int, ...]
    center: Tuple[float, ...]
    half_widths: Tuple[float, ...]


@dataclass
class BoxSet:
    Q: float
    m: int
    r: int
    constants: Constants
    good: Dict[int, GoodPairSet] = field(default_factory=dict)
    skipped: Dict[int, str] = field(default_factory=dict)
    union_torus: float = 0.0
    method: str = 'sweep'
    standard_error: float = 0.0

    @property
    def primes(self) -> List[int]:
        return sorted(self.good)

    @property
    def slab_factor(self) -> float:
        return self.constants.c1 ** (self.r - 1)

    def half_widths(self, q: int) -> Tuple[float, ...]:
        return (self.constants.c4 / q,) + (self.constants.c5 * q ** (-1.0 - 1.0 / self.m),) * self.m

    def box_measure(self, q: int) -> float:
        return float(np.prod([2.0 * h for h in self.half_widths(q)])) * self.slab_factor

    @property
    def box_count(self) -> int:
        return sum(g.count for g in self.good.values())

    @property
    def sum_of_measures(self) -> float:
        return sum(g.count * self.box_measure(q) for q, g in self.good.items())

    @property
    def union_measure(self) -> float:
        return self.union_torus * self.slab_factor

    @property
    def omega_log_constant(self) -> float:
        """|Omega| log Q."""
        return self.union_measure * math.log(self.Q)

    def boxes(self) -> Iterator[Box]:
        for q in self.primes:
            widths = self.half_widths(q)
            for a, b in self.good[q].pairs:
                center = tuple(TWO_PI * v / q for v in (a,) + b)
                yield Box(q, a, b, center, widths)

    def same_prime_disjoint(self) -> bool:
        """Within one prime, centers are 2 pi/q apart in some coordinate."""
        return all(2.0 * max(self.half_widths(q)) < TWO_PI / q for q in self.primes)

    def to_dict(self) -> Dict:
        return {
            'Q': self.Q,
            'primes': self.primes,
            'skipped': {str(q): why for q, why in self.skipped.items()},
            'good_pairs': {str(q): g.count for q, g in self.good.items()},
            'box_count': self.box_count,
            'union_measure': self.union_measure,
            'sum_of_measures': self.sum_of_measures,
            'omega_log_constant': self.omega_log_constant,
            'method': self.method,
            'standard_error': self.standard_error,
        }


def _wrap(lo: np.ndarray, hi: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Split boxes that cross 0 or 2 pi so every piece lies in [0, 2 pi]."""
    for axis in range(lo.shape[1]):
        below = lo[:, axis] < 0
        above = hi[:, axis] > TWO_PI
        extra_lo = [lo[below].copy(), lo[above].copy()]
        extra_hi = [hi[below].copy(), hi[above].copy()]
        extra_lo[0][:, axis] += TWO_PI
        extra_hi[0][:, axis] = TWO_PI
        extra_lo[1][:, axis] = 0.0
        extra_hi[1][:, axis] -= TWO_PI
        lo[below, axis] = 0.0
        hi[above, axis] = TWO_PI
        lo = np.concatenate([lo] + extra_lo)
        hi = np.concatenate([hi] + extra_hi)
    return lo, hi


def union_volume(lo: np.ndarray, hi: np.ndarray) -> float:
    """Exact volume of a union of axis-parallel boxes by recursive slab sweep."""
    if lo.shape[0] == 0:
        return 0.0
    if lo.shape[1] == 1:
        order = np.argsort(lo[:, 0], kind='stable')
        a, b = lo[order, 0], hi[order, 0]
        reach = np.maximum.accumulate(b)
        previous = np.concatenate([[-np.inf], reach[:-1]])
        return float(np.sum(np.maximum(0.0, b - np.maximum(a, previous))))
    edges = np.unique(np.concatenate([lo[:, 0], hi[:, 0]]))
    total = 0.0
    for left, right in zip(edges[:-1], edges[1:]):
        active = (lo[:, 0] <= left) & (hi[:, 0] >= right)
        if active.any():
            total += (right - left) * union_volume(lo[active, 1:], hi[active, 1:])
    return total


def _box_arrays(boxset: BoxSet) -> Tuple[np.ndarray, np.ndarray]:
    lows, highs = [], []
    for q in boxset.primes:
        widths = np.array(boxset.half_widths(q))
        pairs = boxset.good[q].pairs
        if not pairs:
            continue
        centers = TWO_PI / q * np.array([(a,) + b for a, b in pairs], dtype=float)
        lows.append(centers - widths)
        highs.append(centers + widths)
    if not lows:
        d = boxset.m + 1
        return np.zeros((0, d)), np.zeros((0, d))
    return np.concatenate(lows), np.concatenate(highs)


def sweep_measure(boxset: BoxSet) -> float:
    lo, hi = _box_arrays(boxset)
    lo, hi = _wrap(lo, hi)
    return union_volume(lo, hi)


def monte_carlo_measure(boxset: BoxSet, samples: int, seed: Optional[int] = None) -> Tuple[float, float]:
    """Estimate of the torus union measure and its standard error."""
    rng = np.random.default_rng(seed)
    d = boxset.m + 1
    masks = {q: boxset.good[q].mask() for q in boxset.primes}
    hits = 0
    done = 0
    while done < samples:
        size = min(MC_CHUNK, samples - done)
        y = rng.uniform(0.0, TWO_PI, size=(size, d))
        covered = np.zeros(size, dtype=bool)
        for q in boxset.primes:
            widths = np.array(boxset.half_widths(q))
            nearest = np.rint(y * q / TWO_PI)
            offset = y - TWO_PI * nearest / q
            index = nearest.astype(np.int64) % q
            inside = np.all(np.abs(offset) <= widths, axis=1)
            good = masks[q][tuple(index.T)]
            covered |= inside & good
        hits += int(covered.sum())
        done += size
    volume = TWO_PI ** d
    p = hits / samples
    return p * volume, math.sqrt(p * (1 - p) / samples) * volume


def _prime_good_pairs(p_k: Form, M: Sequence[int], instance: Instance, q: int,
                      config: Optional[Dict], cache: Optional[SumTableCache]):
    try:
        reduced = p_k.reduce_mod(q)
        cert = deligne_after_specialization(reduced, [v * instance.rl for v in M], config)
        if not cert.is_deligne:
            return None, 'specialized polynomial is not Deligne'
        tail = specialized_tail(p_k, M, instance.rl).reduce_mod(q)
    except (DenominatorDivisibleByQ, CharacteristicDividesDegree, NotDworkRegular) as e:
        return None, str(e)
    table = cache.get_or_compute(tail, config, cert.degree) if cache else scan_all_pairs(tail, config, cert.degree)
    return good_pairs(table), ''


def build_boxes(instance: Instance, p_k: Form, M: Sequence[int],
                constants: Optional[Constants] = None, config: Optional[Dict] = None,
                threads: Optional[int] = None, seed: Optional[int] = None,
                cache: Optional[SumTableCache] = None) -> BoxSet:
    """
    Good-pair boxes for every prime q in [Q/2, Q] and the measure of their union.

    Args:
        instance: Feasible instance
        p_k: Leading form with X_1 intertwined with X_1..X_r
        M: Derivative witness
        constants: c1, c4, c5 (config defaults if omitted)
        config: Optional configuration
        threads: Worker count for the per-prime tables
        seed: Monte Carlo seed (n - r >= 3)
        cache: Optional table cache

    Returns:
        BoxSet
    """
    constants = constants or Constants.from_config(config)
    primes = primes_between(instance.Q / 2, instance.Q)
    if not primes:
        raise NoPrimesInRange(f'no primes in [{instance.Q / 2:g}, {instance.Q:g}]')
    boxset = BoxSet(Q=instance.Q, m=instance.m, r=len(M), constants=constants)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(
            lambda q: _prime_good_pairs(p_k, M, instance, q, config, cache), primes))
    for q, (good, reason) in zip(primes, results):
        if good is None:
            logger.warning('skipping q=%d: %s', q, reason)
            boxset.skipped[q] = reason
        else:
            boxset.good[q] = good
    if not boxset.good:
        raise NoPrimesInRange(f'no usable primes in [{instance.Q / 2:g}, {instance.Q:g}]')
    if boxset.m <= 2:
        boxset.union_torus = sweep_measure(boxset)
    else:
        samples = int(section(config, 'boxes').get('monte_carlo_samples', 10 ** 6))
        boxset.union_torus, boxset.standard_error = monte_carlo_measure(boxset, samples, seed)
        boxset.method = 'monte_carlo'
    logger.info('Q=%g: %d boxes over primes %s, union %.4g',
                instance.Q, boxset.box_count, boxset.primes, boxset.union_measure)
    return boxset


@dataclass
class OmegaStar:
    lower: float
    upper: float
    jacobian: float
    periods: List[int]
    scales: List[float]

    def to_dict(self) -> Dict:
        return {'lower': self.lower, 'upper': self.upper, 'jacobian': self.jacobian,
                'periods': self.periods}


def omega_star_measure(boxset: BoxSet, instance: Instance, witness_value) -> OmegaStar:
    """
    Measure of the x-preimage of Omega under y_1 = -L^k x_1/d1P, y_j = L x_j (j > r),
    counting full periods of each rescaled axis over x_1 in (-c1, -c1/2] and
    x_j in [-c1, c1].
    """
    c1 = boxset.constants.c1
    derivative = instance.R_power * abs(float(witness_value))
    scales = [instance.L_power_k / derivative] + [instance.L] * boxset.m
    widths = [c1 / 2.0] + [2.0 * c1] * boxset.m
    periods = [int(math.floor(s * w / TWO_PI)) for s, w in zip(scales, widths)]
    jacobian = float(np.prod(scales))
    full = float(np.prod(periods)) / jacobian
    partial = float(np.prod([p + 1 for p in periods])) / jacobian
    lower = full * boxset.union_measure
    if lower > 0:
        # inverting the rescaling recovers |Omega|
        recovered = lower * jacobian / float(np.prod(periods))
        assert math.isclose(recovered, boxset.union_measure, rel_tol=1e-12)
    return OmegaStar(lower=lower, upper=partial * boxset.union_measure, jacobian=jacobian,
                     periods=periods, scales=scales)
