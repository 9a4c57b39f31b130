"""
The Schwartz profile phi and the small constants c0..c5.

phi = c |g|^2 where g has Fourier transform the bump exp(-1/(1 - 4 xi^2)) on (-1/2, 1/2),
so phi >= 0, phi(0) = 1 and supp(phi_hat) is in [-1, 1].
"""

import logging
import math
from dataclasses import dataclass, asdict
from functools import lru_cache
from typing import Dict, Optional

import numpy as np
from scipy import integrate, optimize, special
from scipy.interpolate import CubicSpline

from ..config import section
from ..errors import ParameterRangeError

logger = logging.getLogger(__name__)

GAUSS_NODES = 96
Y_TABLE_MAX = 64.0


def bump(xi) -> np.ndarray:
    xi = np.asarray(xi, dtype=float)
    out = np.zeros_like(xi)
    inside = np.abs(xi) < 0.5
    out[inside] = np.exp(-1.0 / (1.0 - 4.0 * xi[inside] ** 2))
    return out


class Profile:
    """Tabulated phi and phi_hat with cubic interpolation."""

    def __init__(self, samples: int = 2 ** 14):
        if samples < 64:
            raise ParameterRangeError('profile needs at least 64 samples')
        self.samples = samples
        nodes, weights = special.roots_legendre(GAUSS_NODES)
        # Gauss-Legendre on [0, 1/2]
        self._xi = (nodes + 1.0) / 4.0
        self._w = weights / 4.0 * bump(self._xi)
        bump_integral = 2.0 * float(np.sum(self._w))
        self.c = (2.0 * math.pi / bump_integral) ** 2

        grid = np.linspace(-1.0, 1.0, samples + 1)
        h = grid[1] - grid[0]
        conv = np.convolve(bump(grid), bump(grid), mode='same') * h
        self._hat_table = self.c / (2.0 * math.pi) * conv
        self._hat = CubicSpline(grid, self._hat_table)
        self._hat_grid = grid

        ys = np.linspace(0.0, Y_TABLE_MAX, samples + 1)
        self._phi = CubicSpline(ys, self._direct(ys))
        self.l2_norm = math.sqrt(integrate.trapezoid(self._hat_table ** 2, grid) / (2.0 * math.pi))
        logger.debug('profile: c=%.6f, |phi|_2=%.6f', self.c, self.l2_norm)

    def _direct(self, y) -> np.ndarray:
        y = np.atleast_1d(np.asarray(y, dtype=float))
        g = np.cos(np.outer(y, self._xi)) @ self._w / math.pi
        return self.c * g ** 2

    def phi(self, y) -> np.ndarray:
        y = np.abs(np.asarray(y, dtype=float))
        out = np.empty_like(y)
        near = y <= Y_TABLE_MAX
        out[near] = self._phi(y[near])
        if np.any(~near):
            out[~near] = self._direct(y[~near])
        return out

    def phi_hat(self, xi) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        out = np.where(np.abs(xi) <= 1.0, self._hat(np.clip(xi, -1.0, 1.0)), 0.0)
        return np.maximum(out, 0.0)

    def delta0(self, c0: float) -> float:
        """Largest delta with phi(y) >= 1 - c0/2 for |y| <= delta."""
        if not 0 < c0 < 0.5:
            raise ParameterRangeError(f'c0 must lie in (0, 1/2), got {c0}')
        level = 1.0 - c0 / 2.0
        hi = 0.05
        while self._direct(hi)[0] >= level:
            hi *= 2.0
        return float(optimize.brentq(lambda y: self._direct(y)[0] - level, 0.0, hi, xtol=1e-12))


@lru_cache(maxsize=4)
def standard_profile(samples: int = 2 ** 14) -> Profile:
    return Profile(samples)


@dataclass(frozen=True)
class Constants:
    c0: float = 0.1
    c1: float = 0.01
    c2: float = 0.01
    c3: float = 0.01
    c4: float = 0.5
    c5: float = 0.5
    delta0: float = 0.0

    def __post_init__(self):
        if not 0 < self.c0 < 0.5:
            raise ParameterRangeError(f'c0 must lie in (0, 1/2), got {self.c0}')
        for name in ('c1', 'c2', 'c3', 'c4', 'c5'):
            if getattr(self, name) <= 0:
                raise ParameterRangeError(f'{name} must be positive')

    @classmethod
    def from_config(cls, config: Optional[Dict] = None, overrides: Optional[Dict] = None,
                    profile: Optional[Profile] = None) -> 'Constants':
        values = dict(section(config, 'constants'))
        values.update(overrides or {})
        profile = profile or standard_profile(int(section(config, 'profile').get('samples', 2 ** 14)))
        values = {k: float(v) for k, v in values.items() if k in ('c0', 'c1', 'c2', 'c3', 'c4', 'c5')}
        return cls(delta0=profile.delta0(values.get('c0', 0.1)), **values)

    def as_dict(self) -> Dict:
        return asdict(self)
