"""
Real exponential sums over integer boxes near rational points.

S = sum_{R/L <= m_j < u_j} exp(i (m.y + P_k(M * R/L, m) (y_1 + s)))

Phases are split into an exact rational part, looked up in a root table, and a real
perturbation reduced mod 2 pi in double-double arithmetic.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..algebra import Form, FieldPoly, Polynomial
from ..config import section
from ..errors import HypothesisViolation, ParameterRangeError, VariableCountMismatch
from .incomplete import incomplete_constant
from .tables import complete_sum, root_table

logger = logging.getLogger(__name__)

# 2 pi = TWO_PI_HI + TWO_PI_LO to about 1e-32
TWO_PI_HI = 6.283185307179586
TWO_PI_LO = 2.4492935982947064e-16

DIRECT_TABLE_LIMIT = 2 ** 20


@dataclass(frozen=True)
class RationalAngle:
    """2 pi numerator/denominator + perturbation."""
    numerator: int
    denominator: int = 1
    perturbation: float = 0.0

    def __post_init__(self):
        if self.denominator < 1:
            raise ParameterRangeError('angle denominator must be positive')

    @classmethod
    def from_float(cls, value: float) -> 'RationalAngle':
        return cls(0, 1, float(value))

    @property
    def turns(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def value(self) -> float:
        return 2.0 * math.pi * self.numerator / self.denominator + self.perturbation

    def offset_from(self, b: int, q: int) -> float:
        """Signed distance to 2 pi b / q on the circle."""
        turns = (self.turns - Fraction(b, q)) % 1
        if turns > Fraction(1, 2):
            turns -= 1
        return 2.0 * math.pi * float(turns) + self.perturbation


# double-double helpers, elementwise on numpy arrays

def _split(a):
    c = 134217729.0 * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def reduce_product_mod_2pi(hi: np.ndarray, lo: np.ndarray, eps: float) -> np.ndarray:
    """(hi + lo) * eps mod 2 pi, centered in [-pi, pi]."""
    p, e = _two_prod(hi, np.full_like(hi, eps))
    e = e + lo * eps
    k = np.round(p / TWO_PI_HI)
    r1, r2 = _two_prod(k, np.full_like(k, TWO_PI_HI))
    return ((p - r1) - r2) + e - k * TWO_PI_LO


def _as_integer(value, what: str) -> int:
    frac = Fraction(value)
    if frac.denominator != 1:
        raise ParameterRangeError(f'{what} must be an integer, got {value}')
    return int(frac)


def specialized_tail(p_k: Polynomial, M: Sequence[int], rl) -> Polynomial:
    """P_k(M * R/L, X_{r+1}, ..., X_n) as a polynomial in the n - r trailing variables."""
    r = len(M)
    if not 1 <= r < p_k.n:
        raise ParameterRangeError(f'need 1 <= r < n, got r={r}, n={p_k.n}')
    spec = p_k.specialize({i + 1: m * rl for i, m in enumerate(M)})
    terms = {e[r:]: c for e, c in spec.terms.items()}
    if isinstance(spec, FieldPoly):
        return FieldPoly(p_k.n - r, spec.q, terms)
    return Form(p_k.n - r, terms)


def _box_ranges(rl: int, u: Sequence[float]) -> List[np.ndarray]:
    ranges = []
    for uj in u:
        top = math.ceil(uj)
        ranges.append(np.arange(rl, max(top, rl), dtype=np.int64))
    return ranges


def _integer_values(poly: Form, grid: Sequence[np.ndarray]) -> np.ndarray:
    """Exact integer values on the grid as a Python-int object array."""
    shape = tuple(len(g) for g in grid)
    mesh = np.meshgrid(*[g.astype(object) for g in grid], indexing='ij') if grid else []
    total = np.zeros(shape, dtype=object)
    for e, c in poly.terms.items():
        term = np.full(shape, int(c), dtype=object)
        for axis, x in enumerate(e):
            if x:
                term = term * mesh[axis] ** x
        total = total + term
    return total


@dataclass
class SumTerms:
    """Per-point unit phases of a real sum, indexed by the box grid."""
    terms: np.ndarray
    exact: bool
    counts: Optional[np.ndarray] = None
    denominator: int = 1

    def total(self) -> complex:
        if self.exact and self.counts is not None and self.denominator <= DIRECT_TABLE_LIMIT:
            return complex(np.dot(self.counts.astype(float), root_table(self.denominator)))
        flat = self.terms.ravel()
        return complex(math.fsum(flat.real), math.fsum(flat.imag))

    def sup_partial_sums(self) -> float:
        """max |S(u)| over every sub-box starting at the lower corner."""
        partial = self.terms
        for axis in range(partial.ndim):
            partial = np.cumsum(partial, axis=axis)
        return float(np.max(np.abs(partial))) if partial.size else 0.0


def sum_terms(p_k: Form, M: Sequence[int], rl, u: Sequence[float],
              y: Sequence[RationalAngle], s: float = 0.0) -> SumTerms:
    """Unit phases exp(i (m.y + P_k(M * R/L, m)(y_1 + s))) over the box."""
    rl = _as_integer(rl, 'R/L')
    m = p_k.n - len(M)
    if len(u) != m:
        raise VariableCountMismatch(f'u has {len(u)} entries, expected {m}')
    if len(y) != m + 1:
        raise VariableCountMismatch(f'y has {len(y)} entries, expected {m + 1}')
    tail = specialized_tail(p_k, M, rl)
    scale = tail.denominator_lcm()
    integral = tail.scale(scale)
    grid = _box_ranges(rl, u)
    shape = tuple(len(g) for g in grid)
    if 0 in shape:
        return SumTerms(np.zeros(shape, dtype=complex), True, np.zeros(1, dtype=np.int64), 1)
    values = _integer_values(integral, grid)

    y1, linear = y[0], y[1:]
    den = reduce(math.lcm, [a.denominator for a in linear], y1.denominator * scale)
    phase = (values * (y1.numerator * (den // (y1.denominator * scale)))) % den
    mesh = np.meshgrid(*grid, indexing='ij')
    for axis, angle in enumerate(linear):
        if angle.numerator % angle.denominator:
            step = angle.numerator * (den // angle.denominator) % den
            phase = (phase + mesh[axis].astype(object) * step) % den
    phase = phase.astype(np.int64)
    if den <= DIRECT_TABLE_LIMIT:
        base = root_table(den)[phase]
    else:
        base = np.exp(2j * np.pi * phase.astype(float) / den)

    eps1 = y1.perturbation + s
    perturbed = eps1 != 0.0 or any(a.perturbation != 0.0 for a in linear)
    if not perturbed:
        counts = np.bincount(phase.ravel(), minlength=den) if den <= DIRECT_TABLE_LIMIT else None
        return SumTerms(base, True, counts, den)

    theta = np.zeros(shape)
    if eps1 != 0.0:
        hi = np.vectorize(float, otypes=[float])(values)
        lo = np.vectorize(float, otypes=[float])(values - np.vectorize(int, otypes=[object])(hi))
        theta = reduce_product_mod_2pi(hi, lo, eps1 / scale)
    for axis, angle in enumerate(linear):
        if angle.perturbation != 0.0:
            theta = theta + mesh[axis].astype(float) * angle.perturbation
    return SumTerms(base * np.exp(1j * theta), False)


def real_sum(p_k: Form, M: Sequence[int], rl, u: Sequence[float],
             y: Sequence[RationalAngle], s: float = 0.0) -> complex:
    """
    S(u; y, s) over R/L <= m_j < u_j.

    Args:
        p_k: Degree-k form in n variables with X_1 intertwined with X_1..X_r only
        M: Witness M in Z^r
        rl: Integer R/L
        u: Upper limits, one per trailing coordinate
        y: (y_1, y_{r+1}, ..., y_n) as RationalAngles
        s: Extra real shift added to y_1

    Returns:
        Complex sum; the exact-phase case is a histogram over the root table
    """
    return sum_terms(p_k, M, rl, u, y, s).total()


@dataclass
class SumDecomposition:
    s_value: complex
    main_term: complex
    t_value: complex
    full_periods: List[int]
    error: float
    magnitude_error: float
    budget: float
    V: float
    N: int

    @property
    def VN(self) -> float:
        return self.V * self.N

    @property
    def within_budget(self) -> bool:
        return self.error <= self.budget

    def to_dict(self) -> Dict:
        return {
            's_abs': abs(self.s_value),
            'main_abs': abs(self.main_term),
            't_abs': abs(self.t_value),
            'full_periods': self.full_periods,
            'error': self.error,
            'magnitude_error': self.magnitude_error,
            'budget': self.budget,
            'VN': self.VN,
        }


def error_budget(k: int, m: int, q: int, counts: Sequence[int], V: float,
                 scale: Optional[float] = None) -> float:
    """scale q^(m/2) (VN (k-1)^m F + F/F_min (log q)^m C) with F = prod floor(N_i/q)."""
    floors = [n // q for n in counts]
    if min(floors) == 0:
        return float(np.prod([float(n) for n in counts]))
    scale = float(2 ** m) if scale is None else float(scale)
    F = float(np.prod([float(f) for f in floors]))
    N = max(counts)
    incomplete = F / min(floors) * math.log(q) ** m * incomplete_constant(k, m, q, m)
    return scale * q ** (m / 2.0) * (V * N * (k - 1) ** m * F + incomplete)


def decompose_sum(p_k: Form, M: Sequence[int], rl, u: Sequence[float],
                  y: Sequence[RationalAngle], s: float, q: int, a: int, b: Sequence[int],
                  V: float, config: Optional[Dict] = None) -> SumDecomposition:
    """
    Split S into prod floor(N_i/q) T(a, b; q) and a remainder.

    Requires y_1 + s = 2 pi a/q exactly, |y_j - 2 pi b_j/q| <= V and VN <= 1. The main
    term is rotated by the phase of the box corner so that the measured error is the
    aligned one.

    Returns:
        SumDecomposition
    """
    rl = _as_integer(rl, 'R/L')
    m = p_k.n - len(M)
    if len(b) != m:
        raise VariableCountMismatch(f'b has {len(b)} entries, expected {m}')
    y1 = y[0]
    if y1.turns % 1 != Fraction(a, q) % 1 or y1.perturbation + s != 0.0:
        raise HypothesisViolation('y_1 + s must equal 2 pi a/q exactly')
    offsets = [angle.offset_from(bj, q) for angle, bj in zip(y[1:], b)]
    if any(abs(o) > V for o in offsets):
        raise HypothesisViolation(f'linear frequencies are farther than V={V} from 2 pi b/q')
    counts = [max(math.ceil(uj) - rl, 0) for uj in u]
    N = max(counts) if counts else 0
    if V * N > 1:
        raise HypothesisViolation(f'VN = {V * N:.4f} exceeds 1')

    terms = sum_terms(p_k, M, rl, u, y, s)
    s_value = terms.total()
    tail = specialized_tail(p_k, M, rl)
    t_value = complete_sum(tail.reduce_mod(q), a, b)
    periods = [n // q for n in counts]
    corner = sum(o * rl for o in offsets)
    main = float(np.prod([float(f) for f in periods])) * t_value * complex(math.cos(corner), math.sin(corner))
    scale = section(config, 'expsum').get('error_scale')
    budget = error_budget(p_k.total_degree(), m, q, counts, V, scale)
    result = SumDecomposition(
        s_value=s_value,
        main_term=main,
        t_value=t_value,
        full_periods=periods,
        error=abs(s_value - main),
        magnitude_error=abs(abs(s_value) - abs(main)),
        budget=budget,
        V=V,
        N=N,
    )
    if not result.within_budget:
        logger.warning('measured error %.4g exceeds budget %.4g', result.error, result.budget)
    return result
