"""
Complete exponential sums T(a, b; q) over F_q^m.

T(a, b; q) = sum_{x in F_q^m} exp(2 pi i (a Q(x) + b.x) / q)
"""

import hashlib
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from ..algebra import FieldElem, FieldPoly
from ..config import section
from ..errors import MemoryCapExceeded, ModulusMismatch, VariableCountMismatch

logger = logging.getLogger(__name__)

EPS = np.finfo(float).eps


@lru_cache(maxsize=64)
def root_table(q: int) -> np.ndarray:
    """exp(2 pi i j / q) for j = 0..q-1, with angles reduced to [-pi, pi]."""
    j = np.arange(q)
    centered = np.where(2 * j > q, j - q, j).astype(float)
    angle = 2.0 * np.pi * centered / q
    table = np.cos(angle) + 1j * np.sin(angle)
    table[0] = 1.0
    table.setflags(write=False)
    return table


def phase_histogram_sum(counts: np.ndarray, q: int) -> complex:
    """sum_j counts[j] * exp(2 pi i j / q)."""
    roots = root_table(q)
    return complex(np.dot(counts.astype(float), roots))


def grid_points(m: int, q: int) -> np.ndarray:
    """All x in F_q^m as an (m, q^m) int64 array, row-major in (x_1, ..., x_m)."""
    return np.indices((q,) * m, dtype=np.int64).reshape(m, -1)


def evaluate_on_grid(poly: FieldPoly, points: np.ndarray) -> np.ndarray:
    """Residues poly(x) mod q for the columns x of `points`."""
    q = poly.q
    values = np.zeros(points.shape[1], dtype=np.int64)
    power_cache: Dict[Tuple[int, int], np.ndarray] = {}
    for exps, coeff in poly.integer_terms().items():
        term = np.full(points.shape[1], coeff, dtype=np.int64)
        for i, e in enumerate(exps):
            if e:
                key = (i, e)
                if key not in power_cache:
                    base = np.array([pow(x, e, q) for x in range(q)], dtype=np.int64)
                    power_cache[key] = base[points[i]]
                term = term * power_cache[key] % q
        values = (values + term) % q
    return values


def weil_deligne_bound(k: int, m: int, q: int) -> float:
    """(k - 1)^m q^(m/2)."""
    return float((k - 1) ** m) * q ** (m / 2.0)


def k2_threshold(k: int, m: int) -> int:
    """Least q with (1/4)(k - 1)^(-2m) q^(m + 1) >= 2."""
    target = 8 * (k - 1) ** (2 * m)
    q = 1
    while q ** (m + 1) < target:
        q += 1
    return q


def _check_point(poly: FieldPoly, a, b) -> Tuple[int, Tuple[int, ...]]:
    if len(b) != poly.n:
        raise VariableCountMismatch(f'b has {len(b)} entries, expected {poly.n}')
    values = []
    for v in (a,) + tuple(b):
        if isinstance(v, FieldElem):
            if v.modulus != poly.q:
                raise ModulusMismatch(f'F_{v.modulus} element used with F_{poly.q} polynomial')
            values.append(v.residue)
        else:
            values.append(int(v) % poly.q)
    return values[0], tuple(values[1:])


def complete_sum(poly: FieldPoly, a, b: Sequence) -> complex:
    """
    T(a, b; q) by exact integer phases and a root-of-unity lookup.

    Args:
        poly: Q over F_q in m variables
        a: FieldElem or int
        b: m FieldElems or ints

    Returns:
        Complex value of the sum
    """
    a, b = _check_point(poly, a, b)
    q, m = poly.q, poly.n
    points = grid_points(m, q)
    phase = a * evaluate_on_grid(poly, points)
    for i, bi in enumerate(b):
        if bi:
            phase = phase + bi * points[i]
    counts = np.bincount(phase % q, minlength=q)
    return phase_histogram_sum(counts, q)


def poly_hash(poly: FieldPoly) -> bytes:
    """32-byte SHA-256 of the canonical text and modulus."""
    from ..parsers import print_form
    text = f'{poly.n}|{poly.q}|{print_form(poly)}'
    return hashlib.sha256(text.encode('utf-8')).digest()


@dataclass
class SumTable:
    """Dense table of T(a, b; q) over (a, b_1, ..., b_m), row-major."""
    q: int
    m: int
    k: int
    poly: FieldPoly
    values: np.ndarray
    poly_digest: bytes = field(default=b'', repr=False)

    def __post_init__(self):
        if not self.poly_digest:
            self.poly_digest = poly_hash(self.poly)

    @property
    def tolerance(self) -> float:
        """Accumulation error budget per entry: 10 q^m eps."""
        return 10.0 * self.q ** self.m * EPS

    def value(self, a: int, b: Sequence[int]) -> complex:
        return complex(self.values[(a % self.q,) + tuple(x % self.q for x in b)])

    def magnitudes(self) -> np.ndarray:
        return np.abs(self.values)

    def parseval_sum(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))

    def check_parseval(self, rtol: float = 1e-6) -> bool:
        """sum |T|^2 = q^(2m + 1)."""
        expected = float(self.q) ** (2 * self.m + 1)
        return abs(self.parseval_sum() - expected) <= rtol * expected

    def check_conjugate_symmetry(self, atol: float = 1e-9) -> bool:
        """T(q - a, q - b) = conj T(a, b)."""
        flipped = self.values
        for axis in range(self.m + 1):
            flipped = np.roll(np.flip(flipped, axis=axis), 1, axis=axis)
        return bool(np.max(np.abs(flipped - np.conj(self.values))) <= atol)

    def max_nonzero_frequency(self) -> float:
        """max |T(a, b)| over a != 0."""
        return float(np.max(np.abs(self.values[1:]))) if self.q > 1 else 0.0

    def satisfies_weil_deligne(self, rtol: float = 1e-9) -> bool:
        return self.max_nonzero_frequency() <= weil_deligne_bound(self.k, self.m, self.q) * (1 + rtol)


def _dft_matrix(q: int) -> np.ndarray:
    roots = root_table(q)
    idx = np.arange(q)
    return roots[np.outer(idx, idx) % q]


def scan_all_pairs(poly: FieldPoly, config: Optional[Dict] = None,
                   k: Optional[int] = None) -> SumTable:
    """
    All T(a, b; q) as the (m + 1)-dimensional DFT over Z_q of N(u, x) = 1{Q(x) = u}.

    Args:
        poly: Q over F_q in m variables
        config: Optional configuration ('expsum.memory_cap_bytes')
        k: Degree recorded in the table (total degree of poly if omitted)

    Returns:
        SumTable
    """
    q, m = poly.q, poly.n
    cap = int(section(config, 'expsum').get('memory_cap_bytes', 2 ** 28))
    needed = 16 * q ** (m + 1)
    if needed > cap:
        raise MemoryCapExceeded(f'table needs {needed} bytes, cap is {cap}')
    points = grid_points(m, q)
    values = evaluate_on_grid(poly, points)
    hist = np.zeros((q,) * (m + 1), dtype=np.complex128)
    hist[(values,) + tuple(points)] = 1.0
    w = _dft_matrix(q)
    table = hist
    for axis in range(m + 1):
        table = np.moveaxis(np.tensordot(w, table, axes=([1], [axis])), 0, axis)
    degree = k if k is not None else max(poly.total_degree(), 1)
    logger.debug('scanned %d sums over F_%d^%d', q ** (m + 1), q, m)
    return SumTable(q=q, m=m, k=degree, poly=poly, values=table)


def naive_table(poly: FieldPoly, k: Optional[int] = None) -> SumTable:
    """Entry-by-entry complete_sum; O(q^(2m+1)) reference for the DFT scan."""
    q, m = poly.q, poly.n
    values = np.zeros((q,) * (m + 1), dtype=np.complex128)
    for index in np.ndindex(*values.shape):
        values[index] = complete_sum(poly, index[0], index[1:])
    degree = k if k is not None else max(poly.total_degree(), 1)
    return SumTable(q=q, m=m, k=degree, poly=poly, values=values)
