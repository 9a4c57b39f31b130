"""
Dense matrices over Q with exact Gaussian elimination.
"""

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple, Union

from ..errors import SingularMatrixError, VariableCountMismatch

Number = Union[int, Fraction]


class RationalMatrix:
    """Immutable rows x cols matrix of Fractions."""

    __slots__ = ('rows', 'cols', '_entries')

    def __init__(self, entries: Sequence[Sequence[Number]]):
        rows = [tuple(Fraction(x) for x in row) for row in entries]
        if not rows or not rows[0]:
            raise ValueError('matrix must have at least one row and column')
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError('matrix rows have different lengths')
        self.rows = len(rows)
        self.cols = width
        self._entries = tuple(rows)

    @classmethod
    def identity(cls, n: int) -> 'RationalMatrix':
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> 'RationalMatrix':
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def permutation(cls, images: Sequence[int]) -> 'RationalMatrix':
        """
        Matrix P with (P eta)_i = eta_{images[i]}, images 1-based.

        Composing a form with P relabels X_i as X_{images[i]}.
        """
        n = len(images)
        return cls([[1 if images[i] - 1 == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_flat(cls, n: int, values: Sequence[Number]) -> 'RationalMatrix':
        return cls([list(values[i * n:(i + 1) * n]) for i in range(n)])

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self._entries[i][j]

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self._entries[i]

    def to_lists(self) -> List[List[Fraction]]:
        return [list(r) for r in self._entries]

    def flat(self) -> List[Fraction]:
        return [x for r in self._entries for x in r]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self):
        return hash(self._entries)

    def __repr__(self):
        body = ', '.join('[' + ', '.join(str(x) for x in r) + ']' for r in self._entries)
        return f'RationalMatrix([{body}])'

    def transpose(self) -> 'RationalMatrix':
        return RationalMatrix([[self._entries[i][j] for i in range(self.rows)]
                               for j in range(self.cols)])

    def __add__(self, other: 'RationalMatrix') -> 'RationalMatrix':
        self._check_shape(other)
        return RationalMatrix([[a + b for a, b in zip(r, s)]
                               for r, s in zip(self._entries, other._entries)])

    def __sub__(self, other: 'RationalMatrix') -> 'RationalMatrix':
        self._check_shape(other)
        return RationalMatrix([[a - b for a, b in zip(r, s)]
                               for r, s in zip(self._entries, other._entries)])

    def scale(self, c: Number) -> 'RationalMatrix':
        c = Fraction(c)
        return RationalMatrix([[c * x for x in r] for r in self._entries])

    def __matmul__(self, other: 'RationalMatrix') -> 'RationalMatrix':
        if self.cols != other.rows:
            raise VariableCountMismatch(
                f'cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}'
            )
        cols = list(zip(*other._entries))
        return RationalMatrix([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols]
                               for r in self._entries])

    def _check_shape(self, other: 'RationalMatrix') -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise VariableCountMismatch('matrix shapes differ')

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._entries for x in r)

    def rref(self) -> Tuple['RationalMatrix', List[int]]:
        """Reduced row echelon form and its pivot columns."""
        m = [list(r) for r in self._entries]
        pivots: List[int] = []
        row = 0
        for col in range(self.cols):
            pivot = next((i for i in range(row, self.rows) if m[i][col] != 0), None)
            if pivot is None:
                continue
            m[row], m[pivot] = m[pivot], m[row]
            inv = 1 / m[row][col]
            m[row] = [x * inv for x in m[row]]
            for i in range(self.rows):
                if i != row and m[i][col] != 0:
                    factor = m[i][col]
                    m[i] = [a - factor * b for a, b in zip(m[i], m[row])]
            pivots.append(col)
            row += 1
            if row == self.rows:
                break
        return RationalMatrix(m), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> List[List[Fraction]]:
        """
        Basis of {v : A v = 0} in reduced echelon parameterization.

        One vector per free column, with that free variable set to 1 and the other free
        variables set to 0.
        """
        reduced, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for r, p in enumerate(pivots):
                v[p] = -reduced[r, f]
            basis.append(v)
        return basis

    def determinant(self) -> Fraction:
        if self.rows != self.cols:
            raise VariableCountMismatch('determinant of a non-square matrix')
        m = [list(r) for r in self._entries]
        n = self.rows
        det = Fraction(1)
        for col in range(n):
            pivot = next((i for i in range(col, n) if m[i][col] != 0), None)
            if pivot is None:
                return Fraction(0)
            if pivot != col:
                m[col], m[pivot] = m[pivot], m[col]
                det = -det
            det *= m[col][col]
            for i in range(col + 1, n):
                if m[i][col] != 0:
                    factor = m[i][col] / m[col][col]
                    m[i] = [a - factor * b for a, b in zip(m[i], m[col])]
        return det

    def inverse(self) -> 'RationalMatrix':
        if self.rows != self.cols:
            raise VariableCountMismatch('inverse of a non-square matrix')
        n = self.rows
        augmented = RationalMatrix([
            list(r) + [1 if i == j else 0 for j in range(n)]
            for i, r in enumerate(self._entries)
        ])
        reduced, pivots = augmented.rref()
        if pivots[:n] != list(range(n)):
            raise SingularMatrixError('matrix is not invertible')
        return RationalMatrix([reduced.row(i)[n:] for i in range(n)])


def primitive_integer_vector(v: Sequence[Fraction]) -> List[Fraction]:
    """
    Scale v to coprime integers, with the last nonzero entry positive.
    """
    nonzero = [x for x in v if x != 0]
    if not nonzero:
        return [Fraction(0)] * len(v)
    lcm = 1
    for x in nonzero:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    sign = 1 if nonzero[-1] > 0 else -1
    return [Fraction(sign * x, g) for x in ints]
