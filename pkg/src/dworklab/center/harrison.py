"""
Harrison center Z(F) = {A : A^T H_F = H_F A} of a form.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from ..algebra import Form, RationalMatrix, monomials_of_degree, primitive_integer_vector
from ..errors import NotHomogeneous, ParameterRangeError

logger = logging.getLogger(__name__)


@dataclass
class CenterBasis:
    """Basis of the Harrison center as rational n x n matrices."""
    n: int
    basis: List[RationalMatrix] = field(default_factory=list)
    needs_review: bool = False

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def contains(self, a: RationalMatrix) -> bool:
        """a lies in the rational span of the basis."""
        rows = [m.flat() for m in self.basis]
        return RationalMatrix(rows + [a.flat()]).rank() == RationalMatrix(rows).rank()

    def combination(self, coefficients) -> RationalMatrix:
        total = RationalMatrix.zeros(self.n, self.n)
        for c, m in zip(coefficients, self.basis):
            total = total + m.scale(c)
        return total

    def to_dict(self) -> Dict:
        return {
            'center_dimension': self.dimension,
            'basis': [m.to_lists() for m in self.basis],
            'needs_review': self.needs_review,
        }


def _check_form(f: Form) -> int:
    if f.is_zero() or not f.is_homogeneous():
        raise NotHomogeneous('the Harrison center is defined for nonzero forms')
    k = f.total_degree()
    if k < 3:
        raise ParameterRangeError(f'Harrison\'s criterion requires degree >= 3, got {k}')
    return k


def commutator_matrix(f: Form, a: RationalMatrix, hessian=None) -> List[List[Form]]:
    """B_A = A^T H - H A as a matrix of Forms."""
    h = hessian or f.hessian()
    n = f.n
    result = []
    for i in range(n):
        row = []
        for j in range(n):
            entry = Form.zero(n)
            for l in range(n):
                if a[l, i]:
                    entry = entry + h[l][j].scale(a[l, i])
                if a[l, j]:
                    entry = entry - h[i][l].scale(a[l, j])
            row.append(entry)
        result.append(row)
    return result


def verify_center_element(f: Form, a: RationalMatrix, hessian=None) -> bool:
    """Re-check A^T H = H A term by term; B_A is asserted skew-symmetric."""
    b = commutator_matrix(f, a, hessian)
    n = f.n
    for i in range(n):
        for j in range(n):
            assert b[i][j] == -b[j][i], 'B_A must be skew-symmetric for symmetric H'
    return all(b[i][j].is_zero() for i in range(n) for j in range(i + 1, n))


def compute_center(f: Form) -> CenterBasis:
    """
    Solve the linear system in the n^2 unknowns a_ij obtained from the entries i < j of
    B_A, one equation per monomial.

    Returns:
        CenterBasis with primitive integer basis matrices
    """
    k = _check_form(f)
    n = f.n
    h = f.hessian()
    equations: Dict[tuple, List[Fraction]] = {}

    def add(monomial, unknown, value):
        row = equations.setdefault(monomial, [Fraction(0)] * (n * n))
        row[unknown] += value

    for i in range(n):
        for j in range(i + 1, n):
            for l in range(n):
                # + a_li H_lj
                for e, c in h[l][j].terms.items():
                    add((i, j, e), l * n + i, c)
                # - H_il a_lj
                for e, c in h[i][l].terms.items():
                    add((i, j, e), l * n + j, -c)
    rows = [r for r in equations.values() if any(r)]
    if rows:
        vectors = RationalMatrix(rows).nullspace()
    else:
        vectors = [[Fraction(1 if u == v else 0) for u in range(n * n)] for v in range(n * n)]
    basis = [RationalMatrix.from_flat(n, primitive_integer_vector(v)) for v in vectors]
    for a in basis:
        if not verify_center_element(f, a, h):
            raise AssertionError(f'center basis element {a} fails A^T H = H A')
    center = CenterBasis(n=n, basis=basis, needs_review=(k == 3 and n >= 3))
    if not center.contains(RationalMatrix.identity(n)):
        raise AssertionError('identity matrix missing from the computed center')
    if center.needs_review:
        logger.warning('degree-3 center in %d variables: flagged for manual review', n)
    logger.info('center of %r has dimension %d', f, center.dimension)
    return center


def is_nondegenerate(f: Form) -> bool:
    """
    No nonzero v with sum_i v_i dF/dX_i = 0, i.e. the partials are linearly independent.
    """
    k = f.total_degree()
    if k < 1:
        return False
    monomials = list(monomials_of_degree(f.n, k - 1))
    rows = [[d.coefficient(m) for m in monomials] for d in f.gradient()]
    return RationalMatrix(rows).rank() == f.n
