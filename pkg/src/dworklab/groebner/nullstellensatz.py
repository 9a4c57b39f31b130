"""
Projective emptiness of zero sets: the Groebner criterion and a point-search oracle.
"""

import itertools
import logging
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from ..algebra import FieldPoly, Form, Polynomial, QuadraticExtElem
from ..errors import NotHomogeneous
from .ideal import Ideal

logger = logging.getLogger(__name__)


def is_irrelevant(ideal: Ideal) -> bool:
    """
    True iff Z(I) is empty in projective space over the algebraic closure.

    Equivalent to every variable of the ideal having a pure power among the leading
    monomials of the reduced grevlex basis (or I being the unit ideal).
    """
    if not ideal.is_homogeneous():
        raise NotHomogeneous('the projective Nullstellensatz test needs homogeneous generators')
    basis = ideal.groebner_basis()
    if basis.is_unit():
        return True
    present = set(basis.pure_power_variables())
    return all(v in present for v in ideal.variables)


def projective_points(variables: Sequence[int], n: int, q: int,
                      extension: int = 1) -> Iterator[tuple]:
    """
    Representatives of P^{|variables|-1}(F_{q^e}) embedded in n coordinates.

    Each representative has its first nonzero coordinate equal to 1; coordinates outside
    `variables` are 0. Entries are ints for e = 1 and QuadraticExtElem for e = 2.
    """
    if extension == 1:
        elements = list(range(q))
        one, zero = 1, 0
    elif extension == 2:
        elements = [QuadraticExtElem(x, y, q) for x in range(q) for y in range(q)]
        one, zero = QuadraticExtElem(1, 0, q), QuadraticExtElem(0, 0, q)
    else:
        raise ValueError('only F_q and F_{q^2} are enumerated')
    m = len(variables)
    positions = [v - 1 for v in variables]
    for lead in range(m):
        for tail in itertools.product(elements, repeat=m - lead - 1):
            point = [zero] * n
            point[positions[lead]] = one
            for offset, value in enumerate(tail):
                point[positions[lead + 1 + offset]] = value
            yield tuple(point)


def _evaluate_raw(terms: dict, point: tuple, q: Optional[int]):
    total = 0
    for e, c in terms.items():
        term = c
        for v, x in zip(point, e):
            if x:
                term = term * v ** x
        total = total + term
    if q is not None and isinstance(total, int):
        total %= q
    return total


def find_projective_zero(polys: Sequence[Polynomial], variables: Optional[Sequence[int]] = None,
                         extension: int = 1, height: int = 2) -> Optional[tuple]:
    """
    Exhaustive search for a common projective zero.

    Over F_q the whole of P(F_q) (extension=1) or P(F_{q^2}) (extension=2) is scanned; over
    Q, primitive integer points with entries in [-height, height]. A returned point is a
    genuine common zero, so a hit proves Z != empty; a miss proves nothing.
    """
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return None
    n = polys[0].n
    variables = list(variables) if variables else list(range(1, n + 1))
    if isinstance(polys[0], FieldPoly):
        q = polys[0].q
        raw = [p.integer_terms() for p in polys]
        for point in projective_points(variables, n, q, extension):
            if all(not _evaluate_raw(t, point, q) for t in raw):
                return point
        return None
    raw = [dict(p.terms) for p in polys]
    values = range(-height, height + 1)
    positions = [v - 1 for v in variables]
    for combo in itertools.product(values, repeat=len(variables)):
        nonzero = [x for x in combo if x]
        if not nonzero or nonzero[0] < 0:
            continue
        point = [0] * n
        for pos, x in zip(positions, combo):
            point[pos] = Fraction(x)
        if all(_evaluate_raw(t, tuple(point), None) == 0 for t in raw):
            return tuple(point)
    return None


def singular_locus_generators(h: Polynomial, variables: Sequence[int]) -> List[Polynomial]:
    """(H, dH/dX_i for i in variables): common zeros are the singular points of H = 0."""
    return [h] + [h.partial_derivative(i) for i in variables]
