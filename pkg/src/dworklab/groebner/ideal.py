"""
Ideals of Form / FieldPoly generators and their reduced Groebner bases.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from ..algebra import FieldPoly, Form, Polynomial
from ..algebra.monomials import pure_power_variable
from ..errors import ModulusMismatch, VariableCountMismatch, ZeroPolynomialError
from .buchberger import CoefficientField, buchberger, leading_monomial, reduce

logger = logging.getLogger(__name__)


def _field_of(poly: Polynomial) -> Optional[int]:
    return poly.q if isinstance(poly, FieldPoly) else None


def _to_raw(poly: Polynomial) -> dict:
    if isinstance(poly, FieldPoly):
        return poly.integer_terms()
    return dict(poly.terms)


def _from_raw(raw: dict, n: int, q: Optional[int]) -> Polynomial:
    if q is None:
        return Form(n, raw)
    return FieldPoly(n, q, raw)


class Ideal:
    """
    Ideal generated by polynomials over a common field.

    Args:
        generators: Forms, or FieldPolys over one prime
        variables: 1-based variables the ideal lives in (default: all n)
    """

    def __init__(self, generators: Sequence[Polynomial], variables: Optional[Sequence[int]] = None):
        gens = [g for g in generators if not g.is_zero()]
        if not generators:
            raise ZeroPolynomialError('an ideal needs at least one generator')
        n = generators[0].n
        kinds = {(type(g), _field_of(g)) for g in generators}
        if len(kinds) > 1:
            raise ModulusMismatch(f'generators over different fields: {sorted(str(k) for k in kinds)}')
        if any(g.n != n for g in generators):
            raise VariableCountMismatch('generators have different variable counts')
        self.n = n
        self.q = _field_of(generators[0])
        self.generators: List[Polynomial] = gens
        self.variables: Tuple[int, ...] = tuple(variables) if variables else tuple(range(1, n + 1))
        self._basis: Optional['GroebnerBasis'] = None

    @property
    def field_tag(self) -> str:
        return 'QQ' if self.q is None else f'GF({self.q})'

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def groebner_basis(self) -> 'GroebnerBasis':
        if self._basis is None:
            self._basis = groebner_basis(self)
        return self._basis

    def __repr__(self):
        return f'Ideal({len(self.generators)} generators over {self.field_tag})'


@dataclass
class GroebnerBasis:
    """Reduced grevlex Groebner basis."""
    n: int
    q: Optional[int]
    polys: List[Polynomial]
    order: str = 'grevlex'
    leading_monomials: List[tuple] = field(default_factory=list)

    def is_unit(self) -> bool:
        return any(sum(lm) == 0 for lm in self.leading_monomials)

    def pure_power_variables(self) -> List[int]:
        """1-based variables x_i with some x_i^d among the leading monomials."""
        found = set()
        for lm in self.leading_monomials:
            i = pure_power_variable(lm)
            if i is not None:
                found.add(i + 1)
        return sorted(found)

    def _raw(self) -> List[dict]:
        return [_to_raw(p) for p in self.polys]

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.n != self.n or _field_of(f) != self.q:
            raise ModulusMismatch('polynomial and basis live in different rings')
        if f.is_zero() or not self.polys:
            return f
        raw = reduce(_to_raw(f), self._raw(), CoefficientField(self.q), self.leading_monomials)
        return _from_raw(raw, self.n, self.q)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()


def groebner_basis(ideal: Ideal) -> GroebnerBasis:
    """Run Buchberger on the ideal's generators."""
    cf = CoefficientField(ideal.q)
    raw = buchberger([_to_raw(g) for g in ideal.generators], cf) if ideal.generators else []
    polys = [_from_raw(g, ideal.n, ideal.q) for g in raw]
    lms = [leading_monomial(g) for g in raw]
    logger.debug('groebner basis over %s: %d elements', ideal.field_tag, len(polys))
    return GroebnerBasis(n=ideal.n, q=ideal.q, polys=polys, leading_monomials=lms)


def buchberger_basis(ideal: Ideal) -> GroebnerBasis:
    return ideal.groebner_basis()


def normal_form(f: Polynomial, basis: GroebnerBasis) -> Polynomial:
    return basis.normal_form(f)
