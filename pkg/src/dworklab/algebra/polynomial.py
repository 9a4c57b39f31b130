"""
Exact multivariate polynomials over Q (Form) and over F_q (FieldPoly).
"""

from fractions import Fraction
from math import gcd
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Union

from ..errors import (
    DenominatorDivisibleByQ,
    ModulusMismatch,
    SingularMatrixError,
    VariableCountMismatch,
    VariableIndexError,
    ZeroPolynomialError,
)
from .fields import FieldElem, check_prime
from .monomials import ExponentVec, grlex_key, mono_mul, unit_vector

Scalar = Union[int, Fraction, FieldElem]


class Polynomial:
    """
    Immutable sparse polynomial in n variables.

    Terms are kept in descending graded-lex order of their exponent vectors and never
    store zero coefficients. Variable indices in the public API are 1-based.
    """

    __slots__ = ('n', '_terms', '_hash')

    def __init__(self, n: int, terms: Optional[Mapping[ExponentVec, Scalar]] = None):
        if n < 1:
            raise VariableCountMismatch(f'variable count must be >= 1, got {n}')
        clean: Dict[ExponentVec, object] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(x) for x in exps)
            if len(exps) != n:
                raise VariableCountMismatch(
                    f'exponent vector {exps} has length {len(exps)}, expected {n}'
                )
            if any(x < 0 for x in exps):
                raise ValueError(f'negative exponent in {exps}')
            c = self._coerce(coeff)
            if c:
                clean[exps] = clean[exps] + c if exps in clean else c
        self.n = n
        self._terms = {
            e: clean[e] for e in sorted(clean, key=grlex_key, reverse=True) if clean[e]
        }
        self._hash = None

    # Coefficient domain hooks

    def _coerce(self, c: Scalar):
        raise NotImplementedError

    def _new(self, terms: Mapping[ExponentVec, Scalar]) -> 'Polynomial':
        raise NotImplementedError

    def _check_compatible(self, other: 'Polynomial') -> None:
        if type(other) is not type(self):
            raise TypeError(f'cannot combine {type(self).__name__} and {type(other).__name__}')
        if other.n != self.n:
            raise VariableCountMismatch(
                f'variable counts differ: {self.n} vs {other.n}'
            )

    @property
    def zero_coeff(self):
        return self._coerce(0)

    @property
    def one_coeff(self):
        return self._coerce(1)

    # Basic access

    @property
    def terms(self) -> Mapping[ExponentVec, object]:
        return MappingProxyType(self._terms)

    def coefficient(self, exps: Sequence[int]):
        return self._terms.get(tuple(exps), self.zero_coeff)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def total_degree(self) -> int:
        """Maximal total degree over the terms; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    degree = total_degree

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def variables_used(self) -> List[int]:
        used = set()
        for e in self._terms:
            used.update(i + 1 for i, x in enumerate(e) if x)
        return sorted(used)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self._terms)

    def constant_term(self):
        return self._terms.get((0,) * self.n, self.zero_coeff)

    # Ring operations

    def __add__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            other = self._new({(0,) * self.n: other})
        self._check_compatible(other)
        result = dict(self._terms)
        for e, c in other._terms.items():
            result[e] = result[e] + c if e in result else c
        return self._new(result)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            other = self._new({(0,) * self.n: other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            return self.scale(other)
        self._check_compatible(other)
        result: Dict[ExponentVec, object] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = mono_mul(e1, e2)
                c = c1 * c2
                result[e] = result[e] + c if e in result else c
        return self._new(result)

    def __rmul__(self, other):
        return self.__mul__(other)

    def scale(self, c: Scalar) -> 'Polynomial':
        c = self._coerce(c)
        return self._new({e: coeff * c for e, coeff in self._terms.items()})

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError('negative powers are not polynomials')
        result = self._new({(0,) * self.n: 1})
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
                return self == self._new({(0,) * self.n: other})
            return NotImplemented
        if type(other) is not type(self) or other.n != self.n:
            return False
        return self._same_domain(other) and self._terms == other._terms

    def _same_domain(self, other: 'Polynomial') -> bool:
        return True

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.n, tuple(self._terms.items())))
        return self._hash

    # Calculus and structure

    def _check_index(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise VariableIndexError(f'variable index {i} outside 1..{self.n}')
        return i - 1

    def partial_derivative(self, i: int) -> 'Polynomial':
        """Formal derivative with respect to X_i (1-based)."""
        j = self._check_index(i)
        result = {}
        for e, c in self._terms.items():
            if e[j]:
                lowered = e[:j] + (e[j] - 1,) + e[j + 1:]
                result[lowered] = c * e[j]
        return self._new(result)

    def gradient(self) -> List['Polynomial']:
        return [self.partial_derivative(i) for i in range(1, self.n + 1)]

    def hessian(self) -> List[List['Polynomial']]:
        """n x n matrix of second partials."""
        grad = self.gradient()
        return [[grad[i].partial_derivative(j + 1) for j in range(self.n)]
                for i in range(self.n)]

    def homogeneous_part(self, d: int) -> 'Polynomial':
        return self._new({e: c for e, c in self._terms.items() if sum(e) == d})

    def leading_form(self) -> 'Polynomial':
        """Homogeneous part of highest degree."""
        if self.is_zero():
            raise ZeroPolynomialError('the zero polynomial has no leading form')
        return self.homogeneous_part(self.total_degree())

    def specialize(self, assignments: Mapping[int, Scalar]) -> 'Polynomial':
        """
        Substitute values for some variables.

        Args:
            assignments: 1-based variable index -> value

        Returns:
            Polynomial in the same ambient n with the assigned variables eliminated
        """
        fixed = {self._check_index(i): self._coerce(v) for i, v in assignments.items()}
        if not fixed:
            return self
        result: Dict[ExponentVec, object] = {}
        for e, c in self._terms.items():
            for j, value in fixed.items():
                if e[j]:
                    c = c * value ** e[j]
            if not c:
                continue
            reduced = tuple(0 if j in fixed else x for j, x in enumerate(e))
            result[reduced] = result[reduced] + c if reduced in result else c
        return self._new(result)

    def restrict(self, subset: Iterable[int]) -> 'Polynomial':
        """H_S: set every variable outside the 1-based subset S to zero."""
        keep = {self._check_index(i) for i in subset}
        return self._new({
            e: c for e, c in self._terms.items()
            if all(x == 0 or j in keep for j, x in enumerate(e))
        })

    def evaluate(self, point: Sequence[Scalar]):
        if len(point) != self.n:
            raise VariableCountMismatch(
                f'point has {len(point)} coordinates, expected {self.n}'
            )
        values = [self._coerce(v) for v in point]
        total = self.zero_coeff
        for e, c in self._terms.items():
            term = c
            for v, x in zip(values, e):
                if x:
                    term = term * v ** x
            total = total + term
        return total

    def permute(self, permutation: Sequence[int]) -> 'Polynomial':
        """
        Relabel variables: X_i of the result is X_{permutation[i-1]} of self.

        Args:
            permutation: 1-based images, a rearrangement of 1..n
        """
        if sorted(permutation) != list(range(1, self.n + 1)):
            raise ValueError(f'{list(permutation)} is not a permutation of 1..{self.n}')
        result = {}
        for e, c in self._terms.items():
            result[tuple(e[p - 1] for p in permutation)] = c
        return self._new(result)

    def euler_defect(self) -> 'Polynomial':
        """k*f - sum_i X_i df/dX_i; zero for every form of degree k."""
        k = self.total_degree()
        total = self.scale(max(k, 0))
        for i in range(1, self.n + 1):
            xi = self._new({unit_vector(self.n, i - 1): 1})
            total = total - xi * self.partial_derivative(i)
        return total

    def __repr__(self):
        from ..parsers.form_printer import print_form
        return f'{type(self).__name__}({self.n}, {print_form(self)!r})'


class Form(Polynomial):
    """Polynomial with exact rational coefficients."""

    __slots__ = ()

    def _coerce(self, c: Scalar) -> Fraction:
        if isinstance(c, FieldElem):
            raise TypeError('field elements are not rationals')
        return Fraction(c)

    def _new(self, terms) -> 'Form':
        return Form(self.n, terms)

    @classmethod
    def variable(cls, n: int, i: int) -> 'Form':
        """X_i (1-based) as a Form in n variables."""
        if not 1 <= i <= n:
            raise VariableIndexError(f'variable index {i} outside 1..{n}')
        return cls(n, {unit_vector(n, i - 1): 1})

    @classmethod
    def constant(cls, n: int, c: Scalar) -> 'Form':
        return cls(n, {(0,) * n: c})

    @classmethod
    def zero(cls, n: int) -> 'Form':
        return cls(n)

    def reduce_mod(self, q: int) -> 'FieldPoly':
        """Coefficient-wise reduction to F_q."""
        check_prime(q)
        result = {}
        for e, c in self._terms.items():
            if c.denominator % q == 0:
                raise DenominatorDivisibleByQ(q, c.denominator)
            result[e] = c.numerator * pow(c.denominator, -1, q)
        return FieldPoly(self.n, q, result)

    def denominator_lcm(self) -> int:
        lcm = 1
        for c in self._terms.values():
            lcm = lcm * c.denominator // gcd(lcm, c.denominator)
        return lcm

    def clear_denominators(self) -> 'Form':
        """Smallest positive integer multiple with integer coefficients."""
        return self.scale(self.denominator_lcm())

    def content_normalized(self) -> 'Form':
        """Primitive integer multiple with positive leading (grlex) coefficient."""
        if self.is_zero():
            return self
        cleared = self.clear_denominators()
        g = 0
        for c in cleared._terms.values():
            g = gcd(g, c.numerator)
        lead = next(iter(cleared._terms.values()))
        return cleared.scale(Fraction(1 if lead > 0 else -1, g))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def change_variables(self, matrix) -> 'Form':
        """
        Compose with the linear substitution xi = A eta.

        Args:
            matrix: invertible n x n RationalMatrix A

        Returns:
            Form g with g(eta) = f(A eta)
        """
        if matrix.rows != self.n or matrix.cols != self.n:
            raise VariableCountMismatch(
                f'matrix is {matrix.rows}x{matrix.cols}, expected {self.n}x{self.n}'
            )
        if matrix.determinant() == 0:
            raise SingularMatrixError('change of variables requires an invertible matrix')
        linear = [
            Form(self.n, {unit_vector(self.n, j): matrix[i, j] for j in range(self.n)})
            for i in range(self.n)
        ]
        powers: Dict[tuple, Form] = {}

        def power(i: int, p: int) -> Form:
            if (i, p) not in powers:
                powers[(i, p)] = linear[i] ** p
            return powers[(i, p)]

        result = Form.zero(self.n)
        for e, c in self._terms.items():
            term = Form.constant(self.n, c)
            for i, p in enumerate(e):
                if p:
                    term = term * power(i, p)
            result = result + term
        return result


class FieldPoly(Polynomial):
    """Polynomial with coefficients in the prime field F_q."""

    __slots__ = ('q',)

    def __init__(self, n: int, q: int, terms: Optional[Mapping[ExponentVec, Scalar]] = None):
        self.q = check_prime(q)
        super().__init__(n, terms)

    def _coerce(self, c: Scalar) -> FieldElem:
        if isinstance(c, FieldElem):
            if c.modulus != self.q:
                raise ModulusMismatch(f'coefficient in F_{c.modulus}, expected F_{self.q}')
            return c
        if isinstance(c, Fraction):
            if c.denominator % self.q == 0:
                raise DenominatorDivisibleByQ(self.q, c.denominator)
            return FieldElem._raw(c.numerator * pow(c.denominator, -1, self.q) % self.q, self.q)
        return FieldElem._raw(int(c) % self.q, self.q)

    def _new(self, terms) -> 'FieldPoly':
        return FieldPoly(self.n, self.q, terms)

    def _check_compatible(self, other: Polynomial) -> None:
        super()._check_compatible(other)
        if other.q != self.q:
            raise ModulusMismatch(f'polynomials over F_{self.q} and F_{other.q}')

    def _same_domain(self, other: Polynomial) -> bool:
        return self.q == other.q

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(('FieldPoly', self.n, self.q, tuple(self._terms.items())))
        return self._hash

    @classmethod
    def variable(cls, n: int, q: int, i: int) -> 'FieldPoly':
        if not 1 <= i <= n:
            raise VariableIndexError(f'variable index {i} outside 1..{n}')
        return cls(n, q, {unit_vector(n, i - 1): 1})

    def integer_terms(self) -> Dict[ExponentVec, int]:
        """Terms with plain integer residues, for vectorized evaluation."""
        return {e: c.residue for e, c in self._terms.items()}

    def evaluate_mod(self, point: Sequence[FieldElem]) -> FieldElem:
        for v in point:
            if isinstance(v, FieldElem) and v.modulus != self.q:
                raise ModulusMismatch(f'point coordinate in F_{v.modulus}, expected F_{self.q}')
        return self.evaluate(point)


def evaluate(f: Form, point: Sequence[Scalar]) -> Fraction:
    return f.evaluate(point)


def evaluate_mod(f: FieldPoly, point: Sequence[FieldElem]) -> FieldElem:
    return f.evaluate_mod(point)


def reduce_mod(f: Form, q: int) -> FieldPoly:
    return f.reduce_mod(q)


def change_variables(f: Form, matrix) -> Form:
    return f.change_variables(matrix)
