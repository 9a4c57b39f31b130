"""
Exact polynomial and matrix arithmetic over Q and F_q.
"""

from .fields import (
    FieldElem,
    QuadraticExtElem,
    is_prime,
    primes_between,
    primes_up_to,
    quadratic_non_residue,
)
from .matrix import RationalMatrix, primitive_integer_vector
from .monomials import ExponentVec, grevlex_key, grlex_key, monomials_of_degree
from .polynomial import (
    FieldPoly,
    Form,
    Polynomial,
    change_variables,
    evaluate,
    evaluate_mod,
    reduce_mod,
)

__all__ = [
    'FieldElem',
    'QuadraticExtElem',
    'is_prime',
    'primes_between',
    'primes_up_to',
    'quadratic_non_residue',
    'RationalMatrix',
    'primitive_integer_vector',
    'ExponentVec',
    'grevlex_key',
    'grlex_key',
    'monomials_of_degree',
    'FieldPoly',
    'Form',
    'Polynomial',
    'change_variables',
    'evaluate',
    'evaluate_mod',
    'reduce_mod',
]
