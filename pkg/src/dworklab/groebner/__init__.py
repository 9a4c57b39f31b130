"""
Groebner bases and the projective Nullstellensatz test.
"""

from .buchberger import CoefficientField, buchberger, interreduce, minimalize, select, spoly, update
from .ideal import GroebnerBasis, Ideal, buchberger_basis, groebner_basis, normal_form
from .nullstellensatz import (
    find_projective_zero,
    is_irrelevant,
    projective_points,
    singular_locus_generators,
)

__all__ = [
    'CoefficientField',
    'buchberger',
    'interreduce',
    'minimalize',
    'select',
    'spoly',
    'update',
    'GroebnerBasis',
    'Ideal',
    'buchberger_basis',
    'groebner_basis',
    'normal_form',
    'find_projective_zero',
    'is_irrelevant',
    'projective_points',
    'singular_locus_generators',
]
