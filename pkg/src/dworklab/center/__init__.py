"""
Harrison center and decomposability verdicts.
"""

from .harrison import (
    CenterBasis,
    commutator_matrix,
    compute_center,
    is_nondegenerate,
    verify_center_element,
)
from .idempotents import (
    DECOMPOSABLE,
    INCONCLUSIVE,
    INDECOMPOSABLE,
    DecomposabilityVerdict,
    decide_decomposability,
    is_nontrivial_idempotent,
)

__all__ = [
    'CenterBasis',
    'commutator_matrix',
    'compute_center',
    'is_nondegenerate',
    'verify_center_element',
    'DECOMPOSABLE',
    'INCONCLUSIVE',
    'INDECOMPOSABLE',
    'DecomposabilityVerdict',
    'decide_decomposability',
    'is_nontrivial_idempotent',
]
