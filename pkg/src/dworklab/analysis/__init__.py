"""
Structural analysis of forms: rank, regularity, primes, witnesses, families.
"""

from .families import (
    codimensions,
    corollary_threshold,
    delta_threshold,
    generate_example,
    nonregular_example,
)
from .primes import (
    BadPrimeReport,
    DeligneCertificate,
    bad_primes,
    deligne_after_specialization,
    is_excluded_prime,
)
from .rank import RankReport, intertwining_rank, realizes_rank_at_first, relabel_for_rank, relabel_matrix
from .regularity import (
    RegularityVerdict,
    dwork_regular_via_euler,
    is_dwork_regular,
    is_nonsingular,
    subsets_in_order,
)
from .witness import (
    DerivativeWitness,
    DispersiveCertificate,
    count_line_solutions,
    find_derivative_witness,
    first_derivative_at,
    is_dispersive,
)

__all__ = [
    'codimensions',
    'corollary_threshold',
    'delta_threshold',
    'generate_example',
    'nonregular_example',
    'BadPrimeReport',
    'DeligneCertificate',
    'bad_primes',
    'deligne_after_specialization',
    'is_excluded_prime',
    'RankReport',
    'intertwining_rank',
    'realizes_rank_at_first',
    'relabel_for_rank',
    'relabel_matrix',
    'RegularityVerdict',
    'dwork_regular_via_euler',
    'is_dwork_regular',
    'is_nonsingular',
    'subsets_in_order',
    'DerivativeWitness',
    'DispersiveCertificate',
    'count_line_solutions',
    'find_derivative_witness',
    'first_derivative_at',
    'is_dispersive',
]
