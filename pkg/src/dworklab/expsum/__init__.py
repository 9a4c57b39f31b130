"""
Complete, incomplete and real exponential sums.
"""

from .cache import SumTableCache, read_table, write_table
from .good_pairs import GoodPairSet, default_alpha2, good_pairs
from .incomplete import IncompleteSumReport, incomplete_constant, incomplete_sum_check
from .real_sums import (
    RationalAngle,
    SumDecomposition,
    decompose_sum,
    error_budget,
    real_sum,
    specialized_tail,
    sum_terms,
)
from .tables import (
    SumTable,
    complete_sum,
    k2_threshold,
    naive_table,
    root_table,
    scan_all_pairs,
    weil_deligne_bound,
)

__all__ = [
    'SumTableCache',
    'read_table',
    'write_table',
    'GoodPairSet',
    'default_alpha2',
    'good_pairs',
    'IncompleteSumReport',
    'incomplete_constant',
    'incomplete_sum_check',
    'RationalAngle',
    'SumDecomposition',
    'decompose_sum',
    'error_budget',
    'real_sum',
    'specialized_tail',
    'sum_terms',
    'SumTable',
    'complete_sum',
    'k2_threshold',
    'naive_table',
    'root_table',
    'scan_all_pairs',
    'weil_deligne_bound',
]
