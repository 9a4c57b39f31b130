"""
Intertwining rank of a form and the relabeling that puts its witness first.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..algebra import Form, RationalMatrix
from ..errors import NotHomogeneous, ParameterRangeError


@dataclass
class RankReport:
    """Per-variable intertwining data of a form P_k."""
    n: int
    intertwining_sets: Dict[int, List[int]]
    ranks: Dict[int, int]
    rank: int
    witness_variable: int
    # new position -> old variable (1-based); applied through change_variables
    order: List[int] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {
            'rank': self.rank,
            'witness_variable': self.witness_variable,
            'ranks': {str(i): r for i, r in self.ranks.items()},
            'intertwining_sets': {str(i): s for i, s in self.intertwining_sets.items()},
            'order': self.order,
        }


def _check_form(p: Form) -> None:
    if p.is_zero() or not p.is_homogeneous():
        raise NotHomogeneous('intertwining rank is defined for nonzero homogeneous forms')
    if p.total_degree() < 2:
        raise ParameterRangeError(f'degree {p.total_degree()} < 2 has no intertwining rank')


def intertwining_rank(p: Form) -> RankReport:
    """
    Compute r = min_i #{j : d^2 P / dX_i dX_j != 0}, X_i counting itself.

    Returns:
        RankReport with the smallest-index witness and the relabeling order
    """
    _check_form(p)
    sets: Dict[int, List[int]] = {}
    for i in range(1, p.n + 1):
        di = p.partial_derivative(i)
        linked = {i}
        if not di.is_zero():
            linked.update(j for j in range(1, p.n + 1) if not di.partial_derivative(j).is_zero())
        sets[i] = sorted(linked)
    ranks = {i: len(s) for i, s in sets.items()}
    rank = min(ranks.values())
    witness = min(i for i, r in ranks.items() if r == rank)
    partners = [j for j in sets[witness] if j != witness]
    rest = [j for j in range(1, p.n + 1) if j != witness and j not in partners]
    return RankReport(
        n=p.n,
        intertwining_sets=sets,
        ranks=ranks,
        rank=rank,
        witness_variable=witness,
        order=[witness] + partners + rest,
    )


def relabel_matrix(order: List[int]) -> RationalMatrix:
    """
    Permutation matrix sending old X_{order[k]} to new X_{k+1}.
    """
    images = [0] * len(order)
    for new_position, old in enumerate(order, start=1):
        images[old - 1] = new_position
    return RationalMatrix.permutation(images)


def relabel_for_rank(p: Form, report: Optional[RankReport] = None) -> Tuple[Form, RankReport]:
    """
    Change variables so that X_1 realizes the rank and intertwines exactly X_1..X_r.

    Returns:
        (relabeled form, rank report of the original form)
    """
    report = report or intertwining_rank(p)
    return p.change_variables(relabel_matrix(report.order)), report


def realizes_rank_at_first(p: Form, r: int) -> bool:
    """X_1 intertwines exactly with X_1..X_r."""
    report = intertwining_rank(p)
    return report.intertwining_sets[1] == list(range(1, r + 1)) and report.rank == r
