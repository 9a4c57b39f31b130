"""
Example families and closed-form thresholds.
"""

from fractions import Fraction
from math import comb
from typing import Tuple

from ..algebra import Form
from ..errors import ParameterRangeError


def _monomial(n: int, powers: dict) -> Form:
    return Form(n, {tuple(powers.get(i, 0) for i in range(1, n + 1)): 1})


def generate_example(n: int, k: int, r: int) -> Form:
    """
    Dwork-regular form of intertwining rank r.

    Odd k: sum x_i^k + sum_{2<=j<=r} x_1 x_j^{k-1} + sum_{2<=i<j<=n} x_i x_j^{k-1}.
    Even k: the same with x_1^2 x_j^{k-2} and x_i^2 x_j^{k-2}.
    """
    if k < 3 or not 2 <= r <= n:
        raise ParameterRangeError(f'need k >= 3 and 2 <= r <= n, got n={n}, k={k}, r={r}')
    low, high = (1, k - 1) if k % 2 else (2, k - 2)
    form = Form.zero(n)
    for i in range(1, n + 1):
        form = form + _monomial(n, {i: k})
    for j in range(2, r + 1):
        form = form + _monomial(n, {1: low, j: high})
    for i in range(2, n + 1):
        for j in range(i + 1, n + 1):
            form = form + _monomial(n, {i: low, j: high})
    return form


def nonregular_example(n: int, k: int) -> Form:
    """x_1^k + ... + x_{n-1}^k + x_{n-1} x_n^{k-1}: nonsingular, not Dwork-regular."""
    if n < 2 or k < 2:
        raise ParameterRangeError('need n >= 2 and k >= 2')
    form = Form.zero(n)
    for i in range(1, n):
        form = form + _monomial(n, {i: k})
    return form + _monomial(n, {n - 1: 1, n: k - 1})


def delta_threshold(n: int, k: int, r) -> Fraction:
    """delta(n, k, r) = (n - r) / (4((k - 1)(n - (r - 1)) + 1)); r may be rational."""
    r = Fraction(r)
    if n < 2 or k < 2 or not 1 <= r <= n:
        raise ParameterRangeError(f'need n >= 2, k >= 2, 1 <= r <= n (n={n}, k={k}, r={r})')
    return (n - r) / (4 * ((k - 1) * (n - (r - 1)) + 1))


def codimensions(n: int, k: int) -> Tuple[int, int]:
    """
    (codim of rank-(n-1) forms, codim of rank-1 forms) in the space of degree-k forms.
    """
    if n < 2 or k < 2:
        raise ParameterRangeError('need n >= 2 and k >= 2')
    top = comb(n + k - 3, n - 1)
    bottom = comb(n + k - 1, n - 1) - comb(n + k - 2, n - 2) - 1
    return top, bottom


def corollary_threshold(n: int, k: int) -> Fraction:
    """1/4 + n / (4((k - 1)(n + 2) + 2)): threshold for decomposable leading forms."""
    if n < 2 or k < 2:
        raise ParameterRangeError('need n >= 2 and k >= 2')
    return Fraction(1, 4) + Fraction(n, 4 * ((k - 1) * (n + 2) + 2))
