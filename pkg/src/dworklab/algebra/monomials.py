"""
Exponent vectors and the monomial orders used across the package.
"""

from typing import Iterable, Tuple

ExponentVec = Tuple[int, ...]


def total_degree(e: ExponentVec) -> int:
    return sum(e)


def grlex_key(e: ExponentVec):
    """Sort key for graded lexicographic order (larger key = larger monomial)."""
    return (sum(e), e)


def grevlex_key(e: ExponentVec):
    """Sort key for graded reverse lexicographic order (larger key = larger monomial)."""
    return (sum(e), tuple(-x for x in reversed(e)))


def mono_mul(a: ExponentVec, b: ExponentVec) -> ExponentVec:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: ExponentVec, b: ExponentVec) -> ExponentVec:
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(b: ExponentVec, a: ExponentVec) -> bool:
    """True if the monomial b divides a."""
    return all(y <= x for x, y in zip(a, b))


def mono_lcm(a: ExponentVec, b: ExponentVec) -> ExponentVec:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_coprime(a: ExponentVec, b: ExponentVec) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def unit_vector(n: int, i: int, power: int = 1) -> ExponentVec:
    """x_i**power as an exponent vector; i is 0-based."""
    return tuple(power if j == i else 0 for j in range(n))


def pure_power_variable(e: ExponentVec):
    """Index (0-based) of the only variable in e, or None if e is not a pure power."""
    support = [i for i, x in enumerate(e) if x]
    if len(support) == 1:
        return support[0]
    return None


def monomials_of_degree(n: int, d: int) -> Iterable[ExponentVec]:
    """All exponent vectors of length n and total degree d, in descending grlex."""
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            yield (first,) + rest
