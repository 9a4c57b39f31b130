"""
Prime fields F_q and their quadratic extensions.
"""

from functools import lru_cache
from typing import Union

from ..errors import ModulusMismatch, NotPrimeError


@lru_cache(maxsize=4096)
def is_prime(q: int) -> bool:
    """Deterministic trial division; moduli here stay below 2**32."""
    if q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0 or q % 3 == 0:
        return False
    d = 5
    while d * d <= q:
        if q % d == 0 or q % (d + 2) == 0:
            return False
        d += 6
    return True


def primes_up_to(limit: int) -> list:
    """All primes p with 2 <= p <= limit."""
    return [p for p in range(2, limit + 1) if is_prime(p)]


def primes_between(lo: float, hi: float) -> list:
    """All primes p with lo <= p <= hi."""
    start = max(2, int(lo) if lo == int(lo) else int(lo) + 1)
    return [p for p in range(start, int(hi) + 1) if is_prime(p)]


def check_prime(q: int) -> int:
    if not is_prime(q):
        raise NotPrimeError(f'{q} is not prime')
    return q


class FieldElem:
    """An element of F_q, stored as its residue in [0, q)."""

    __slots__ = ('residue', 'modulus')

    def __init__(self, value: int, modulus: int):
        check_prime(modulus)
        self.residue = value % modulus
        self.modulus = modulus

    @classmethod
    def _raw(cls, residue: int, modulus: int) -> 'FieldElem':
        # residue already reduced and modulus already checked
        elem = object.__new__(cls)
        elem.residue = residue
        elem.modulus = modulus
        return elem

    def _coerce(self, other: Union['FieldElem', int]) -> int:
        if isinstance(other, FieldElem):
            if other.modulus != self.modulus:
                raise ModulusMismatch(
                    f'cannot combine F_{self.modulus} and F_{other.modulus}'
                )
            return other.residue
        if isinstance(other, int):
            return other % self.modulus
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem._raw((self.residue + o) % self.modulus, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem._raw((self.residue - o) % self.modulus, self.modulus)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem._raw((o - self.residue) % self.modulus, self.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem._raw((self.residue * o) % self.modulus, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem._raw((-self.residue) % self.modulus, self.modulus)

    def inverse(self) -> 'FieldElem':
        if self.residue == 0:
            raise ZeroDivisionError(f'0 has no inverse in F_{self.modulus}')
        return FieldElem._raw(pow(self.residue, self.modulus - 2, self.modulus), self.modulus)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * FieldElem._raw(o, self.modulus).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem._raw(o, self.modulus) * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return FieldElem._raw(pow(self.residue, exponent, self.modulus), self.modulus)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.modulus == other.modulus and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.modulus))

    def __bool__(self):
        return self.residue != 0

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f'FieldElem({self.residue}, {self.modulus})'

    def __str__(self):
        return str(self.residue)


@lru_cache(maxsize=256)
def quadratic_non_residue(q: int) -> int:
    """Smallest non-square in F_q (q odd)."""
    check_prime(q)
    if q == 2:
        raise NotPrimeError('F_2 has no quadratic non-residue; use an odd prime')
    for nu in range(2, q):
        if pow(nu, (q - 1) // 2, q) == q - 1:
            return nu
    raise AssertionError('unreachable for odd primes')


class QuadraticExtElem:
    """An element x + y*t of F_{q^2} = F_q[t]/(t^2 - nu)."""

    __slots__ = ('x', 'y', 'q', 'nu')

    def __init__(self, x: int, y: int, q: int):
        self.q = q
        self.nu = quadratic_non_residue(q)
        self.x = x % q
        self.y = y % q

    def _pair(self, other):
        if isinstance(other, QuadraticExtElem):
            if other.q != self.q:
                raise ModulusMismatch(f'cannot combine F_{self.q}^2 and F_{other.q}^2')
            return other.x, other.y
        if isinstance(other, FieldElem):
            if other.modulus != self.q:
                raise ModulusMismatch(f'cannot combine F_{self.q}^2 and F_{other.modulus}')
            return other.residue, 0
        if isinstance(other, int):
            return other % self.q, 0
        return NotImplemented

    def __add__(self, other):
        p = self._pair(other)
        if p is NotImplemented:
            return p
        return QuadraticExtElem(self.x + p[0], self.y + p[1], self.q)

    __radd__ = __add__

    def __sub__(self, other):
        p = self._pair(other)
        if p is NotImplemented:
            return p
        return QuadraticExtElem(self.x - p[0], self.y - p[1], self.q)

    def __mul__(self, other):
        p = self._pair(other)
        if p is NotImplemented:
            return p
        a, b = p
        return QuadraticExtElem(
            self.x * a + self.nu * self.y * b, self.x * b + self.y * a, self.q
        )

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        result = QuadraticExtElem(1, 0, self.q)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        p = self._pair(other)
        if p is NotImplemented:
            return p
        return (self.x, self.y) == p

    def __hash__(self):
        return hash((self.x, self.y, self.q))

    def __bool__(self):
        return bool(self.x or self.y)

    def __repr__(self):
        return f'QuadraticExtElem({self.x}, {self.y}, {self.q})'
