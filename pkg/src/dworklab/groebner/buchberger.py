"""
Buchberger's algorithm under grevlex, generic over Q and F_q.

Polynomials are handled internally as plain dicts {exponent vector: coefficient} with
Fraction coefficients over Q and int residues over F_q.
"""

import logging
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Set, Tuple

from ..algebra.monomials import (
    grevlex_key,
    mono_coprime,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

logger = logging.getLogger(__name__)

Poly = Dict[tuple, object]


class CoefficientField:
    """Arithmetic on raw coefficients: Fractions (q is None) or residues mod q."""

    def __init__(self, q: Optional[int] = None):
        self.q = q

    def normalize(self, c):
        if self.q is None:
            return Fraction(c)
        return int(c) % self.q

    def inverse(self, c):
        if self.q is None:
            return 1 / c
        return pow(c, self.q - 2, self.q)

    def monic(self, f: Poly) -> Poly:
        if not f:
            return f
        inv = self.inverse(f[leading_monomial(f)])
        if self.q is None:
            return {e: c * inv for e, c in f.items()}
        return {e: c * inv % self.q for e, c in f.items()}

    def primitive(self, f: Poly) -> Poly:
        """Over Q, the primitive integer multiple of f; over F_q, f itself."""
        if self.q is not None or not f:
            return f
        lcm = 1
        for c in f.values():
            lcm = lcm * c.denominator // gcd(lcm, c.denominator)
        g = 0
        for c in f.values():
            g = gcd(g, int(c * lcm))
        scale = Fraction(lcm, g)
        return {e: c * scale for e, c in f.items()}

    def sub_scaled(self, f: Poly, c, shift: tuple, g: Poly) -> None:
        """In place: f -= c * x^shift * g."""
        q = self.q
        for e, gc in g.items():
            key = mono_mul(e, shift)
            value = f.get(key, 0) - c * gc
            if q is not None:
                value %= q
            if value:
                f[key] = value
            else:
                f.pop(key, None)


def leading_monomial(f: Poly) -> tuple:
    return max(f, key=grevlex_key)


def spoly(f: Poly, g: Poly, field: CoefficientField,
          lmf: Optional[tuple] = None, lmg: Optional[tuple] = None) -> Poly:
    """S-polynomial of monic f and g."""
    lmf = leading_monomial(f) if lmf is None else lmf
    lmg = leading_monomial(g) if lmg is None else lmg
    lcm = mono_lcm(lmf, lmg)
    s = {mono_mul(e, mono_div(lcm, lmf)): c for e, c in f.items()}
    field.sub_scaled(s, 1, mono_div(lcm, lmg), g)
    return s


def reduce(f: Poly, G: Sequence[Poly], field: CoefficientField,
           lmG: Optional[Sequence[tuple]] = None) -> Poly:
    """Remainder of full multivariate division of f by the monic polynomials G."""
    lmG = [leading_monomial(g) for g in G] if lmG is None else lmG
    f = dict(f)
    remainder: Poly = {}
    while f:
        lt = leading_monomial(f)
        c = f[lt]
        for g, lm in zip(G, lmG):
            if mono_divides(lm, lt):
                field.sub_scaled(f, c, mono_div(lt, lm), g)
                break
        else:
            remainder[lt] = c
            del f[lt]
    return remainder


def select(pairs: Set[Tuple[int, int]], lmG: Sequence[tuple], sugar: Sequence[int]) -> Tuple[int, int]:
    """Pick the pair of least sugar degree, ties broken by grevlex of the lcm."""

    def key(p):
        i, j = p
        lcm = mono_lcm(lmG[i], lmG[j])
        s = max(sugar[i] + sum(lcm) - sum(lmG[i]), sugar[j] + sum(lcm) - sum(lmG[j]))
        return (s, grevlex_key(lcm), i, j)

    return min(pairs, key=key)


def update(pairs: Set[Tuple[int, int]], lmG: List[tuple], lmf: tuple) -> Set[Tuple[int, int]]:
    """
    Gebauer-Moeller update of the pair set when a polynomial with leading monomial lmf
    joins the basis at index len(lmG).
    """
    lcm = mono_lcm
    new_index = len(lmG)
    kept = {
        (i, j) for (i, j) in pairs
        if not mono_divides(lmf, lcm(lmG[i], lmG[j]))
        or lcm(lmG[i], lmG[j]) == lcm(lmG[i], lmf)
        or lcm(lmG[i], lmG[j]) == lcm(lmG[j], lmf)
    }
    groups: Dict[tuple, List[int]] = {}
    for i, lm in enumerate(lmG):
        groups.setdefault(lcm(lm, lmf), []).append(i)
    minimal: List[tuple] = []
    for L in sorted(groups, key=grevlex_key):
        if all(not mono_divides(M, L) for M in minimal):
            minimal.append(L)
    for L in minimal:
        if not any(mono_coprime(lmG[i], lmf) for i in groups[L]):
            kept.add((min(groups[L]), new_index))
    return kept


def minimalize(G: List[Poly]) -> List[Poly]:
    """Drop basis elements whose leading monomial is divisible by another's."""
    ordered = sorted(G, key=lambda g: grevlex_key(leading_monomial(g)))
    result: List[Poly] = []
    for f in ordered:
        lm = leading_monomial(f)
        if all(not mono_divides(leading_monomial(g), lm) for g in result):
            result.append(f)
    return result


def interreduce(G: List[Poly], field: CoefficientField) -> List[Poly]:
    """Reduced Groebner basis from a minimal one."""
    reduced = []
    for i, g in enumerate(G):
        rest = G[:i] + G[i + 1:]
        reduced.append(field.monic(reduce(g, rest, field)))
    return sorted(reduced, key=lambda g: grevlex_key(leading_monomial(g)), reverse=True)


def buchberger(F: Sequence[Poly], field: CoefficientField) -> List[Poly]:
    """Reduced Groebner basis (grevlex) of the ideal generated by the nonzero dicts F."""
    G: List[Poly] = []
    lmG: List[tuple] = []
    sugar: List[int] = []
    pairs: Set[Tuple[int, int]] = set()
    for f in F:
        if not f:
            continue
        f = field.monic(f)
        lm = leading_monomial(f)
        pairs = update(pairs, lmG, lm)
        G.append(f)
        lmG.append(lm)
        sugar.append(max(sum(e) for e in f))
    reductions = 0
    while pairs:
        i, j = select(pairs, lmG, sugar)
        pairs.remove((i, j))
        lcm = mono_lcm(lmG[i], lmG[j])
        s_sugar = max(sugar[i] + sum(lcm) - sum(lmG[i]), sugar[j] + sum(lcm) - sum(lmG[j]))
        s = field.primitive(spoly(G[i], G[j], field, lmG[i], lmG[j]))
        r = reduce(s, G, field, lmG)
        reductions += 1
        if r:
            r = field.monic(r)
            lm = leading_monomial(r)
            pairs = update(pairs, lmG, lm)
            G.append(r)
            lmG.append(lm)
            sugar.append(s_sugar)
            if lm == (0,) * len(lm):
                # unit ideal
                break
    logger.debug('buchberger: %d generators, %d reductions, %d basis elements before '
                 'interreduction', len(F), reductions, len(G))
    if any(sum(lm) == 0 for lm in lmG):
        one = (0,) * len(lmG[0])
        return [{one: field.normalize(1)}]
    return interreduce(minimalize(G), field)
