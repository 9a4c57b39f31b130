"""
Canonical text rendering of polynomials.
"""

from ..algebra.fields import FieldElem


def _monomial_text(exponents) -> str:
    parts = []
    for i, p in enumerate(exponents):
        if p == 1:
            parts.append(f'x{i + 1}')
        elif p > 1:
            parts.append(f'x{i + 1}^{p}')
    return '*'.join(parts)


def print_form(f) -> str:
    """
    Render a Form or FieldPoly in descending graded-lex order.

    The output re-parses to the same polynomial; FieldPoly residues are printed as
    integers in [0, q).
    """
    if f.is_zero():
        return '0'
    pieces = []
    for exps, coeff in f.terms.items():
        if isinstance(coeff, FieldElem):
            negative, magnitude = False, str(coeff.residue)
            is_one = coeff.residue == 1
        else:
            negative = coeff < 0
            magnitude = str(abs(coeff))
            is_one = abs(coeff) == 1
        mono = _monomial_text(exps)
        if not mono:
            body = magnitude
        elif is_one:
            body = mono
        else:
            body = f'{magnitude}*{mono}'
        if not pieces:
            pieces.append(f'-{body}' if negative else body)
        else:
            pieces.append(f'- {body}' if negative else f'+ {body}')
    return ' '.join(pieces)
