"""
Recursive-descent parser for the form grammar.

Grammar (EBNF)::

    form   := signed_term (('+' | '-') term)*
    signed := ['-' | '+'] term
    term   := [coeff '*'] mono | coeff
    coeff  := int ['/' posint]
    mono   := var ('*' var)*
    var    := 'x' posint ['^' posint]

Coefficients default to 1 and exponents to 1; indices are 1-based.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional

from ..algebra import FieldPoly, Form
from ..errors import FormSyntaxError, VariableIndexZero, ZeroDenominator


class Token:
    """Token kinds and a token instance."""

    integer = 'integer'
    variable = 'variable'
    plus = '+'
    minus = '-'
    star = '*'
    slash = '/'
    caret = '^'
    eof = 'end of input'

    __slots__ = ('kind', 'text', 'value', 'line', 'column')

    def __init__(self, kind: str, text: str, line: int, column: int, value: int = 0):
        self.kind = kind
        self.text = text
        self.value = value
        self.line = line
        self.column = column

    def __repr__(self):
        return f'Token({self.kind!r}, {self.text!r}, {self.line}:{self.column})'


_PUNCTUATION = {
    '+': Token.plus,
    '-': Token.minus,
    '*': Token.star,
    '/': Token.slash,
    '^': Token.caret,
}


def tokenize(text: str) -> List[Token]:
    """Split form text into tokens, tracking 1-based line and column."""
    tokens: List[Token] = []
    line, column = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == '\n':
            line += 1
            column = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            column += 1
            continue
        if ch in _PUNCTUATION:
            tokens.append(Token(_PUNCTUATION[ch], ch, line, column))
            i += 1
            column += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(Token(Token.integer, text[i:j], line, column, int(text[i:j])))
            column += j - i
            i = j
            continue
        if ch in 'xX':
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise FormSyntaxError("expected a variable index after 'x'", line, column + 1)
            index = int(text[i + 1:j])
            if index == 0:
                raise VariableIndexZero('variable indices start at 1 (found x0)', line, column)
            tokens.append(Token(Token.variable, text[i:j], line, column, index))
            column += j - i
            i = j
            continue
        raise FormSyntaxError(f'unexpected character {ch!r}', line, column)
    tokens.append(Token(Token.eof, '', line, column))
    return tokens


@dataclass(frozen=True)
class FormSource:
    """Form text with an optional declared variable count."""
    text: str
    n: Optional[int] = None


class _Parser:
    """One-token-lookahead recursive descent over a token list."""

    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind != Token.eof:
            self.pos += 1
        return token

    def _expect(self, kind: str) -> Token:
        token = self.current
        if token.kind != kind:
            found = token.text or token.kind
            raise FormSyntaxError(f'expected {kind}, found {found!r}', token.line, token.column)
        return self._advance()

    def parse(self) -> List[tuple]:
        """Returns a list of (coefficient, {index: exponent}) terms."""
        terms = []
        sign = 1
        if self.current.kind in (Token.plus, Token.minus):
            sign = -1 if self._advance().kind == Token.minus else 1
        terms.append(self._term(sign))
        while self.current.kind in (Token.plus, Token.minus):
            sign = -1 if self._advance().kind == Token.minus else 1
            terms.append(self._term(sign))
        if self.current.kind != Token.eof:
            token = self.current
            raise FormSyntaxError(f'unexpected {token.text!r}', token.line, token.column)
        return terms

    def _term(self, sign: int) -> tuple:
        token = self.current
        if token.kind == Token.integer:
            coeff = self._coeff()
            if self.current.kind == Token.star:
                self._advance()
                return sign * coeff, self._mono()
            return sign * coeff, {}
        if token.kind == Token.variable:
            return Fraction(sign), self._mono()
        found = token.text or token.kind
        raise FormSyntaxError(f'expected a term, found {found!r}', token.line, token.column)

    def _coeff(self) -> Fraction:
        numerator = self._expect(Token.integer).value
        if self.current.kind != Token.slash:
            return Fraction(numerator)
        self._advance()
        token = self._expect(Token.integer)
        if token.value == 0:
            raise ZeroDenominator('zero denominator', token.line, token.column)
        return Fraction(numerator, token.value)

    def _mono(self) -> Dict[int, int]:
        exponents: Dict[int, int] = {}
        self._var(exponents)
        while self.current.kind == Token.star:
            self._advance()
            self._var(exponents)
        return exponents

    def _var(self, exponents: Dict[int, int]) -> None:
        token = self._expect(Token.variable)
        power = 1
        if self.current.kind == Token.caret:
            self._advance()
            exp_token = self._expect(Token.integer)
            if exp_token.value == 0:
                raise FormSyntaxError('exponents must be positive', exp_token.line, exp_token.column)
            power = exp_token.value
        exponents[token.value] = exponents.get(token.value, 0) + power


def _build_terms(raw: List[tuple], n: int) -> Dict[tuple, Fraction]:
    terms: Dict[tuple, Fraction] = {}
    for coeff, exponents in raw:
        e = [0] * n
        for index, power in exponents.items():
            e[index - 1] += power
        key = tuple(e)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return terms


def _parse_raw(text: str, n: Optional[int]):
    tokens = tokenize(text)
    raw = _Parser(tokens).parse()
    used = max((v.value for v in tokens if v.kind == Token.variable), default=1)
    if n is None:
        n = used
    elif used > n:
        offender = next(t for t in tokens if t.kind == Token.variable and t.value > n)
        raise FormSyntaxError(
            f'variable {offender.text} exceeds the declared count n={n}',
            offender.line, offender.column,
        )
    return raw, n


def parse_form(src, n: Optional[int] = None) -> Form:
    """
    Parse form text into a canonical Form.

    Without a declared n the variable count is the largest index written, so
    trailing variables that never occur are dropped: printing a Form in x1..x3
    that only uses x1 and parsing it back gives n = 1. Pass n to keep the ambient
    count. Text with no variables parses with n = 1.

    Args:
        src: FormSource or plain text
        n: Declared variable count (default: largest index in the text)

    Returns:
        Form over Q
    """
    if isinstance(src, FormSource):
        text, n = src.text, src.n if src.n is not None else n
    else:
        text = src
    raw, n = _parse_raw(text, n)
    return Form(n, _build_terms(raw, n))


def parse_field_poly(text: str, q: int, n: Optional[int] = None) -> FieldPoly:
    """Parse form text and reduce its coefficients mod q."""
    return parse_form(text, n).reduce_mod(q)


def parse_forms(texts: List[str], n: Optional[int] = None) -> List[Form]:
    """Parse several forms into a common ambient variable count."""
    if n is None:
        n = max(_parse_raw(t, None)[1] for t in texts)
    return [parse_form(t, n) for t in texts]
