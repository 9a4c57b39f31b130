"""
Tests for the form grammar: parsing, printing and error positions.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dworklab.algebra import FieldPoly, Form
from dworklab.errors import FormSyntaxError, VariableIndexZero, ZeroDenominator
from dworklab.parsers import FormSource, parse_field_poly, parse_form, parse_forms, print_form, tokenize


def test_parse_basic_form():
    f = parse_form('x1^3 + x1*x2^2 + x2*x3*x4')
    assert f.n == 4
    assert f.coefficient((3, 0, 0, 0)) == 1
    assert f.coefficient((1, 2, 0, 0)) == 1
    assert f.coefficient((0, 1, 1, 1)) == 1
    assert f.total_degree() == 3


def test_parse_coefficients_and_signs():
    f = parse_form('-3/4*x1^2 + 2*x1*x2 - x2^2')
    assert f.coefficient((2, 0)) == Fraction(-3, 4)
    assert f.coefficient((1, 1)) == 2
    assert f.coefficient((0, 2)) == -1


def test_like_terms_combine():
    f = parse_form('x1*x2 + x2*x1 - 2*x1*x2 + x1^2')
    assert f == parse_form('x1^2', 2)


def test_declared_variable_count():
    f = parse_form('x1^2', 3)
    assert f.n == 3
    assert parse_form(FormSource('x1*x2', 4)).n == 4
    with pytest.raises(FormSyntaxError) as excinfo:
        parse_form('x1 + x5', 3)
    assert excinfo.value.column == 6


def test_syntax_error_positions():
    with pytest.raises(FormSyntaxError) as excinfo:
        parse_form('x1 + * x2')
    assert (excinfo.value.line, excinfo.value.column) == (1, 6)
    with pytest.raises(FormSyntaxError) as excinfo:
        parse_form('x1^2 +\n  y2')
    assert (excinfo.value.line, excinfo.value.column) == (2, 3)


def test_zero_denominator_and_index_zero():
    with pytest.raises(ZeroDenominator):
        parse_form('1/0*x1^2')
    with pytest.raises(VariableIndexZero):
        parse_form('x0^2 + x1^2')
    with pytest.raises(FormSyntaxError):
        parse_form('x1^0')


def test_tokenize_tracks_columns():
    tokens = tokenize('12*x3^4')
    assert [t.kind for t in tokens][:5] == ['integer', '*', 'variable', '^', 'integer']
    assert [t.column for t in tokens][:5] == [1, 3, 4, 6, 7]
    assert tokens[2].value == 3


def test_print_form_canonical():
    f = parse_form('x2*x3^2 + x1^3 - 1/2*x1*x2^2')
    assert print_form(f) == 'x1^3 - 1/2*x1*x2^2 + x2*x3^2'
    assert print_form(Form.zero(2)) == '0'


def test_field_poly_parse_and_print():
    g = parse_field_poly('x1^3 - x1*x2^2', 7)
    assert isinstance(g, FieldPoly)
    assert g.q == 7
    assert print_form(g) == 'x1^3 + 6*x1*x2^2'


def test_inferred_variable_count_is_largest_index():
    f = Form(3, {(2, 0, 0): 1})
    assert parse_form(print_form(f)).n == 1
    assert parse_form(print_form(f)) != f
    assert parse_form(print_form(f), f.n) == f
    assert parse_form('7').n == 1
    assert parse_form('x2*x4').n == 4


def test_parse_forms_common_n():
    forms = parse_forms(['x1^2', 'x1*x3'])
    assert [f.n for f in forms] == [3, 3]


terms = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)),
    st.fractions(min_value=-5, max_value=5, max_denominator=6),
    min_size=1, max_size=6,
)


@settings(max_examples=50, deadline=None)
@given(terms)
def test_print_parse_is_identity(t):
    f = Form(3, t)
    assert parse_form(print_form(f), 3) == f
