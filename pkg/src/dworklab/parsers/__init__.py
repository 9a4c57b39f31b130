"""
Parsing and printing of forms.
"""

from .form_parser import (
    FormSource,
    Token,
    parse_field_poly,
    parse_form,
    parse_forms,
    tokenize,
)
from .form_printer import print_form

__all__ = [
    'FormSource',
    'Token',
    'parse_field_poly',
    'parse_form',
    'parse_forms',
    'tokenize',
    'print_form',
]
