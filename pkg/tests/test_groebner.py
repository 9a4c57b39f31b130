"""
Tests for Groebner bases and the projective Nullstellensatz check.
"""

import pytest
from hypothesis import given, settings, strategies as st

from dworklab.algebra import FieldPoly, Form, monomials_of_degree
from dworklab.errors import ModulusMismatch, NotHomogeneous
from dworklab.groebner import (
    Ideal,
    find_projective_zero,
    is_irrelevant,
    projective_points,
    singular_locus_generators,
)
from dworklab.parsers import parse_field_poly, parse_form


def test_basis_contains_generators():
    gens = [parse_form('x1^2 - x2*x3', 3), parse_form('x2^2 - x1*x3', 3)]
    basis = Ideal(gens).groebner_basis()
    for g in gens:
        assert basis.contains(g)
    assert basis.contains(gens[0] * parse_form('x1 + x3', 3) + gens[1] * parse_form('x2', 3))
    assert not basis.contains(parse_form('x1', 3))


def test_normal_form_reduces_to_remainder():
    basis = Ideal([parse_form('x1^2', 2), parse_form('x2', 2)]).groebner_basis()
    assert basis.normal_form(parse_form('x1^3 + x1*x2 + x1', 2)) == parse_form('x1', 2)


def test_unit_ideal():
    basis = Ideal([Form.constant(2, 1), parse_form('x1', 2)]).groebner_basis()
    assert basis.is_unit()


def test_irrelevant_ideals():
    assert is_irrelevant(Ideal([parse_form('x1^2 - x2^2', 2), parse_form('x1*x2', 2)]))
    assert is_irrelevant(Ideal([parse_form('x1^3', 3), parse_form('x2^2', 3), parse_form('x3', 3)]))
    assert not is_irrelevant(Ideal([parse_form('x1^2 + x2^2', 2)]))
    assert not is_irrelevant(Ideal([parse_form('x1*x2', 3), parse_form('x3^2', 3)]))


def test_irrelevant_over_finite_field():
    # x1^2 + x2^2 = (x1 + 2 x2)(x1 - 2 x2) over F_5
    ideal = Ideal([parse_field_poly('x1^2 + x2^2', 5)])
    assert not is_irrelevant(ideal)
    assert find_projective_zero(ideal.generators) is not None
    assert is_irrelevant(Ideal([parse_field_poly('x1^2', 5, 2), parse_field_poly('x2^3', 5, 2)]))


def test_is_irrelevant_requires_homogeneous():
    with pytest.raises(NotHomogeneous):
        is_irrelevant(Ideal([parse_form('x1^2 + x2', 2)]))


def test_mixed_fields_rejected():
    with pytest.raises(ModulusMismatch):
        Ideal([parse_field_poly('x1', 5), parse_field_poly('x1', 7)])


def test_projective_point_counts():
    # |P^2(F_q)| = q^2 + q + 1
    assert len(list(projective_points([1, 2, 3], 3, 5))) == 31
    assert len(list(projective_points([1, 2], 2, 3, extension=2))) == 10


def test_point_search_over_quadratic_extension():
    # x1^2 + x2^2 has no zero in P^1(F_7) but splits over F_49
    polys = [parse_field_poly('x1^2 + x2^2', 7)]
    assert find_projective_zero(polys, extension=1) is None
    assert find_projective_zero(polys, extension=2) is not None
    assert not is_irrelevant(Ideal(polys))


def test_singular_locus_generators():
    h = parse_form('x1^2 + x2^2', 3)
    gens = singular_locus_generators(h, [1, 2, 3])
    assert len(gens) == 4
    assert find_projective_zero(gens) == (0, 0, 1)


def _homogeneous(n, q, degree, coeffs):
    monos = list(monomials_of_degree(n, degree))
    return FieldPoly(n, q, dict(zip(monos, coeffs)))


generator = st.tuples(st.integers(1, 2), st.lists(st.integers(0, 4), min_size=6, max_size=6))
coefficient_lists = st.lists(st.integers(0, 6), min_size=6, max_size=6)


def _pure_power(n, i, e):
    return tuple(e if j == i else 0 for j in range(n))


def _vanishing_at(point, q, specs):
    """Generators sum_{i<j} (p_j x_i - p_i x_j) h_ij, each zero at the point."""
    n = len(point)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    polys = []
    for degree, coeffs in specs:
        total = FieldPoly(n, q)
        for shift, (i, j) in enumerate(pairs):
            line = FieldPoly(n, q, {_pure_power(n, i, 1): point[j], _pure_power(n, j, 1): -point[i]})
            total = total + line * _homogeneous(n, q, degree - 1, coeffs[shift:] + coeffs[:shift])
        if not total.is_zero():
            polys.append(total)
    return polys


@pytest.mark.parametrize('q', [5, 7])
@settings(max_examples=50, deadline=None)
@given(st.lists(generator, min_size=1, max_size=3))
def test_found_zero_contradicts_irrelevance(q, specs):
    polys = [_homogeneous(3, q, d, cs) for d, cs in specs]
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return
    ideal = Ideal(polys)
    zero = find_projective_zero(polys) or find_projective_zero(polys, extension=2)
    if zero is not None:
        assert not is_irrelevant(ideal)
    if len(polys) < 3:
        # fewer equations than variables always leave a projective zero
        assert not is_irrelevant(ideal)


@pytest.mark.parametrize('q', [5, 7])
@settings(max_examples=50, deadline=None)
@given(st.tuples(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6)),
       st.lists(st.tuples(st.integers(2, 3), coefficient_lists), min_size=1, max_size=3))
def test_ideal_with_common_zero_is_relevant(q, point, specs):
    point = tuple(v % q for v in point)
    if not any(point):
        return
    polys = _vanishing_at(point, q, specs)
    if not polys:
        return
    assert not is_irrelevant(Ideal(polys))
    assert find_projective_zero(polys) is not None


@pytest.mark.parametrize('q', [5, 7])
@settings(max_examples=50, deadline=None)
@given(st.tuples(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3)),
       st.lists(generator, max_size=2))
def test_ideal_with_pure_powers_is_irrelevant(q, exponents, specs):
    polys = [FieldPoly(3, q, {_pure_power(3, i, e): 1}) for i, e in enumerate(exponents)]
    polys += [_homogeneous(3, q, d, cs) for d, cs in specs]
    assert is_irrelevant(Ideal(polys))
    assert find_projective_zero(polys) is None
    assert find_projective_zero(polys, extension=2) is None


@pytest.mark.parametrize('text, good, bad', [
    (['3*x1^2', '3*x2^2', 'x3^2'], [5, 7, 11], [3]),
    (['x1^2 - x2^2', 'x1*x2'], [2, 3, 5, 7], []),
    (['x1^2 + x2^2'], [2, 3, 5, 7], []),
    (['x1^2 - x2*x3', 'x2^2 - x1*x3', 'x3^2 - x1*x2'], [5, 7], []),
    (['2*x1', '3*x2', 'x3^2'], [5, 7, 11], [2, 3]),
])
def test_same_answer_over_rationals_and_good_primes(text, good, bad):
    n = 3 if any('x3' in t for t in text) else 2
    forms = [parse_form(t, n) for t in text]
    over_q = is_irrelevant(Ideal(forms))
    for q in good:
        assert is_irrelevant(Ideal([f.reduce_mod(q) for f in forms])) == over_q
    for q in bad:
        assert over_q
        assert not is_irrelevant(Ideal([f.reduce_mod(q) for f in forms]))


integer_generator = st.tuples(st.integers(1, 2), st.lists(st.integers(-3, 3), min_size=6,
                                                          max_size=6))


@settings(max_examples=50, deadline=None)
@given(st.lists(integer_generator, min_size=1, max_size=3), st.sampled_from([5, 7]))
def test_irrelevant_mod_q_implies_irrelevant_over_rationals(specs, q):
    # a projective zero over the algebraic closure of Q reduces to one mod every q
    forms = [Form(3, dict(zip(monomials_of_degree(3, d), cs))) for d, cs in specs]
    forms = [f for f in forms if not f.is_zero()]
    if not forms:
        return
    if is_irrelevant(Ideal([f.reduce_mod(q) for f in forms])):
        assert is_irrelevant(Ideal(forms))
