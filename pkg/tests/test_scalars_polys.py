from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from quadpoisson.polys import (HomPoly, NotDivisible, ZeroDivisor, apply_linvf, basis_size,
                               det, divides, linvf_matrix, monomial_basis, poly_det, try_divide)
from quadpoisson.scalars import GaussRat, I, format_scalar, normalize, parse_scalar
from strategies import gauss, hompolys, matrices, rationals


@given(gauss, gauss, gauss)
def test_gaussian_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if a != 0:
        assert a * (1 / a) == 1


def test_i_squared():
    assert I * I == -1
    assert normalize(GaussRat(3, 0)) == Fraction(3)


@given(st.one_of(rationals, gauss))
def test_scalar_literal_roundtrip(c):
    assert normalize(parse_scalar(format_scalar(c))) == normalize(c)


def test_scalar_literals():
    assert format_scalar(GaussRat(Fraction(1, 2), -3)) == "1/2-3 i"
    assert parse_scalar("-i") == GaussRat(0, -1)
    assert parse_scalar("7") == 7


def test_monomial_basis_is_lex_increasing():
    basis = monomial_basis(3, 2)
    assert list(basis) == sorted(basis)
    assert len(basis) == basis_size(3, 2) == 6


@given(hompolys(deg=2), hompolys(deg=2), hompolys(deg=1))
def test_ring_laws(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f * h == h * f


@given(hompolys())
def test_vector_and_literal_roundtrip(f):
    assert HomPoly.from_vector(f.n, f.deg, f.to_vector()) == f
    if not f.is_zero():
        assert HomPoly.from_literal(f.to_literal()) == f


@given(hompolys(deg=2), hompolys(deg=1), st.integers(0, 2))
def test_leibniz_rule(f, g, i):
    assert (f * g).deriv(i) == f.deriv(i) * g + f * g.deriv(i)


@given(hompolys(deg=2), hompolys(deg=1))
def test_exact_division(q, d):
    if d.is_zero():
        with pytest.raises(ZeroDivisor):
            divides(d, q)
        return
    assert divides(d, d * q) == q


def test_not_divisible():
    x, y = HomPoly.var(2, 0), HomPoly.var(2, 1)
    with pytest.raises(NotDivisible):
        divides(x, y * y)
    assert try_divide(x, y * y) is None


@settings(max_examples=25)
@given(matrices(3), hompolys(deg=2))
def test_linear_field_action_agrees_with_sympy(a, f):
    xs = sympy.symbols("x0:3")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod(v ** e for v, e in zip(xs, m))
               for m, c in f.terms.items())
    field = [sum(a[m][p] * xs[p] for p in range(3)) for m in range(3)]
    want = sympy.expand(sum(field[m] * sympy.diff(expr, xs[m]) for m in range(3)))
    got = apply_linvf(a, f)
    got_expr = sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod(v ** e for v, e in zip(xs, m))
                   for m, c in got.terms.items())
    assert sympy.expand(got_expr - want) == 0
    assert HomPoly.from_vector(3, 2, linvf_matrix(a, 3, 2).apply(f.to_vector())) == got


@settings(max_examples=25)
@given(matrices(3))
def test_det_agrees_with_sympy(m):
    assert det(m) == Fraction(str(sympy.Matrix(m).det()))


def test_poly_det_of_linear_frame():
    x, y, z = (HomPoly.var(3, i) for i in range(3))
    zero = HomPoly(3, 1)
    M = [[x, zero, zero], [zero, y, zero], [zero, zero, z]]
    assert poly_det(M, 3) == x * y * z
