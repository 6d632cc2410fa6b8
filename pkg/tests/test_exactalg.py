from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from logbundle.errors import DescriptorMismatch, DivisionByZero, IndexOutOfRange, ParseError
from logbundle.exactalg import (
    QQ,
    PrimeField,
    evaluate_hom,
    field_arithmetic,
    field_from_descriptor,
    partial_derivative,
    plane_ring,
)

from strategies import field_and_values, forms


def test_inverse_mod_5():
    F5 = PrimeField(5)
    assert field_arithmetic(F5(2), None, "inv") == F5(3)


def test_rational_sum_is_reduced():
    s = field_arithmetic(QQ(Fraction(1, 2)), QQ(Fraction(1, 3)), "add")
    assert str(s) == "5/6"


@pytest.mark.parametrize("field", [QQ, PrimeField(7)])
def test_inverse_of_zero(field):
    with pytest.raises(DivisionByZero):
        field_arithmetic(field(0), None, "inv")


def test_mixed_descriptors():
    with pytest.raises(DescriptorMismatch):
        field_arithmetic(PrimeField(5)(1), PrimeField(7)(1), "add")


def test_canonical_forms():
    assert str(QQ(Fraction(6, -4))) == "-3/2"
    assert str(PrimeField(7)(-1)) == "6"
    assert PrimeField(7) is PrimeField(7)


@pytest.mark.parametrize("bad", [1, 4, 0, -3, 91])
def test_non_prime_rejected(bad):
    with pytest.raises(ValueError):
        PrimeField(bad)


def test_descriptors_round_trip():
    for F in (QQ, PrimeField(101)):
        assert field_from_descriptor(F.descriptor()) is F
    assert field_from_descriptor("F_101") is PrimeField(101)
    with pytest.raises(ParseError):
        field_from_descriptor("R")


@given(field_and_values())
def test_field_axioms(fv):
    F, (a, b, c) = fv
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a + (-a) == F(0)
    if a:
        assert a * a.inv() == F(1)


def test_partial_of_conic(R):
    f = R.parse("x0^2 + x1*x2")
    assert partial_derivative(f, 0) == R.parse("2*x0")


def test_partial_out_of_range(R):
    with pytest.raises(IndexOutOfRange):
        partial_derivative(R.parse("x0"), 3)


def test_euler_on_product(R):
    f = R.parse("x0*x1")
    x = R.gens()
    assert x[0] * f.derivative(0) + x[1] * f.derivative(1) == f * 2


def test_symmetric_form_partial(R):
    # f3 = sum a_ij x_i x_j with a02 = 2, a12 = -1, a22 = 5
    f3 = R.parse("x0^2 + 4*x0*x2 - 2*x1*x2 + 5*x2^2 + 3*x1^2")
    assert f3.derivative(2) == R.parse("2*(2*x0 - x1 + 5*x2)")


def test_evaluate_examples():
    R = plane_ring(QQ)
    assert evaluate_hom(R.parse("x0^2 + x1^2"), [1, 2, 0]) == QQ(5)
    F5 = PrimeField(5)
    S = plane_ring(F5)
    assert evaluate_hom(S.parse("x0*x1*x2"), [1, 1, 0]) == F5(0)
    with pytest.raises(DescriptorMismatch):
        evaluate_hom(S.parse("x0"), [PrimeField(7)(1), 0, 0])


@given(forms(), st.integers(-5, 5), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_homogeneity(f, lam, pt):
    lhs = evaluate_hom(f, [lam * v for v in pt])
    assert lhs == evaluate_hom(f, pt) * QQ(lam) ** f.degree()


@given(forms())
def test_euler_relation(f):
    x = f.ring.gens()
    lhs = sum((x[i] * f.derivative(i) for i in range(3)), f.ring.zero())
    assert lhs == f * f.degree()


@given(forms(), forms())
def test_leibniz(f, g):
    for i in range(3):
        assert (f * g).derivative(i) == f * g.derivative(i) + g * f.derivative(i)


@given(forms(max_degree=5))
def test_print_parse_round_trip(f):
    assert f.ring.parse(str(f)) == f
    assert (f - f).terms == {}


@given(forms(field=PrimeField(7)))
def test_print_parse_round_trip_mod_p(f):
    assert f.ring.parse(str(f)) == f


def test_grlex_term_order(R):
    assert str(R.parse("x2^2 + x0*x1 + x1^2 + x0^2")) == "x0^2 + x0*x1 + x1^2 + x2^2"


def test_parse_errors(R):
    for bad in ("x0 +", "x3", "2**", "x0^-1"):
        with pytest.raises(ParseError):
            R.parse(bad)


def test_zero_polynomial_has_no_terms(R):
    z = R.zero()
    assert z.is_zero() and not z.terms and str(z) == "0"


@pytest.mark.parametrize("field", [QQ, PrimeField(101), PrimeField(2)])
def test_field_axioms_bulk(field, rng):
    def draw():
        if field.characteristic:
            return field(rng.randrange(field.p))
        return field(Fraction(rng.randint(-99, 99), rng.randint(1, 99)))

    for _ in range(10_000):
        a, b, c = draw(), draw(), draw()
        assert a * (b + c) == a * b + a * c
        assert (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
        if a:
            assert a * a.inv() == field(1)


def test_euler_bulk(rng):
    from logbundle.arrangement import random_form

    R = plane_ring(QQ)
    x = R.gens()
    for _ in range(1000):
        f = random_form(R, rng.randint(1, 5), rng)
        assert sum((x[i] * f.derivative(i) for i in range(3)), R.zero()) == f * f.degree()
