from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lieinvar.poly import Polynomial, RationalFunction, format_polynomial, monomials_of_degree, parse_polynomial

VARS = ("x", "y", "h", "v0", "v1")

coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=7)
monos = st.tuples(*[st.integers(0, 3)] * len(VARS))
polys = st.dictionaries(monos, coeffs, max_size=6).map(lambda t: Polynomial(VARS, t))
points = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=5), min_size=len(VARS), max_size=len(VARS))


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Polynomial.zero(VARS)
    assert a * Polynomial.constant(VARS, 1) == a


@given(polys, polys, st.sampled_from(VARS))
def test_leibniz(a, b, name):
    assert (a * b).diff(name) == a.diff(name) * b + a * b.diff(name)


@given(polys)
def test_format_parse_round_trip(p):
    assert parse_polynomial(format_polynomial(p), VARS) == p


@given(polys, polys, points)
def test_evaluation_is_a_ring_homomorphism(a, b, pt):
    point = dict(zip(VARS, pt))
    assert (a * b).evaluate(point) == a.evaluate(point) * b.evaluate(point)
    assert (a + b).evaluate(point) == a.evaluate(point) + b.evaluate(point)


@given(polys, polys)
def test_exact_division_recovers_factor(a, b):
    if not b:
        return
    assert (a * b).divide_exact(b) == a


def test_degree_conventions():
    z = Polynomial.zero(VARS)
    assert z.degree() == -1
    p = parse_polynomial("x^2*y + 3*v0 - 1", VARS)
    assert p.degree() == 3
    assert p.degree_in("x") == 2
    assert not p.is_homogeneous()
    assert p.homogeneous_part(1) == parse_polynomial("3*v0", VARS)
    assert p.constant_term() == -1


def test_printing_is_grlex():
    p = parse_polynomial("v1^2 - 4*v0*v2", ("v0", "v1", "v2"))
    assert str(p) == "-4*v0*v2 + v1^2"
    assert str(p.primitive()) == "4*v0*v2 - v1^2"
    assert str(parse_polynomial("1/2*x - 3/4", ("x",))) == "1/2*x - 3/4"


def test_primitive_normal_form():
    p = parse_polynomial("-6*x*y + 9/2*h^2", ("x", "y", "h"))
    q = p.primitive()
    assert q.leading_coefficient() > 0
    assert all(c.denominator == 1 for c in q.terms.values())
    assert q == parse_polynomial("4*x*y - 3*h^2", ("x", "y", "h"))


def test_parse_rejects_unknown_and_bad_input():
    with pytest.raises(ValueError):
        parse_polynomial("z + 1", VARS)
    with pytest.raises(ValueError):
        parse_polynomial("x/y", VARS)
    with pytest.raises(ValueError):
        parse_polynomial("x^-1", VARS)
    with pytest.raises(ValueError):
        parse_polynomial("x +", VARS)


def test_mixing_contexts_is_an_error():
    a = Polynomial.var(("x", "y"), "x")
    b = Polynomial.var(("x", "z"), "x")
    with pytest.raises(ValueError, match="context"):
        a + b


def test_evaluate_needs_every_variable():
    p = parse_polynomial("x + y", ("x", "y"))
    with pytest.raises((KeyError, ValueError)):
        p.evaluate({"x": 1})


def test_monomials_of_degree_count_and_order():
    ms = monomials_of_degree(3, 2)
    assert len(ms) == 6
    assert ms[0] == (2, 0, 0)
    assert ms[-1] == (0, 0, 2)


def test_rational_function_arithmetic():
    V = ("x", "y")
    x, y = Polynomial.var(V, "x"), Polynomial.var(V, "y")
    f = RationalFunction(x * x - y * y, x + y)
    assert f == RationalFunction(x - y)
    g = RationalFunction(Polynomial.constant(V, 1), x)
    assert (g + g) == RationalFunction(Polynomial.constant(V, 2), x)
    assert (g * RationalFunction(x)).is_zero() is False
    assert (g - g).is_zero()
    # d/dx (1/x) = -1/x^2
    assert g.diff("x") == RationalFunction(Polynomial.constant(V, -1), x * x)
    assert g.evaluate({"x": Fraction(2), "y": Fraction(0)}) == Fraction(1, 2)
    with pytest.raises(ZeroDivisionError):
        RationalFunction(x, Polynomial.zero(V))
