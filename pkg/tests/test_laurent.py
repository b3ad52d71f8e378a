import random
from fractions import Fraction

import pytest

from galeres.laurent import LaurentPolynomial, RationalFunction, TruncatedSeries

V = ("x", "y", "z")


def x():
    return LaurentPolynomial.variable(V, "x")


def y():
    return LaurentPolynomial.variable(V, "y")


def z():
    return LaurentPolynomial.variable(V, "z")


def rand_poly(rng, nterms=4, span=3):
    terms = {}
    for _ in range(nterms):
        e = tuple(rng.randint(-span, span) for _ in V)
        terms[e] = rng.randint(-5, 5)
    return LaurentPolynomial(V, terms)


def test_zero_coefficients_dropped():
    p = LaurentPolynomial(V, {(1, 0, 0): 1, (0, 1, 0): 0})
    assert len(p) == 1
    assert (p - p).is_zero


def test_add_mul_basics():
    p = x() + 2 * y()
    q = x() - 2 * y()
    assert p * q == x() * x() - 4 * y() * y()
    assert p + q == 2 * x()
    assert (p * 0).is_zero


def test_pow():
    p = x() + y()
    assert p ** 3 == x() ** 3 + 3 * x() ** 2 * y() + 3 * x() * y() ** 2 + y() ** 3
    assert p ** 0 == LaurentPolynomial.constant(V, 1)


def test_derivative_power_rule():
    p = LaurentPolynomial.monomial(V, (3, 0, 0), 2)
    assert p.derivative(0) == LaurentPolynomial.monomial(V, (2, 0, 0), 6)
    inv = LaurentPolynomial.monomial(V, (-1, 0, 0))
    assert inv.derivative(0) == LaurentPolynomial.monomial(V, (-2, 0, 0), -1)
    # second-order falling factorial on a negative exponent
    assert inv.derivative(0, 2) == LaurentPolynomial.monomial(V, (-3, 0, 0), 2)
    # derivative kills terms of exponent zero in the variable
    assert y().derivative(0).is_zero


def test_mixed_partials_commute():
    rng = random.Random(1)
    for _ in range(25):
        p = rand_poly(rng)
        assert p.derivative(0).derivative(1) == p.derivative(1).derivative(0)


def test_content_and_shift():
    p = LaurentPolynomial(V, {(2, 1, 0): 3, (1, 3, -1): 5})
    assert p.content_exponent() == (1, 1, -1)
    assert p.shift((0, 0, 1)).content_exponent() == (1, 1, 0)


def test_weight_restriction():
    p = LaurentPolynomial(V, {(1, 0, 0): 1, (2, 0, 0): 1, (3, 0, 0): 1})
    w = (1, 0, 0)
    assert p.weight_min(w) == 1
    assert p.restrict_weight(w, 2) == LaurentPolynomial(V, {(1, 0, 0): 1, (2, 0, 0): 1})


def test_evaluate_exact():
    p = x() * y() - z()
    assert p.evaluate((2, 3, 5)) == 1
    inv = LaurentPolynomial.monomial(V, (-1, 0, 0))
    assert inv.evaluate((2, 1, 1)) == Fraction(1, 2)


def test_json_round_trip():
    p = LaurentPolynomial(V, {(1, -2, 0): Fraction(3, 4), (0, 0, 0): -2})
    payload = p.to_json()
    assert payload["terms"][0]["exp"] == [0, 0, 0]
    assert LaurentPolynomial.from_json(payload) == p


def test_rational_content_reduction():
    f = RationalFunction(x() * y(), x() * x())
    # common monomial content x cancels
    assert f.num == y()
    assert f.den == x()


def test_rational_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        RationalFunction(x(), LaurentPolynomial.zero(V))


def test_rational_cross_multiplication_equality():
    one = LaurentPolynomial.constant(V, 1)
    f = RationalFunction(x() * x() - y() * y(), (x() - y()) * (x() + y()))
    assert f == RationalFunction(one, one)
    g = RationalFunction(x() + y(), x() - y())
    h = RationalFunction((x() + y()) * z(), (x() - y()) * z())
    assert g == h


def test_rational_arithmetic():
    one = LaurentPolynomial.constant(V, 1)
    f = RationalFunction(one, x())
    g = RationalFunction(one, y())
    s = f + g
    assert s == RationalFunction(x() + y(), x() * y())
    assert (f - f).is_zero
    assert f * g == RationalFunction(one, x() * y())
    assert (f / g) == RationalFunction(y(), x())


def test_rational_derivative_quotient_rule():
    one = LaurentPolynomial.constant(V, 1)
    f = RationalFunction(one, x() * y() * z())
    d = f.derivative(0)
    assert d == RationalFunction(-one, x() * x() * y() * z())
    # d/dx (x/(x+y)) = y/(x+y)^2
    g = RationalFunction(x(), x() + y())
    assert g.derivative(0) == RationalFunction(y(), (x() + y()) * (x() + y()))


def test_rational_operator_linearity():
    rng = random.Random(4)
    for _ in range(10):
        p1, p2, q = rand_poly(rng), rand_poly(rng), rand_poly(rng, nterms=2)
        if q.is_zero:
            continue
        f1 = RationalFunction(p1, q)
        f2 = RationalFunction(p2, q)
        assert (f1 + f2).derivative(1) == f1.derivative(1) + f2.derivative(1)


def test_truncated_series_agreement():
    w = (1, 1, 0)
    a = TruncatedSeries(LaurentPolynomial(V, {(0, 0, 0): 1, (1, 1, 0): 2}), w, 2)
    b = TruncatedSeries(
        LaurentPolynomial(V, {(0, 0, 0): 1, (1, 1, 0): 2, (2, 1, 0): 7}), w, 3
    )
    assert a.agrees_with(b)
    assert b.truncate(2).poly == a.poly
    with pytest.raises(ValueError):
        a.truncate(5)
