from __future__ import annotations

import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wormhole.qring import (
    NOT_LAURENT,
    A,
    D,
    LaurentPoly,
    PoleAtPoint,
    RatFn,
    field_arithmetic,
    poly_gcd,
)
from wormhole.recoupling import quantum_delta

laurent = st.dictionaries(st.integers(-12, 12), st.integers(-5, 5), max_size=5).map(LaurentPoly)
nonzero_laurent = laurent.filter(lambda p: not p.is_zero())
ratfn = st.builds(RatFn, laurent, nonzero_laurent)
nonzero_ratfn = st.builds(RatFn, nonzero_laurent, nonzero_laurent)


def test_laurent_basics():
    assert (A ** 2 + A ** -2).pretty() == "A^2 + A^-2"
    assert D.pretty() == "-A^2 - A^-2"
    assert (D * D).pretty() == "A^4 + 2 + A^-4"
    assert LaurentPoly({3: 0, 1: 2}).terms == {1: 2}
    assert LaurentPoly(0).is_zero() and LaurentPoly(0).terms == {}


def test_spec_arithmetic_examples():
    a2, am2 = RatFn.from_laurent(A ** 2), RatFn.from_laurent(A ** -2)
    assert field_arithmetic(a2, am2, "add") == RatFn.from_laurent(A ** 2 + A ** -2)
    d = RatFn.from_laurent(D)
    assert field_arithmetic(d, d, "mul").pretty() == "A^4 + 2 + A^-4"
    inv = field_arithmetic(RatFn(1), d, "div")
    assert inv.den.min_exp() == 0 and inv.den.coeff(inv.den.max_exp()) > 0
    assert inv.pretty() == "1/(-A^2 - A^-2)"
    with pytest.raises(ZeroDivisionError):
        field_arithmetic(d, RatFn(0), "div")


def test_canonical_form():
    x = RatFn(LaurentPoly({4: 2, 0: -2}), LaurentPoly({2: 4, 0: -4}))
    assert x == RatFn(LaurentPoly({2: 1, 0: 1}), LaurentPoly(2))
    assert x.den.min_exp() == 0
    assert RatFn(0, LaurentPoly({5: 3})).den == LaurentPoly(1)
    y = RatFn(LaurentPoly(1), LaurentPoly({1: -1, 0: 1}))
    assert y.den.coeff(y.den.max_exp()) > 0


def test_involute_examples():
    assert RatFn.from_laurent(A ** 3 + 2).involute() == RatFn.from_laurent(A ** -3 + 2)
    d = RatFn.from_laurent(D)
    assert d.involute() == d
    x = RatFn(1) / quantum_delta(2)
    assert x.involute() == x


def test_as_laurent_examples():
    x = RatFn(A ** 4 - 1, A ** 2 - 1)
    assert x.as_laurent() == A ** 2 + 1
    assert (RatFn(1) / RatFn.from_laurent(D)).as_laurent() is NOT_LAURENT
    assert (RatFn.from_laurent(D * D) / RatFn.from_laurent(D)).as_laurent() == D


def test_evaluate_examples():
    z = cmath.exp(1j * math.pi / 8)
    assert abs(RatFn.from_laurent(A ** 2).evaluate_at(z) - cmath.exp(1j * math.pi / 4)) < 1e-12
    with pytest.raises(PoleAtPoint):
        (RatFn(1) / quantum_delta(2)).evaluate_at(cmath.exp(1j * math.pi / 6))
    val = RatFn.from_laurent(D).evaluate_at(cmath.exp(1j * math.pi / 10))
    assert abs(val - (-2 * math.cos(math.pi / 5))) < 1e-12


def test_pretty_and_json():
    x = RatFn(A ** 6 - 1, A ** 2 + 3)
    assert RatFn.from_json(x.to_json()) == x
    assert x.to_json()["num"] == sorted(x.to_json()["num"])
    assert RatFn(0).pretty() == "0" and RatFn(1).pretty() == "1"
    assert LaurentPoly.from_list(LaurentPoly({-3: 2, 5: -1}).to_list()) == LaurentPoly({-3: 2, 5: -1})


def test_poly_gcd():
    # (x+1)(x-2) and (x+1)(x+3)
    assert poly_gcd([-2, -1, 1], [3, 4, 1]) == [1, 1]
    assert poly_gcd([], [0, -2]) == [0, 2]
    assert poly_gcd([6, 12], [4, 8]) == [2, 4]


@settings(max_examples=60, deadline=None)
@given(ratfn, ratfn, ratfn)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x - x == RatFn(0)


@settings(max_examples=60, deadline=None)
@given(nonzero_ratfn)
def test_inverse(x):
    assert x * x.inverse() == RatFn(1)
    assert x / x == RatFn(1)


@settings(max_examples=60, deadline=None)
@given(ratfn)
def test_canonical_idempotent(x):
    again = RatFn(x.num, x.den)
    assert again.num == x.num and again.den == x.den


@settings(max_examples=60, deadline=None)
@given(ratfn, ratfn)
def test_involute_automorphism(x, y):
    assert x.involute().involute() == x
    assert (x * y).involute() == x.involute() * y.involute()
    assert (x + y).involute() == x.involute() + y.involute()


laurent40 = st.dictionaries(st.integers(-40, 40), st.integers(-3, 3), max_size=6).map(LaurentPoly)


@settings(max_examples=60, deadline=None)
@given(laurent40, laurent40, st.floats(0.05, 3.1))
def test_evaluate_homomorphism(p, q, theta):
    z = cmath.exp(1j * theta) * 1.01
    x, y = RatFn.from_laurent(p), RatFn.from_laurent(q)
    scale = max(1.0, abs(x.evaluate_at(z)) * abs(y.evaluate_at(z)), abs(x.evaluate_at(z)) + abs(y.evaluate_at(z)))
    assert abs((x * y).evaluate_at(z) - x.evaluate_at(z) * y.evaluate_at(z)) <= 1e-10 * scale
    assert abs((x + y).evaluate_at(z) - (x.evaluate_at(z) + y.evaluate_at(z))) <= 1e-10 * scale


@settings(max_examples=60, deadline=None)
@given(ratfn, st.floats(0.05, 3.1))
def test_involute_is_conjugation_on_circle(x, theta):
    z = cmath.exp(1j * theta)
    try:
        v = x.evaluate_at(z)
    except PoleAtPoint:
        return
    w = x.involute().evaluate_at(z)
    assert abs(w - v.conjugate()) <= 1e-10 * max(1.0, abs(v))
