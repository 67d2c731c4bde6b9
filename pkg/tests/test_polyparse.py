"""The --poly mini-grammar: rational coefficients, variables x and t."""

from fractions import Fraction

import pytest

from smoothroots import (
    InputError,
    Jet,
    PolyCurve,
    parse_poly,
    poly_coeffs,
    poly_curve,
)

F = Fraction


def test_parse_monomials_and_signs():
    assert parse_poly("x^2-1") == {(2, 0): F(1), (0, 0): F(-1)}
    assert parse_poly("-x^2") == {(2, 0): F(-1)}
    assert parse_poly("x - -t") == {(1, 0): F(1), (0, 1): F(1)}
    assert parse_poly("x^3") == {(3, 0): F(1)}
    assert parse_poly("t^10") == {(0, 10): F(1)}


def test_parse_juxtaposition_equals_star():
    assert parse_poly("2x") == parse_poly("2*x") == {(1, 0): F(2)}
    assert parse_poly("3x t") == parse_poly("3*x*t") == {(1, 1): F(3)}
    assert parse_poly("2(x+1)") == {(1, 0): F(2), (0, 0): F(2)}


def test_parse_rational_literals():
    assert parse_poly("1/2 x^2 - 3/4") == {(2, 0): F(1, 2), (0, 0): F(-3, 4)}
    assert parse_poly("5/10") == {(0, 0): F(1, 2)}


def test_parse_products_expand():
    assert parse_poly("(x-t)(x+t)") == {(2, 0): F(1), (0, 2): F(-1)}
    assert parse_poly("(x+t)^2") == {(2, 0): F(1), (1, 1): F(2), (0, 2): F(1)}
    assert parse_poly("(x-1)(x-1)(x+2)") == parse_poly("x^3 - 3x + 2")


def test_parse_cancellation_drops_terms():
    assert parse_poly("x - x + t") == {(0, 1): F(1)}


@pytest.mark.parametrize("text", [
    "", "()", "x^^2", "x^(2)", "x^-2", "x^1/2", "3/0", "x/2", "x +", "(x",
    "x)", "2 + * x", "y + 1",
])
def test_parse_rejects_malformed(text):
    with pytest.raises(InputError):
        parse_poly(text)


def test_poly_coeffs_known_certificate_inputs():
    assert poly_coeffs("x^2-1").a == (F(0), F(-1))
    assert poly_coeffs("x^3-3x+2").a == (F(0), F(-3), F(-2))


def test_poly_coeffs_normalizes_the_lead():
    assert poly_coeffs("2x^2-2") == poly_coeffs("x^2-1")


@pytest.mark.parametrize("text,msg", [
    ("x - t", "polynomials in x only"),
    ("2", "positive degree in x"),
    ("t^2", "polynomials in x only"),
])
def test_poly_coeffs_rejections(text, msg):
    with pytest.raises(InputError, match=msg):
        poly_coeffs(text)


def test_poly_curve_matches_root_construction():
    t = Jet.variable(16)
    built = PolyCurve.from_root_jets([t, -t])
    assert poly_curve("(x-t)(x+t)", 16) == built
    assert poly_curve("x^2 - t^2", 16) == built


def test_poly_curve_normalizes_and_orders():
    curve = poly_curve("2x^2 - 2t^2", 8)
    assert curve == poly_curve("x^2 - t^2", 8)
    assert curve.order == 8
    assert curve.is_exact


def test_poly_curve_rejects_nonconstant_lead():
    with pytest.raises(InputError, match="monic|constant"):
        poly_curve("t x^2 - 1", 8)


def test_poly_curve_rejects_overflowing_t_degree():
    with pytest.raises(InputError, match="truncation order"):
        poly_curve("x - t^9", 8)
