import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meshtorsion.cyclotomic import (
    Cyclotomic,
    cyc_equal_up_to_sign,
    cyclotomic_polynomial,
    parse_cyclotomic,
    render_cyclotomic,
    totient,
)
from strategies import cyclotomics


@pytest.mark.parametrize(
    "n, coeffs",
    [
        (1, (-1, 1)),
        (2, (1, 1)),
        (3, (1, 1, 1)),
        (4, (1, 0, 1)),
        (5, (1, 1, 1, 1, 1)),
        (6, (1, -1, 1)),
        (8, (1, 0, 0, 0, 1)),
        (12, (1, 0, -1, 0, 1)),
    ],
)
def test_cyclotomic_polynomials(n, coeffs):
    assert cyclotomic_polynomial(n) == coeffs


@pytest.mark.parametrize("n", range(1, 40))
def test_degree_is_totient(n):
    assert len(cyclotomic_polynomial(n)) - 1 == totient(n)
    assert len(Cyclotomic(n, [0] * 50 + [1]).coeffs) <= totient(n)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 7, 9, 12, 15])
def test_zeta_has_order_n(n):
    z = Cyclotomic.zeta(n)
    assert z**n == 1
    for k in range(1, n):
        assert z**k != 1
    assert Cyclotomic.zeta(n, -1) == z.inverse()


@settings(max_examples=100)
@given(st.sampled_from((3, 5, 7, 12)).flatmap(lambda n: st.tuples(cyclotomics(n), cyclotomics(n))))
def test_product_matches_floating_point(pair):
    x, y = pair
    assert abs((x * y).to_complex() - x.to_complex() * y.to_complex()) < 1e-9 * (1 + abs(x.to_complex() * y.to_complex()))


@settings(max_examples=100)
@given(st.sampled_from((2, 3, 5, 8, 9, 12)).flatmap(cyclotomics))
def test_inverse(x):
    if x.is_zero():
        with pytest.raises(ZeroDivisionError):
            x.inverse()
    else:
        assert x * x.inverse() == 1


@settings(max_examples=100)
@given(st.sampled_from((3, 5, 12)).flatmap(cyclotomics))
def test_render_round_trip(x):
    assert parse_cyclotomic(render_cyclotomic(x), x.order) == x


def test_render_examples():
    z = Cyclotomic.zeta(5)
    assert render_cyclotomic(1 - z) == "1 - z"
    assert render_cyclotomic(z**2 * Fraction(3, 2) - 2) == "-2 + 3/2*z^2"
    assert render_cyclotomic(Cyclotomic(5)) == "0"


def test_equal_up_to_sign_examples():
    z3 = Cyclotomic.zeta(3)
    assert not cyc_equal_up_to_sign(1 - z3, 1 - z3.inverse())
    z2 = Cyclotomic.zeta(2)
    assert cyc_equal_up_to_sign(1 - z2, 1 - z2.inverse())
    assert 1 - z2 == 2
    x = 3 - z3 * 2
    assert cyc_equal_up_to_sign(x, -x)


@pytest.mark.parametrize("n", range(3, 25))
def test_sign_of_exponent_is_visible_for_n_at_least_3(n):
    z = Cyclotomic.zeta(n)
    assert not cyc_equal_up_to_sign(1 - z, 1 - z.inverse())
    # the two differ by the unit -z^-1
    assert 1 - z.inverse() == -(z.inverse()) * (1 - z)


def test_mixing_orders_is_an_error():
    with pytest.raises(ValueError):
        Cyclotomic.zeta(3) + Cyclotomic.zeta(5)
