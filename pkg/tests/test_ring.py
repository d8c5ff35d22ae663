import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meshtorsion.cyclotomic import Cyclotomic
from meshtorsion.errors import NotAUnit, OrderOne, SingularEvaluation
from meshtorsion.ring import (
    ONE,
    U,
    LaurentPoly,
    LocalSystem,
    RingElem,
    Unit,
    UnitUpToSign,
    eval_complex,
    eval_cyclotomic,
    eval_rational,
    is_unit,
    parse_ring,
    render_ring,
)
from strategies import ring_elems, units

ONE_MINUS_U = RingElem.one_minus_u()


def test_localization_inverts_one_minus_u():
    assert ONE_MINUS_U * ONE_MINUS_U.inverse() == 1
    assert U * U.inverse() == 1


def test_t0_entry():
    a, b = U, ONE
    assert ONE - U + b * a == 1
    assert ONE * (-b) == -1


def test_canonical_form_divides_out():
    x = RingElem(LaurentPoly({0: 1, 1: -1}), 1)
    assert x == ONE
    assert x.denom_pow == 0
    y = RingElem(LaurentPoly({0: 1, 2: -1}), 3)  # (1-u)(1+u) / (1-u)^3
    assert y.denom_pow == 2
    assert y.numerator == LaurentPoly({0: 1, 1: 1})


def test_negative_denominator_power_moves_up():
    assert RingElem(1, -2) == ONE_MINUS_U * ONE_MINUS_U


@pytest.mark.parametrize(
    "x, expected",
    [
        (ONE_MINUS_U, Unit(1, 0, 1)),
        (RingElem.unit(-1, 3, 2), Unit(-1, 3, 2)),
        (-(U**3) * ONE_MINUS_U**2, Unit(-1, 3, 2)),
        (ONE_MINUS_U.inverse() * U**-2, Unit(1, -2, -1)),
        (ONE, Unit(1, 0, 0)),
    ],
)
def test_is_unit_reads_exponents(x, expected):
    assert is_unit(x) == expected


@pytest.mark.parametrize("x", [ONE + U, RingElem(2), RingElem(0), ONE + U + U * U, RingElem({0: 2, 1: -1})])
def test_non_units(x):
    assert is_unit(x) is None
    with pytest.raises(NotAUnit):
        x.inverse()


def test_non_unit_oracle_at_minus_one():
    # u -> -1 is a ring map R -> Q; it kills 1 + u, so 1 + u has no inverse
    assert eval_rational(ONE + U, -1) == 0
    assert eval_rational(ONE_MINUS_U.inverse(), -1) == Fraction(1, 2)


@settings(max_examples=200)
@given(ring_elems)
def test_units_never_vanish_under_rational_maps(x):
    if is_unit(x) is not None:
        for at in (-1, 2, Fraction(1, 3)):
            assert eval_rational(x, at) != 0


@settings(max_examples=200)
@given(ring_elems, ring_elems)
def test_unit_multiplicativity(x, y):
    ux, uy, uxy = is_unit(x), is_unit(y), is_unit(x * y)
    assert (uxy is not None) == (ux is not None and uy is not None)
    if uxy is not None:
        assert (uxy.a, uxy.b, uxy.sign) == (ux.a + uy.a, ux.b + uy.b, ux.sign * uy.sign)


@given(units)
def test_unit_round_trip(x):
    unit = is_unit(x)
    assert RingElem.unit(*unit) == x
    assert x * x.inverse() == ONE


@settings(max_examples=200)
@given(ring_elems)
def test_canonical_form_idempotent(x):
    again = RingElem(x.numerator, x.denom_pow)
    assert again == x
    assert RingElem(again.numerator, again.denom_pow) == again
    if x.denom_pow:
        assert x.numerator.value_at_one() != 0


@settings(max_examples=200)
@given(ring_elems, ring_elems, ring_elems)
def test_ring_axioms(x, y, z):
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == 0


@settings(max_examples=200)
@given(ring_elems, ring_elems, st.sampled_from((2, 3, 4, 5, 6, 7, 12)))
def test_eval_cyclotomic_is_homomorphism(x, y, n):
    ex, ey = eval_cyclotomic(x, n), eval_cyclotomic(y, n)
    assert eval_cyclotomic(x * y, n) == ex * ey
    assert eval_cyclotomic(x + y, n) == ex + ey


@settings(max_examples=100)
@given(ring_elems, st.sampled_from((3, 5, 7, 8)))
def test_eval_cyclotomic_matches_floating_point(x, n):
    exact = eval_cyclotomic(x, n).to_complex()
    approx = eval_complex(x, 2 * math.pi / n)
    assert abs(exact - approx) <= 1e-9 * max(1.0, abs(approx))


def test_eval_cyclotomic_examples():
    assert eval_cyclotomic(ONE_MINUS_U, LocalSystem(3)).coeffs == (1, -1)
    assert eval_cyclotomic(U**3, 3) == 1
    assert eval_cyclotomic(ONE_MINUS_U.inverse(), 2) == Fraction(1, 2)
    with pytest.raises(OrderOne):
        eval_cyclotomic(ONE_MINUS_U, 1)


def test_local_system_convention_is_locked():
    assert LocalSystem(5).fiber_exp == -1
    with pytest.raises(ValueError):
        LocalSystem(5, fiber_exp=1)
    with pytest.raises(ValueError):
        LocalSystem(0)


def test_eval_complex_examples():
    assert abs(eval_complex(ONE_MINUS_U, math.pi) - 2) < 1e-12
    assert abs(eval_complex(U, math.pi / 2) - 1j) < 1e-12
    for theta in (1e-2, 1e-3, 1e-4):
        assert abs(abs(eval_complex(ONE_MINUS_U, theta)) - theta) < theta**2
    with pytest.raises(SingularEvaluation):
        eval_complex(ONE_MINUS_U.inverse(), 0.0)
    with pytest.raises(SingularEvaluation):
        eval_complex(U, 2 * math.pi)


def test_unit_up_to_sign_group():
    a = UnitUpToSign(2, -1)
    b = UnitUpToSign(-1, 3)
    assert a * b == UnitUpToSign(1, 2)
    assert a * a.inverse() == UnitUpToSign(0, 0)
    assert a**3 == UnitUpToSign(6, -3)
    assert a.to_ring() == U**2 * ONE_MINUS_U.inverse()
    assert is_unit(-a.to_ring()).up_to_sign == a


@settings(max_examples=200)
@given(ring_elems)
def test_render_parse_round_trip(x):
    assert parse_ring(render_ring(x)) == x


def test_render_examples():
    assert render_ring(ONE_MINUS_U.inverse()) == "(1)*(1-u)^-1"
    assert render_ring(RingElem({-2: 3, 0: -1, 1: 1})) == "3*u^-2 - 1 + u"
    assert parse_ring("3*u^-2 - 1 + u") == RingElem({-2: 3, 0: -1, 1: 1})
    with pytest.raises(ValueError):
        parse_ring("1 + + u")
