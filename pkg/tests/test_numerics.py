from __future__ import annotations

import cmath
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kleinquandle import numerics as nm
from kleinquandle.errors import (
    DivisionByZero,
    ExactModeUnsupported,
    MixedField,
    MixedMode,
    NonFinite,
)
from kleinquandle.numerics import CC, QuadraticField, QuadScalar

from conftest import quad, rationals


def test_sum_in_q_sqrt_minus3(F3):
    assert F3(1, 0) + F3(0, 1) == F3(1, 1)


def test_float_inverse():
    assert nm.inv(2 + 0j) == 0.5 + 0j


@given(rationals, rationals)
def test_norm_identity(a, b):
    F = QuadraticField(-3)
    assert F(a, b) * F(a, -b) == F(a * a + 3 * b * b)


def test_scalar_eq_examples(Fi):
    assert nm.scalar_eq(1 + 0j, 1 + 0j, 1e-9)
    assert nm.scalar_eq(1 + 0j, 1 + 1e-12j, 1e-9)
    assert not nm.scalar_eq(1 + 0j, 1 + 1e-6j, 1e-9)
    assert nm.scalar_eq(Fi(Fraction(1, 2)), Fi(Fraction(2, 4)))


def test_canonical_form_is_lowest_terms():
    x = QuadScalar(Fraction(2, 4), Fraction(6, 8), -3)
    assert (x.p, x.q, x.n) == (2, 3, 4)
    assert x.a == Fraction(1, 2) and x.b == Fraction(3, 4)
    y = QuadScalar(Fraction(-3, 6), 0, -3)
    assert y.n > 0 and y.key() == (-1, 0, 2)


def test_strings_parse_as_rationals(F3):
    assert F3("1/2", "-3/4") == F3(Fraction(1, 2), Fraction(-3, 4))


@pytest.mark.parametrize(
    "x, root",
    [(4, 2), (-1, 1j), (2j, 1 + 1j), (-4, 2j), (0, 0)],
)
def test_sqrt_principal(x, root):
    assert abs(nm.sqrt_principal(complex(x)) - root) < 1e-12


def test_sqrt_principal_branch_on_negative_zero_imag():
    r = nm.sqrt_principal(complex(-1.0, -0.0))
    assert r == 1j
    assert nm.principal_sign(r) == 1


def test_sqrt_random_squares_back():
    rng = random.Random(7)
    for _ in range(1000):
        x = complex(rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3))
        r = nm.sqrt_principal(x)
        assert abs(r * r - x) <= 4 * nm.EPS * max(1.0, abs(x))
        assert r.real > 0 or (r.real == 0 and r.imag >= 0)


def test_exact_sqrt_perfect_squares(Fi, F3):
    assert nm.sqrt(Fi(4)) == Fi(2)
    assert nm.sqrt(Fi(-1)) == Fi(0, 1)
    assert nm.sqrt(Fi(0, 2)) == Fi(1, 1)
    # omega^2 = omega-bar in Q(sqrt -3); the principal root of -3 is sqrt(-3)
    assert nm.sqrt(F3(-3)) == F3(0, 1)
    w = F3(Fraction(-1, 2), Fraction(1, 2))
    r = nm.sqrt(w * w)
    assert r * r == w * w and nm.principal_sign(r) == 1


def test_exact_sqrt_refuses_to_leave_field(Fi):
    with pytest.raises(ExactModeUnsupported):
        nm.sqrt(Fi(2))
    with pytest.raises(ExactModeUnsupported):
        nm.sqrt_principal(Fi(4))


@given(quad(-3), quad(-3), quad(-3))
def test_field_axioms_exact(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    if not x.is_zero():
        assert x * x.inv() == x.field.one
        assert (y / x) * x == y


@given(quad(5), quad(5))
def test_real_quadratic_field(x, y):
    assert (x - y) + y == x
    if not x.is_zero():
        assert x * nm.inv(x) == QuadraticField(5).one
    assert abs(complex(x * y) - complex(x) * complex(y)) < 1e-6 * (1 + abs(complex(x * y)))


@given(quad(5))
def test_real_sign_exact_matches_float(x):
    v = complex(x).real
    if abs(v) > 1e-9:
        assert x.real_sign() == (1 if v > 0 else -1)


@given(quad(-3), quad(-3), quad(-3), quad(-3))
def test_dot2_matches_mul_add(w, x, y, z):
    assert w.dot2(x, y, z) == w * x + y * z


def test_dot2_field_mismatch(Fi, F3):
    with pytest.raises(MixedField):
        Fi(1).dot2(Fi(1), F3(1), Fi(1))


def test_equality_is_equivalence_relation(F3):
    xs = [F3(Fraction(k, 2), 1) for k in range(-2, 3)] + [F3(Fraction(2 * k, 4), 1) for k in range(-2, 3)]
    for x in xs:
        assert x == x
        for y in xs:
            assert (x == y) == (y == x)
            for z in xs:
                if x == y and y == z:
                    assert x == z
    assert len({hash(x) for x in xs}) == 5


def test_conjugate_and_abs2(Fi):
    z = Fi(3, 4)
    assert z.conjugate() == Fi(3, -4)
    assert z.abs2() == Fi(25)


def test_mixed_mode_and_field_errors(Fi, F3):
    with pytest.raises(MixedMode):
        _ = Fi(1) + 1.5
    with pytest.raises(MixedMode):
        nm.add(Fi(1), 1j)
    with pytest.raises(MixedField):
        _ = Fi(1) + F3(1)
    with pytest.raises(MixedField):
        nm.field_of(Fi(1), F3(1))
    with pytest.raises(MixedMode):
        Fi(0.5)


def test_int_and_fraction_coerce(Fi):
    assert Fi(1) + 1 == Fi(2)
    assert Fraction(1, 2) * Fi(4) == Fi(2)
    assert 1 - Fi(0, 1) == Fi(1, -1)
    assert 1 / Fi(2) == Fi(Fraction(1, 2))


def test_division_by_zero(Fi):
    with pytest.raises(DivisionByZero):
        Fi(0).inv()
    with pytest.raises(DivisionByZero):
        nm.inv(0j)
    assert issubclass(DivisionByZero, ZeroDivisionError)


def test_non_finite_rejected():
    with pytest.raises(NonFinite):
        CC(float("nan"))
    with pytest.raises(NonFinite):
        CC(complex(1, float("inf")))


def test_field_cache_and_validation():
    assert QuadraticField(-3) is QuadraticField(-3)
    for bad in (0, 1, 4, -4, 12):
        with pytest.raises(ValueError):
            QuadraticField(bad)


def test_principal_sign_exact(Fi):
    assert nm.principal_sign(Fi(0, 1)) == 1
    assert nm.principal_sign(Fi(0, -1)) == -1
    assert nm.principal_sign(Fi(-1, 5)) == -1
    assert nm.principal_sign(Fi(0)) == 0


def test_format_scalar(Fi, F3):
    assert nm.format_scalar(2 + 0j) == "2"
    assert nm.format_scalar(1 - 2j) == "1-2i"
    assert str(Fi(0, 1)) == "i"
    assert nm.format_scalar(F3(2)) == "2"


@given(st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False))
def test_complex_of_exact_agrees(z):
    Fi = QuadraticField(-1)
    x = Fi(Fraction(z.real).limit_denominator(1000), Fraction(z.imag).limit_denominator(1000))
    assert cmath.isclose(complex(x), complex(float(x.a), float(x.b)), abs_tol=1e-12)
