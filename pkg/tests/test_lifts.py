from fractions import Fraction

import pytest

from contactbir.algebra import Poly, Rat, derive
from contactbir.errors import (
    ArityError,
    NotClosed,
    NotEtaPreserving,
    NotExact,
    NotPeriodic,
    NotPolynomialAutomorphism,
)
from contactbir.forms import d_var, omega, pullback
from contactbir.lifts import (
    ExactnessResult,
    exactness_test,
    finite_order_lift,
    hermite_reduce,
    lift_form,
    sigma_lift,
    sigma_lift_contact,
)
from contactbir.maps import CONTACT_PLANE, compose, identity_map, iterate, plane_map

z0 = Rat.var(0)
z1 = Rat.var(1)
z2 = Rat.var(2)


def test_hermite_polynomial_part():
    split = hermite_reduce(z0 ** 2 + z0, 0)
    assert split.remainder.is_zero()
    assert split.derivative_part.derive(0) == z0 ** 2 + z0


def test_hermite_reduces_double_pole():
    r = Rat(Poly.const(1), Poly.var(0) ** 2)
    split = hermite_reduce(r, 0)
    assert split.remainder.is_zero()
    assert split.derivative_part == Rat(Poly.const(-1), Poly.var(0))


def test_hermite_simple_pole_survives():
    r = Rat(Poly.const(1), Poly.var(0))
    split = hermite_reduce(r, 0)
    assert split.derivative_part.is_zero()
    assert split.remainder == r


def test_hermite_mixed_input():
    # quotient, double pole, and residue all at once
    x = z0
    r = x + Rat(Poly.const(3), (Poly.var(0) - Poly.const(1)) ** 2) + Rat(Poly.const(5), Poly.var(0) + Poly.const(2))
    split = hermite_reduce(r, 0)
    assert split.derivative_part.derive(0) + split.remainder == r
    # only the simple-pole part remains
    assert split.remainder == Rat(Poly.const(5), Poly.var(0) + Poly.const(2))


def test_hermite_parametrized_coefficients():
    # other variables ride along as constants of the reduction
    r = Rat(Poly.var(1), Poly.var(0) ** 3)
    split = hermite_reduce(r, 0)
    assert split.remainder.is_zero()
    assert split.derivative_part == Rat(-Poly.var(1), 2 * Poly.var(0) ** 2)


def test_exactness_total_differential():
    pot = Rat(Poly.var(0) * Poly.var(1), Poly.var(1) + Poly.const(1))
    theta = pot.derive(0) * d_var(0) + pot.derive(1) * d_var(1)
    res = exactness_test(theta)
    assert res.exact
    assert res.potential == pot
    assert res.witness is None


def test_exactness_potential_is_gauged_at_origin():
    theta = (2 * z0) * d_var(0) + d_var(1)
    res = exactness_test(theta)
    assert res.exact
    assert res.potential == z0 ** 2 + z1
    assert res.potential.evaluate((Fraction(0),) * 4) == 0


def test_exactness_residue_witness_first_stage():
    theta = Rat(Poly.const(1), Poly.var(0)) * d_var(0)
    res = exactness_test(theta)
    assert not res.exact
    assert res.witness_stage == 0
    assert res.witness == Rat(Poly.const(1), Poly.var(0))


def test_exactness_residue_witness_second_stage():
    theta = Rat(Poly.const(1), Poly.var(1)) * d_var(1)
    res = exactness_test(theta)
    assert not res.exact
    assert res.witness_stage == 1


def test_exactness_rejects_non_closed():
    theta = z1 * d_var(0)
    with pytest.raises(NotClosed):
        exactness_test(theta)


def test_exactness_rejects_extra_variables():
    with pytest.raises(ArityError):
        exactness_test(z2 * d_var(0))
    with pytest.raises(ArityError):
        exactness_test(z0 * d_var(2))


def test_lift_form_of_identity():
    theta = lift_form(identity_map("plane", CONTACT_PLANE))
    assert theta.coefficient((0,)).is_zero()
    assert theta.coefficient((1,)).is_zero()


def test_sigma_lift_henon():
    phi = plane_map(z1 + z0 ** 2, -z0, CONTACT_PLANE)
    lift = sigma_lift(phi)
    assert lift.components[2] == z0 ** 3 / 3 + z0 * z1 + z2
    assert pullback(lift, omega()) == omega()


def test_sigma_lift_requires_area_preservation():
    with pytest.raises(NotEtaPreserving):
        sigma_lift(plane_map(2 * z0, z1, CONTACT_PLANE))


def test_sigma_lift_not_exact_witness():
    phi = plane_map(-z0 + Rat.const(1) / (z1 ** 2 - 1), -z1, CONTACT_PLANE)
    with pytest.raises(NotExact) as info:
        sigma_lift(phi)
    res = info.value.result
    assert isinstance(res, ExactnessResult)
    target = Rat.const(1) / (z1 ** 2 - 1)
    assert res.witness in (target, -target)
    assert res.witness_stage == 1


def test_sigma_lift_contact_scaling():
    phi = plane_map(2 * z0, 3 * z1, CONTACT_PLANE)
    lift = sigma_lift_contact(phi)
    assert lift.components[2] == 6 * z2
    assert pullback(lift, omega()) == 6 * omega()


def test_sigma_lift_contact_shear():
    phi = plane_map(z0 + z1 ** 3, z1, CONTACT_PLANE)
    lift = sigma_lift_contact(phi)
    assert pullback(lift, omega()) == omega()


def test_sigma_lift_contact_rejects_rational_maps():
    with pytest.raises(NotPolynomialAutomorphism):
        sigma_lift_contact(plane_map(Rat(Poly.const(1), Poly.var(0)), z1, CONTACT_PLANE))
    with pytest.raises(NotPolynomialAutomorphism):
        sigma_lift_contact(plane_map(z0 * z1, z1, CONTACT_PLANE))


def test_finite_order_lift_quarter_turn():
    lift = finite_order_lift(plane_map(z1, -z0, CONTACT_PLANE), 4)
    assert iterate(lift, 4) == identity_map()
    for k in (1, 2, 3):
        assert iterate(lift, k) != identity_map()


def test_finite_order_lift_involution():
    lift = finite_order_lift(plane_map(-z0, -z1, CONTACT_PLANE), 2)
    assert iterate(lift, 2) == identity_map()
    assert pullback(lift, omega()) == omega()


def test_finite_order_lift_wrong_order():
    with pytest.raises(NotPeriodic):
        finite_order_lift(plane_map(z1, -z0, CONTACT_PLANE), 3)
    with pytest.raises(NotPeriodic):
        # order 2 understates the true period 4
        finite_order_lift(plane_map(z1, -z0, CONTACT_PLANE), 2)
    with pytest.raises(NotPeriodic):
        # order 8 overstates it; the identity shows up too early
        finite_order_lift(plane_map(z1, -z0, CONTACT_PLANE), 8)


def test_finite_order_lift_rejects_nonpositive_order():
    with pytest.raises(ArityError):
        finite_order_lift(plane_map(z1, -z0, CONTACT_PLANE), 0)
