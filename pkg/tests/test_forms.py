import pytest

from contactbir.algebra import Poly, Rat
from contactbir.errors import ArityError, ChartMismatch, DegreeOverflow
from contactbir.forms import (
    AFFINE,
    HOMOGENEOUS,
    DiffForm,
    VectorField,
    contract,
    d_var,
    eta,
    exterior_derivative,
    form_string,
    from_function,
    omega,
    omega_bar,
    pullback,
    reeb_field,
    theta_tilde,
    wedge,
    zero_form,
)
from contactbir.maps import affine_map, plane_map, homogenize, CONTACT_PLANE

z0 = Rat.var(0)
z1 = Rat.var(1)
z2 = Rat.var(2)


def test_construction_drops_zero_coefficients():
    f = DiffForm(1, AFFINE, {(0,): Rat.const(0), (1,): z0})
    assert list(f.coeffs) == [(1,)]
    assert f.coefficient((0,)).is_zero()


def test_construction_validates_indices():
    with pytest.raises(ArityError):
        DiffForm(2, AFFINE, {(1, 1): z0})
    with pytest.raises(ArityError):
        DiffForm(2, AFFINE, {(2, 1): z0})
    with pytest.raises(ChartMismatch):
        DiffForm(1, AFFINE, {(3,): z0})
    with pytest.raises(DegreeOverflow):
        DiffForm(4, AFFINE, {})


def test_homogeneous_chart_allows_z3():
    f = DiffForm(1, HOMOGENEOUS, {(3,): Rat.var(3)})
    assert f.coefficient((3,)) == Rat.var(3)
    with pytest.raises(ChartMismatch):
        DiffForm(1, AFFINE, {(0,): Rat.var(3)})


def test_addition_and_scaling():
    a = z1 * d_var(0)
    b = z0 * d_var(1)
    s = a + b
    assert s.coefficient((0,)) == z1
    assert s.coefficient((1,)) == z0
    assert (s - s).is_zero()
    assert (2 * a).coefficient((0,)) == 2 * z1


def test_wedge_antisymmetry():
    a = z1 * d_var(0) + z2 * d_var(2)
    b = z0 * d_var(1)
    assert wedge(a, b) == -wedge(b, a)
    assert wedge(a, a).is_zero()


def test_wedge_degree_overflow():
    vol = wedge(wedge(d_var(0), d_var(1)), d_var(2))
    assert vol.degree == 3
    with pytest.raises(DegreeOverflow):
        wedge(vol, d_var(0))


def test_exterior_derivative_of_function():
    f = from_function(z0 ** 2 * z1)
    df = exterior_derivative(f)
    assert df.coefficient((0,)) == 2 * z0 * z1
    assert df.coefficient((1,)) == z0 ** 2


def test_d_squared_is_zero_simple():
    f = from_function(Rat(Poly.var(0), Poly.var(1) + Poly.const(1)))
    assert exterior_derivative(exterior_derivative(f)).is_zero()
    theta = z2 * d_var(0) + z0 * z1 * d_var(1)
    assert exterior_derivative(exterior_derivative(theta)).is_zero()


def test_leibniz_rule_for_wedge():
    a = z2 * d_var(0)
    b = z0 * d_var(1)
    left = exterior_derivative(wedge(a, b))
    right = wedge(exterior_derivative(a), b) - wedge(a, exterior_derivative(b))
    assert left == right


def test_contract_with_field():
    field = VectorField((Rat.const(1), z0, Rat.const(0)))
    theta = z1 * d_var(0) + z2 * d_var(1) + d_var(2)
    assert contract(theta, field) == z1 + z0 * z2
    assert contract(d_var(0), VectorField((Rat.const(0), z1, Rat.const(0)))).is_zero()
    with pytest.raises(ArityError):
        contract(wedge(d_var(0), d_var(1)), field)


def test_reeb_direction():
    # the distinguished field pairs to 1 with the contact form
    r = reeb_field()
    assert contract(omega(), r) == Rat.const(1)
    assert r.components == (Rat.const(0), Rat.const(0), Rat.const(1))


def test_omega_and_eta_constants():
    w = omega()
    assert w.coefficient((1,)) == z0
    assert w.coefficient((2,)) == Rat.const(1)
    assert w.coefficient((0,)).is_zero()
    assert eta() == wedge(d_var(0), d_var(1))
    assert exterior_derivative(w) == eta()


def test_theta_tilde_is_closed_differently():
    # the symmetric counterpart is also a contact form: theta ^ d(theta) != 0
    t = theta_tilde()
    vol = wedge(t, exterior_derivative(t))
    assert not vol.is_zero()


def test_omega_bar_restricts_to_omega():
    # dehomogenizing at z3 = 1 recovers the affine contact form
    wbar = omega_bar()
    assert wbar.chart == HOMOGENEOUS
    one = Rat.const(1)
    sub = {3: one}
    affine_coeffs = {}
    for idx, coeff in wbar.coeffs.items():
        if 3 in idx:
            continue
        affine_coeffs[idx] = coeff.substitute(sub)
    assert affine_coeffs[(1,)] == z0
    assert affine_coeffs[(2,)] == one


def test_pullback_of_function_is_substitution():
    phi = affine_map(z1, z0, z2 + z0)
    f = from_function(z0 ** 2 + z2)
    assert pullback(phi, f) == from_function(z1 ** 2 + z2 + z0)


def test_pullback_linear_map_on_one_form():
    phi = affine_map(2 * z0, 3 * z1, z2)
    w = omega()
    p = pullback(phi, w)
    assert p.coefficient((1,)) == 6 * z0
    assert p.coefficient((2,)) == Rat.const(1)


def test_pullback_respects_wedge():
    phi = affine_map(z1, z0 + z1 ** 2, z2 - z0)
    a = z2 * d_var(0)
    b = z0 * d_var(1) + d_var(2)
    assert pullback(phi, wedge(a, b)) == wedge(pullback(phi, a), pullback(phi, b))


def test_pullback_commutes_with_d():
    phi = affine_map(z0 + z2, z1 * z0, z2)
    theta = z1 * d_var(0) + z0 * z2 * d_var(2)
    assert pullback(phi, exterior_derivative(theta)) == exterior_derivative(pullback(phi, theta))


def test_pullback_by_plane_map():
    psi = plane_map(z1, z0 + z1, CONTACT_PLANE)
    theta = z1 * d_var(0) + z0 * d_var(1)
    p = pullback(psi, theta)
    assert p.coefficient((0,)) == z1
    assert p.coefficient((1,)) == z0 + z1 + z1


def test_pullback_homogeneous():
    phi = affine_map(z1, z0, -z2 - z0 * z1)
    phi_bar = homogenize(phi)
    pulled = pullback(phi_bar, omega_bar())
    assert pulled.chart == HOMOGENEOUS
    # proportional to the extended form with a -z3^2-shaped factor absorbed
    assert not pulled.is_zero()


def test_chart_mismatch_on_pullback():
    phi = affine_map(z0, z1, z2)
    with pytest.raises(ChartMismatch):
        pullback(phi, omega_bar())


def test_form_string():
    w = omega()
    assert form_string(w) == "z0*dz1 + dz2"
    assert form_string(zero_form(1)) == "0"
    assert form_string(eta()) == "dz0^dz1"
    t = -z1 * d_var(0) + (z0 + z1) * d_var(1)
    assert form_string(t) == "-z1*dz0 + (z0 + z1)*dz1"
    assert form_string(from_function(z0)) == "z0"
