"""Exactness testing and the three lifts of plane maps to contact maps.

A plane map preserving the area form lifts to a contact map of 3-space
exactly when the 1-form z0*dz1 - c0*d(c1) has a rational potential.  The
test runs a two-stage Hermite reduction, first in z0 then in z1; whatever
proper remainder with squarefree denominator survives a stage is returned
as the obstruction witness, since a derivative of a rational function can
never leave such a remainder.

The univariate helpers below work on dense coefficient lists over the
field of rational functions in the remaining variables, which keeps the
Euclidean algorithms textbook-simple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Poly, Rat
from .errors import (
    ArityError,
    DivisionByZero,
    InternalCheckError,
    NotClosed,
    NotEtaPreserving,
    NotExact,
    NotPeriodic,
    NotPolynomialAutomorphism,
)
from .forms import AFFINE, DiffForm, omega, pullback
from .maps import (
    CONTACT_PLANE,
    PLANE,
    affine_map,
    compose,
    identity_map,
    iterate,
    jacobian_det,
    rebind_plane,
)


# ---------------------------------------------------------------------------
# univariate polynomials over the rational-function field
#
# representation: dense list of Rat coefficients, index = degree, no
# trailing zeros, [] is the zero polynomial


def _u_norm(u):
    while u and u[-1].is_zero():
        u.pop()
    return u


def _u_add(a, b):
    n = max(len(a), len(b))
    out = []
    zero = Rat.const(0)
    for i in range(n):
        x = a[i] if i < len(a) else zero
        y = b[i] if i < len(b) else zero
        out.append(x + y)
    return _u_norm(out)


def _u_neg(a):
    return [-c for c in a]


def _u_sub(a, b):
    return _u_add(a, _u_neg(b))


def _u_scale(a, s):
    if s.is_zero():
        return []
    return [c * s for c in a]


def _u_mul(a, b):
    if not a or not b:
        return []
    out = [Rat.const(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _u_norm(out)


def _u_divmod(a, b):
    if not b:
        raise InternalCheckError("univariate division by zero")
    rem = list(a)
    quot = [Rat.const(0)] * max(0, len(a) - len(b) + 1)
    inv_lead = Rat.const(1) / b[-1]
    while len(rem) >= len(b):
        factor = rem[-1] * inv_lead
        shift = len(rem) - len(b)
        quot[shift] = factor
        for i, c in enumerate(b):
            rem[shift + i] = rem[shift + i] - factor * c
        _u_norm(rem)
        if len(rem) > shift + len(b) - 1:
            raise InternalCheckError("univariate division failed to reduce")
    return _u_norm(quot), rem


def _u_monic(a):
    if not a:
        return a
    inv = Rat.const(1) / a[-1]
    return [c * inv for c in a]


def _u_gcd(a, b):
    a, b = list(a), list(b)
    while b:
        _, r = _u_divmod(a, b)
        a, b = b, r
    return _u_monic(a)


def _u_ext(a, b):
    """Extended Euclid; returns monic g and s, t with s*a + t*b = g."""
    one, zero = [Rat.const(1)], []
    r0, r1 = list(a), list(b)
    s0, s1 = one, zero
    t0, t1 = zero, [Rat.const(1)]
    while r1:
        q, r = _u_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _u_sub(s0, _u_mul(q, s1))
        t0, t1 = t1, _u_sub(t0, _u_mul(q, t1))
    if not r0:
        raise InternalCheckError("extended gcd of two zero polynomials")
    inv = Rat.const(1) / r0[-1]
    return _u_scale(r0, inv), _u_scale(s0, inv), _u_scale(t0, inv)


def _u_derive(a):
    return _u_norm([a[k] * Fraction(k) for k in range(1, len(a))])


def _u_integrate(a):
    return [Rat.const(0)] + [a[k] * Fraction(1, k + 1) for k in range(len(a))]


def _u_squarefree_monic(b):
    """Yun decomposition of a monic univariate; list of (monic factor, mult)."""
    db = _u_derive(b)
    g = _u_gcd(b, db)
    if len(g) == 1:
        return [(b, 1)]
    out = []
    w, _ = _u_divmod(b, g)
    y, _ = _u_divmod(db, g)
    i = 1
    while len(w) > 1:
        z = _u_sub(y, _u_derive(w))
        f = _u_gcd(w, z)
        if len(f) > 1:
            out.append((f, i))
        w, _ = _u_divmod(w, f)
        y, _ = _u_divmod(z, f)
        i += 1
    return out


def _to_upoly(p, var):
    """Poly -> coefficient list in var; coefficients become var-free Rats."""
    buckets = {}
    for exps, coeff in p.terms.items():
        k = exps[var]
        rest = list(exps)
        rest[var] = 0
        bucket = buckets.setdefault(k, {})
        rest = tuple(rest)
        bucket[rest] = bucket.get(rest, 0) + coeff
    out = [Rat.const(0)] * (max(buckets) + 1 if buckets else 0)
    for k, terms in buckets.items():
        out[k] = Rat(Poly(terms))
    return _u_norm(out)


def _from_upoly(u, var):
    total = Rat.const(0)
    v = Rat.var(var)
    for k in range(len(u) - 1, -1, -1):
        total = total * v + u[k]
    return total


# ---------------------------------------------------------------------------
# Hermite reduction


@dataclass(frozen=True)
class HermiteSplit:
    """input == d(derivative_part)/d(var) + remainder, with the remainder
    proper and its denominator squarefree in var."""

    derivative_part: Rat
    remainder: Rat


def _partial_fractions(r, factors):
    """Split the proper fraction r/prod(P^m) into per-factor pieces.

    factors is the Yun list of (monic P, multiplicity).  Returns a list of
    (numerator upoly, P, multiplicity).
    """
    pieces = []
    rest_num = r
    remaining = list(factors)
    while len(remaining) > 1:
        p, m = remaining.pop(0)
        mod = p
        for _ in range(m - 1):
            mod = _u_mul(mod, p)
        other = [Rat.const(1)]
        for q, k in remaining:
            for _ in range(k):
                other = _u_mul(other, q)
        g, s, t = _u_ext(mod, other)
        if len(g) != 1:
            raise InternalCheckError("squarefree factors were not coprime")
        # rest_num/(mod*other) = rest_num*t/mod + rest_num*s/other
        q1, a1 = _u_divmod(_u_mul(rest_num, t), mod)
        pieces.append((a1, p, m))
        rest_num = _u_add(_u_mul(q1, other), _u_mul(rest_num, s))
    p, m = remaining[0]
    pieces.append((rest_num, p, m))
    return pieces


def hermite_reduce(r, var):
    """Derivative part plus proper squarefree-denominator remainder in var."""
    if var not in (0, 1, 2, 3):
        raise ArityError("reduction variable must be one of z0..z3")
    num = _to_upoly(r.num, var)
    den = _to_upoly(r.den, var)
    lead = den[-1]
    den = _u_monic(den)
    num = _u_scale(num, Rat.const(1) / lead)

    quot, rem = _u_divmod(num, den)
    derivative_part = _from_upoly(_u_integrate(quot), var)
    if not rem:
        result = HermiteSplit(derivative_part, Rat.const(0))
        _check_split(r, result, var)
        return result

    pieces = _partial_fractions(rem, _u_squarefree_monic(den))
    remainder = Rat.const(0)
    for a, p, m in pieces:
        for e in range(m, 1, -1):
            g, s, t = _u_ext(p, _u_derive(p))
            if len(g) != 1:
                raise InternalCheckError("squarefree factor with non-squarefree behavior")
            at = _u_mul(a, t)
            p_rat = _from_upoly(p, var)
            derivative_part = derivative_part - _from_upoly(at, var) / (
                Fraction(e - 1) * p_rat ** (e - 1))
            a = _u_add(_u_mul(a, s), _u_scale(_u_derive(at), Rat.const(Fraction(1, e - 1))))
        if a:
            remainder = remainder + _from_upoly(a, var) / _from_upoly(p, var)

    # numerators may have grown improper along the way; peel the polynomial
    # part of the collected remainder into the derivative side
    if not remainder.is_zero():
        rnum = _to_upoly(remainder.num, var)
        rden = _to_upoly(remainder.den, var)
        rlead = rden[-1]
        rden = _u_monic(rden)
        rnum = _u_scale(rnum, Rat.const(1) / rlead)
        q2, r2 = _u_divmod(rnum, rden)
        if q2:
            derivative_part = derivative_part + _from_upoly(_u_integrate(q2), var)
            remainder = _from_upoly(r2, var) / _from_upoly(rden, var) if r2 else Rat.const(0)

    result = HermiteSplit(derivative_part, remainder)
    _check_split(r, result, var)
    return result


def _check_split(r, split, var):
    if split.derivative_part.derive(var) + split.remainder != r:
        raise InternalCheckError("Hermite reconstruction failed")
    if split.remainder.is_zero():
        return
    den = _to_upoly(split.remainder.den, var)
    g = _u_gcd(den, _u_derive(den))
    if len(g) != 1:
        raise InternalCheckError("Hermite remainder denominator is not squarefree")


# ---------------------------------------------------------------------------
# exactness of plane 1-forms


@dataclass(frozen=True)
class ExactnessResult:
    """Outcome of the rational-potential search for a closed plane 1-form.

    On success potential holds b with db equal to the input and b(0,0) = 0
    whenever the constant is defined.  On failure witness holds the
    surviving Hermite remainder and witness_stage the variable index of
    the stage that produced it.
    """

    exact: bool
    potential: Rat | None = None
    witness: Rat | None = None
    witness_stage: int | None = None


def exactness_test(theta):
    """Decide rational exactness of a 1-form in z0, z1."""
    if not isinstance(theta, DiffForm) or theta.degree != 1 or theta.chart != AFFINE:
        raise ArityError("exactness test expects an affine-chart 1-form")
    used = set()
    for idx in theta.coeffs:
        used |= set(idx)
    for c in theta.coeffs.values():
        used |= c.variables()
    if not used <= {0, 1}:
        raise ArityError("exactness test handles 1-forms in z0 and z1 only")
    a = theta.coefficient((0,))
    b = theta.coefficient((1,))
    if a.derive(1) != b.derive(0):
        raise NotClosed("the 1-form is not closed, so it cannot be exact")

    stage0 = hermite_reduce(a, 0)
    if not stage0.remainder.is_zero():
        return ExactnessResult(False, None, stage0.remainder, 0)
    partial = stage0.derivative_part
    leftover = b - partial.derive(1)
    if not leftover.derive(0).is_zero():
        raise InternalCheckError("closedness did not eliminate z0 from the second stage")
    stage1 = hermite_reduce(leftover, 1)
    if not stage1.remainder.is_zero():
        return ExactnessResult(False, None, stage1.remainder, 1)
    potential = partial + stage1.derivative_part
    origin = (Fraction(0),) * 4
    try:
        shift = potential.evaluate(origin)
        potential = potential - Rat.const(shift)
    except DivisionByZero:
        pass  # potential has a pole at the origin; no constant to fix
    if potential.derive(0) != a or potential.derive(1) != b:
        raise InternalCheckError("potential reconstruction failed")
    return ExactnessResult(True, potential, None, None)


def lift_form(phi, scale=None):
    """The obstruction 1-form scale*z0*dz1 - c0*d(c1) of a plane map."""
    phi = rebind_plane(phi, CONTACT_PLANE)
    c0, c1 = phi.components
    scale = Rat.const(1) if scale is None else scale
    coeff_dz0 = -c0 * c1.derive(0)
    coeff_dz1 = scale * Rat.var(0) - c0 * c1.derive(1)
    return DiffForm(1, AFFINE, {(0,): coeff_dz0, (1,): coeff_dz1})


def sigma_lift(phi):
    """Extend an area-preserving plane map by z2 + b; raises NotExact with
    the witness when no rational b exists."""
    if phi.kind != PLANE:
        raise ArityError("the lift starts from a plane map")
    phi = rebind_plane(phi, CONTACT_PLANE)
    det = jacobian_det(phi)
    if det != Rat.const(1):
        raise NotEtaPreserving("plane map does not preserve the area form")
    outcome = exactness_test(lift_form(phi))
    if not outcome.exact:
        raise NotExact(outcome)
    lift = affine_map(phi.components[0], phi.components[1], Rat.var(2) + outcome.potential)
    if pullback(lift, omega()) != omega():
        raise InternalCheckError("lift does not pull the contact form back to itself")
    return lift


def sigma_lift_contact(phi):
    """Lift of a polynomial plane automorphism with constant jacobian:
    third component det*z2 + b, multiplier det."""
    if phi.kind != PLANE:
        raise ArityError("the lift starts from a plane map")
    phi = rebind_plane(phi, CONTACT_PLANE)
    if not all(c.is_polynomial() for c in phi.components):
        raise NotPolynomialAutomorphism("components must be polynomial")
    det = jacobian_det(phi)
    if not det.is_constant() or det.is_zero():
        raise NotPolynomialAutomorphism("jacobian determinant must be a nonzero constant")
    outcome = exactness_test(lift_form(phi, det))
    if not outcome.exact:
        raise InternalCheckError("polynomial closed form failed to integrate")
    lift = affine_map(phi.components[0], phi.components[1],
                      det * Rat.var(2) + outcome.potential)
    if pullback(lift, omega()) != det * omega():
        raise InternalCheckError("lift multiplier disagrees with the jacobian")
    return lift


def finite_order_lift(phi, order):
    """Periodic lift of a periodic area-preserving plane map.

    Verifies that order is the exact period, averages the potential along
    the orbit to kill the translation part, and returns a lift of the same
    finite order.
    """
    if order < 1:
        raise ArityError("lift order must be a positive integer")
    phi = rebind_plane(phi, CONTACT_PLANE)
    ident = identity_map(PLANE, CONTACT_PLANE)
    powers = [ident]
    current = ident
    for k in range(1, order + 1):
        current = compose(phi, current)
        powers.append(current)
        if k < order and current == ident:
            raise NotPeriodic(f"map already returns to the identity after {k} steps")
    if powers[order] != ident:
        raise NotPeriodic(f"map is not periodic of order {order}")
    base = sigma_lift(phi)
    b = base.components[2] - Rat.var(2)
    total = Rat.const(0)
    for k in range(order):
        comps = powers[k].components
        total = total + b.substitute({0: comps[0], 1: comps[1]})
    if not total.is_constant():
        raise InternalCheckError("orbit sum of the potential is not constant")
    shift = Rat.const(-total.constant_value() / order)
    lift = affine_map(phi.components[0], phi.components[1], Rat.var(2) + b + shift)
    if iterate(lift, order) != identity_map():
        raise InternalCheckError("adjusted lift is not periodic of the stated order")
    return lift
