"""Contact analysis: multiplier, directional invariant, regularity.

The central computation pulls the contact form back along a 3-D map and
reads everything off the coefficients.  Proportionality of the pullback to
the form itself is the contact property; the proportionality factor is the
multiplier; the directional invariant comes from the last two components
alone.  Each quantity is recomputed a second way where the theory makes
that possible, and a disagreement raises InconsistentPDE rather than
returning a guess.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Poly, Rat, rat_string, valuation
from .errors import (
    ArityError,
    ChartMismatch,
    HInftyMoved,
    InconsistentPDE,
    KleinFamily,
    NonDominant,
    NotContact,
    ZeroPolynomial,
)
from .forms import omega, omega_bar, pullback, wedge, zero_form, VectorField
from .maps import (
    AFFINE3,
    HInftyAction,
    compose,
    hinfty_action,
    homogenize,
    jacobian_det,
)

INFINITY = "infinity"
"""Tag returned as the directional invariant of Klein-family maps."""


@dataclass(frozen=True)
class ContactReport:
    is_contact: bool
    multiplier: Rat | None
    alpha: object  # Rat, the INFINITY tag, or None for non-contact maps
    preserves_form: bool
    det_is_square: bool
    jacobian: Rat


def _directional_invariant(phi):
    """(d/dz1 - z0 d/dz2) / (d/dz0) read off either of the last two
    components; INFINITY when both are z0-free."""
    z0 = Rat.var(0)
    candidates = []
    for c in phi.components[1:]:
        d0 = c.derive(0)
        if d0.is_zero():
            continue
        candidates.append((c.derive(1) - z0 * c.derive(2)) / d0)
    if not candidates:
        return INFINITY
    if len(candidates) == 2 and candidates[0] != candidates[1]:
        raise InconsistentPDE("directional invariant differs between components")
    return candidates[0]


def analyze(phi):
    """Full contact report for an affine3 map."""
    if phi.kind != AFFINE3:
        raise ArityError(f"analysis is defined for affine3 maps, got {phi.kind}")
    if phi.chart_note is not None:
        raise ChartMismatch("contact analysis runs in the standard chart")
    det = jacobian_det(phi)
    if det.is_zero():
        raise NonDominant("jacobian determinant vanishes identically")
    w = omega()
    pulled = pullback(phi, w)
    is_contact = wedge(pulled, w) == zero_form(2)
    if not is_contact:
        return ContactReport(False, None, None, False, False, det)
    mult = pulled.coefficient((2,))
    # redundant reads of the same proportionality, as implementation checks
    if not pulled.coefficient((0,)).is_zero():
        raise InconsistentPDE("dz0 coefficient of the pullback should vanish")
    if pulled.coefficient((1,)) != mult * Rat.var(0):
        raise InconsistentPDE("dz1 coefficient disagrees with the multiplier")
    alpha = _directional_invariant(phi)
    return ContactReport(
        is_contact=True,
        multiplier=mult,
        alpha=alpha,
        preserves_form=(mult == Rat.const(1)),
        det_is_square=(det == mult * mult),
        jacobian=det,
    )


def multiplier_of(phi):
    report = analyze(phi)
    if not report.is_contact:
        raise NotContact("map does not preserve the contact structure")
    return report.multiplier


def alpha_of(phi):
    """Directional invariant; raises NotContact on non-contact maps."""
    report = analyze(phi)
    if not report.is_contact:
        raise NotContact("map does not preserve the contact structure")
    return report.alpha


def z_field(phi):
    """The vector field annihilating the last two components.

    Components (alpha, -1, z0); Klein-family maps have no such field and
    raise KleinFamily.
    """
    a = alpha_of(phi)
    if a == INFINITY:
        raise KleinFamily("last two components are z0-free; no finite field direction")
    field = VectorField((a, Rat.const(-1), Rat.var(0)))
    z0 = Rat.var(0)
    for c in phi.components[1:]:
        residue = a * c.derive(0) - c.derive(1) + z0 * c.derive(2)
        if not residue.is_zero():
            raise InconsistentPDE("candidate field fails to annihilate a component")
    return field


def invariant_multiplier_check(phi, u):
    """Whether u / (u o phi) reproduces the multiplier of phi."""
    if u.is_zero():
        raise ZeroPolynomial("invariant candidate is identically zero")
    mult = multiplier_of(phi)
    composed = u.substitute({i: phi.components[i] for i in range(3)})
    if composed.is_zero():
        raise InconsistentPDE("nonzero function composed with a dominant map vanished")
    return mult == u / composed


def cocycle_check(phi, psi):
    """V(phi o psi) == (V(phi) o psi) * V(psi), exactly."""
    v_phi = multiplier_of(phi)
    v_psi = multiplier_of(psi)
    v_comp = multiplier_of(compose(phi, psi))
    transported = v_phi.substitute({i: psi.components[i] for i in range(3)})
    return v_comp == transported * v_psi


def contraction_multiplicity(phi, f):
    """Order of vanishing of the multiplier along the divisor f, floored at 0."""
    mult = multiplier_of(phi)
    return max(0, valuation(mult, f))


@dataclass(frozen=True)
class RegularityVerdict:
    regular: bool
    hinfty: HInftyAction
    multiplier_at_infinity: Rat
    vanishes_at_infinity: bool

    def evidence_string(self):
        return rat_string(self.multiplier_at_infinity)


def multiplier_at_infinity(phi_bar):
    """Homogeneous multiplier from the pullback of the extended form."""
    wbar = omega_bar()
    pulled = pullback(phi_bar, wbar)
    z3sq = Rat.var(3) ** 2
    vbar = pulled.coefficient((2,)) / z3sq
    for idx, coeff in wbar.coeffs.items():
        if pulled.coefficient(idx) != vbar * coeff:
            raise InconsistentPDE("homogeneous pullback is not proportional to the form")
    extra = set(pulled.coeffs) - set(wbar.coeffs)
    if any(not pulled.coefficient(i).is_zero() for i in extra):
        raise InconsistentPDE("homogeneous pullback has a stray coefficient")
    return vbar


def regular_at_infinity(phi, seed=0):
    """Regularity verdict for a contact affine3 map.

    Requires the hyperplane at infinity to be preserved or contracted;
    a map that moves it is rejected as inconsistent input data.
    """
    report = analyze(phi)
    if not report.is_contact:
        raise NotContact("regularity at infinity is defined for contact maps")
    phi_bar = homogenize(phi)
    action = hinfty_action(phi_bar, seed=seed)
    if action.kind == "moved":
        raise HInftyMoved("hyperplane at infinity is moved; not a contact map's behavior")
    vbar = multiplier_at_infinity(phi_bar)
    vanishes = valuation(vbar, Poly.var(3)) > 0
    regular = action.image_in_hinfty and not vanishes
    return RegularityVerdict(regular, action, vbar, vanishes)
