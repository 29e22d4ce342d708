"""Families of contact maps, the worked-example registry, and its file format.

Constructors build the standard families from parameters and verify the
defining identity on the spot (area preservation, the contact pullback,
parameter constraints), so a successfully constructed map is already
self-checked.  The registry collects named instances with their frozen
expected invariants; the selftest CLI verb replays the whole corpus.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from fractions import Fraction

from .algebra import Poly, Rat, _as_rat
from .errors import (
    ArityError,
    DegenerateEmbedding,
    InputError,
    InternalCheckError,
    ParseError,
    SingularFraction,
    UpsilonViolation,
    ZeroPolynomial,
    ZeroScale,
)
from .forms import HOMOGENEOUS, DiffForm, omega, pullback
from .maps import (
    CONTACT_PLANE,
    KLEIN_PLANE,
    PLANE,
    affine_map,
    compose,
    jacobian_det,
    map_string,
    plane_map,
    rebind_plane,
)
from .lifts import sigma_lift
from .parsing import parse_map


# ---------------------------------------------------------------------------
# embeddings of plane maps into contact maps


def klein_embed(phi):
    """Contact extension of a plane map, leaving the last two coordinates
    to the plane map and solving for the first."""
    if phi.kind != PLANE:
        raise ArityError("the embedding starts from a plane map")
    phi = rebind_plane(phi, KLEIN_PLANE)
    c1, c2 = phi.components
    z0 = Rat.var(0)
    den = c1.derive(1) - z0 * c1.derive(2)
    if den.is_zero():
        raise DegenerateEmbedding("first component of the plane map is constant along the contact direction")
    num = -c2.derive(1) + z0 * c2.derive(2)
    return affine_map(num / den, c1, c2)


def legendre_involution():
    """The order-2 contact map exchanging the two projections."""
    z0, z1, z2 = Rat.var(0), Rat.var(1), Rat.var(2)
    return affine_map(z1, z0, -z2 - z0 * z1)


def legendre_family(phi):
    """Contact extension of a plane map through the exchanging involution:
    the plane map acts on the other pair of coordinates."""
    if phi.kind != PLANE:
        raise ArityError("the family starts from a plane map")
    phi = rebind_plane(phi, KLEIN_PLANE)
    z0, z1, z2 = Rat.var(0), Rat.var(1), Rat.var(2)
    mapping = {1: z0, 2: -(z2 + z0 * z1)}
    psi1 = phi.components[0].substitute(mapping)
    psi2 = phi.components[1].substitute(mapping)
    d0 = psi1.derive(0)
    if d0.is_zero():
        raise DegenerateEmbedding("substituted first component does not depend on z0")
    return affine_map(-psi2.derive(0) / d0, psi1, psi2)


# ---------------------------------------------------------------------------
# area-preserving plane families and their lifts


def monomial_eta(p, gamma=1, kind="mon1"):
    """Monomial area-preserving plane map of integer parameter p, with its
    closed-form contact lift.  Returns the pair (plane map, lift)."""
    gamma = Fraction(gamma)
    if gamma == 0:
        raise ZeroScale("monomial coefficient must be nonzero")
    z0, z1, z2 = Rat.var(0), Rat.var(1), Rat.var(2)
    scale = Rat.const(gamma)
    inv = Rat.const(1 / gamma)
    if kind == "mon1":
        c0 = scale * z0 ** p * z1 ** (p - 1)
        c1 = inv * z0 ** (1 - p) * z1 ** (2 - p)
        b = Fraction(p - 1) * z0 * z1
    elif kind == "mon2":
        c0 = scale * z0 ** p * z1 ** (p + 1)
        c1 = -inv * z0 ** (1 - p) * z1 ** (-p)
        b = Fraction(1 - p) * z0 * z1
    else:
        raise InputError(f"unknown monomial kind {kind!r}")
    plane = plane_map(c0, c1, CONTACT_PLANE)
    lift = affine_map(c0, c1, z2 + b)
    if pullback(lift, omega()) != omega():
        raise InternalCheckError("monomial lift fails to preserve the contact form")
    return plane, lift


def jonquieres_eta(eps, beta, gamma, delta, r=None):
    """Triangular area-preserving plane map over a fractional-linear base."""
    eps, beta, gamma, delta = (Fraction(x) for x in (eps, beta, gamma, delta))
    det = eps * delta - beta * gamma
    if det == 0:
        raise SingularFraction("fractional-linear base map is singular")
    z0, z1 = Rat.var(0), Rat.var(1)
    r = Rat.const(0) if r is None else _as_rat(r)
    if not r.variables() <= {1}:
        raise ArityError("the shift must be a function of z1 alone")
    moebius_den = Rat.const(gamma) * z1 + Rat.const(delta)
    c0 = moebius_den ** 2 / Rat.const(det) * z0 + r
    c1 = (Rat.const(eps) * z1 + Rat.const(beta)) / moebius_den
    phi = plane_map(c0, c1, CONTACT_PLANE)
    if jacobian_det(phi) != Rat.const(1):
        raise InternalCheckError("triangular family member is not area-preserving")
    return phi


def jonquieres_exact(eps, beta, gamma, delta, shift):
    """The liftable members: the shift is a polynomial multiple of the
    squared base denominator."""
    shift = _as_rat(shift)
    if not shift.is_polynomial() or not shift.variables() <= {1}:
        raise ArityError("the shift factor must be a polynomial in z1")
    z1 = Rat.var(1)
    moebius_den = Rat.const(Fraction(gamma)) * z1 + Rat.const(Fraction(delta))
    return jonquieres_eta(eps, beta, gamma, delta, shift * moebius_den ** 2)


def lambda_family(a):
    """Plane map scaling the first coordinate by a(z0*z1) and dividing the
    second by the same factor."""
    a = _as_rat(a)
    if a.is_zero():
        raise ZeroPolynomial("scaling function must be nonzero")
    if len(a.variables()) > 1:
        raise ArityError("scaling function must be univariate")
    z0, z1 = Rat.var(0), Rat.var(1)
    u = z0 * z1
    scaled = a.substitute({v: u for v in a.variables()})
    return plane_map(z0 * scaled, z1 / scaled, CONTACT_PLANE)


def _projective_linear_plane(params):
    params = [Fraction(x) for x in params]
    if len(params) != 9:
        raise ArityError("a fractional-linear plane map takes nine coefficients")
    det = (params[0] * (params[4] * params[8] - params[5] * params[7])
           - params[1] * (params[3] * params[8] - params[5] * params[6])
           + params[2] * (params[3] * params[7] - params[4] * params[6]))
    if det == 0:
        raise SingularFraction("coefficient matrix is singular")
    z0, z1 = Rat.var(0), Rat.var(1)
    den = Rat.const(params[6]) * z0 + Rat.const(params[7]) * z1 + Rat.const(params[8])
    if den.is_zero():
        raise SingularFraction("denominator row is zero")
    c0 = (Rat.const(params[0]) * z0 + Rat.const(params[1]) * z1 + Rat.const(params[2])) / den
    c1 = (Rat.const(params[3]) * z0 + Rat.const(params[4]) * z1 + Rat.const(params[5])) / den
    return plane_map(c0, c1, CONTACT_PLANE), det


def quadratic_tau(g_params, h_params):
    """Quadratic area-preserving plane map g . (z0 + z1^2, z1) . h built
    from two fractional-linear maps whose coefficients satisfy the
    compatibility constraints; violations raise with the failed constraint."""
    g = [Fraction(x) for x in g_params]
    h = [Fraction(x) for x in h_params]
    g_map, g_det = _projective_linear_plane(g)
    h_map, h_det = _projective_linear_plane(h)
    if g[6] != 0:
        raise UpsilonViolation("g[6] = 0")
    if g[7] * h[3] != 0:
        raise UpsilonViolation("g[7]*h[3] = 0")
    if g[7] * h[4] != 0:
        raise UpsilonViolation("g[7]*h[4] = 0")
    if g_det * h_det != (g[7] * h[5] + g[8]) ** 3:
        raise UpsilonViolation("det(g)*det(h) = (g[7]*h[5] + g[8])^3")
    z0, z1 = Rat.var(0), Rat.var(1)
    tau = plane_map(z0 + z1 ** 2, z1, CONTACT_PLANE)
    composite = compose(g_map, compose(tau, h_map))
    if jacobian_det(composite) != Rat.const(1):
        raise InternalCheckError("constraint-checked quadratic map is not area-preserving")
    return composite


# ---------------------------------------------------------------------------
# affine contact families


def aut_p3_contact(eps, beta, lam, gamma, delta):
    """The affine contact automorphisms; the multiplier is eps*beta."""
    eps, beta, lam, gamma, delta = (Fraction(x) for x in (eps, beta, lam, gamma, delta))
    if eps == 0 or beta == 0:
        raise ZeroScale("the two scaling parameters must be nonzero")
    z0, z1, z2 = Rat.var(0), Rat.var(1), Rat.var(2)
    return affine_map(
        Rat.const(eps) * z0 + Rat.const(lam),
        Rat.const(beta) * z1 + Rat.const(gamma),
        Rat.const(-beta * lam) * z1 + Rat.const(eps * beta) * z2 + Rat.const(delta),
    )


def pgl2_contact(eps, beta, gamma, delta):
    """Form-preserving contact map induced by a fractional-linear change of
    the second coordinate, fixing the third."""
    eps, beta, gamma, delta = (Fraction(x) for x in (eps, beta, gamma, delta))
    det = eps * delta - beta * gamma
    if det == 0:
        raise SingularFraction("fractional-linear coefficient matrix is singular")
    z0, z1, z2 = Rat.var(0), Rat.var(1), Rat.var(2)
    den = Rat.const(gamma) * z1 + Rat.const(delta)
    return affine_map(den ** 2 / Rat.const(det) * z0,
                      (Rat.const(eps) * z1 + Rat.const(beta)) / den,
                      z2)


def potential_shear(f):
    """Form-preserving shear (z0 - f'(z1), z1, z2 + f(z1))."""
    f = _as_rat(f)
    if not f.variables() <= {1}:
        raise ArityError("the potential must be a function of z1 alone")
    z0, z1, z2 = Rat.var(0), Rat.var(1), Rat.var(2)
    return affine_map(z0 - f.derive(1), z1, z2 + f)


def horizontal_flow(p):
    """Form-preserving translation family (z0, z1 + p(z0), z2 + q(z0)) with
    q chosen so that z0*p' + q' = 0."""
    p = _as_rat(p)
    if not p.is_polynomial() or not p.variables() <= {0}:
        raise ArityError("the translation profile must be a polynomial in z0")
    q = Poly.zero()
    for exps, coeff in p.num.terms.items():
        k = exps[0]
        if k == 0:
            continue
        q = q + Poly({(k + 1, 0, 0, 0): -coeff * Fraction(k, k + 1)})
    z0, z1, z2 = Rat.var(0), Rat.var(1), Rat.var(2)
    return affine_map(z0, z1 + p, z2 + Rat(q))


def transported_infinity_form():
    """The contact structure carried into the chart z2 = 1, normalized by
    the cube of the last coordinate."""
    z0, z1, z3 = Rat.var(0), Rat.var(1), Rat.var(3)
    return DiffForm(1, HOMOGENEOUS, {
        (1,): z0 / z3 ** 2,
        (3,): -(z0 * z1 + z3) / z3 ** 3,
    })


def blow_down_chart_map():
    """Birational contraction written in the chart z2 = 1; it scales the
    transported contact structure by 1/z0."""
    z0, z1, z3 = Rat.var(0), Rat.var(1), Rat.var(3)
    return affine_map(z0, z0 * z1 - z3, z0 * z3, chart_note="z2")


# ---------------------------------------------------------------------------
# the registry


@dataclass(frozen=True)
class Expected:
    """Frozen invariants of a registry entry, as parseable text."""

    multiplier: str | None = None
    alpha: str | None = None
    order: int | None = None
    regular: bool | None = None
    contraction_z2: int | None = None
    hinfty: str | None = None
    infinity_form_scale: str | None = None


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    map: object
    expected: Expected
    notes: str = ""


def _klein_monomial(n):
    z1, z2 = Rat.var(1), Rat.var(2)
    return klein_embed(plane_map(z1 * z2 ** (n - 1), z1 * z2 ** n, KLEIN_PLANE))


def _multiplier_example(n):
    z0, z1, z2 = Rat.var(0), Rat.var(1), Rat.var(2)
    if n < 0:
        raise ArityError("the family index must be a nonnegative integer")
    if n == 0:
        den = z1 + Rat.const(1)
    else:
        den = (Rat.const(n) * z0 ** (n - 1) * z2
               + Rat.const(n + 1) * z0 ** n * (z1 + Rat.const(1)))
    return affine_map(Rat.const(1) / den, z0 ** n * (z0 + z2 + z0 * z1), -z0)


def _build_registry():
    z0, z1, z2 = Rat.var(0), Rat.var(1), Rat.var(2)
    entries = []

    def add(name, m, notes="", **expected):
        entries.append(CatalogEntry(name, m, Expected(**expected), notes))

    add("legendre", legendre_involution(),
        "involution exchanging the two plane projections",
        multiplier="-1", alpha="0", order=2, regular=False,
        hinfty="contracted_to_point (0 : 0 : 1 : 0)")
    add("cremona3", klein_embed(plane_map(1 / z1, 1 / z2, KLEIN_PLANE)),
        "embedded standard quadratic involution",
        multiplier="-1/z2^2", alpha="infinity", order=2, regular=False,
        hinfty="contracted_to_point (1 : 0 : 0 : 0)")
    add("lyness5", klein_embed(plane_map(z2, (z2 + 1) / z1, KLEIN_PLANE)),
        "embedded periodic recurrence of period five",
        multiplier="-(z2 + 1)/(z0*z1^2)", alpha="infinity", order=5)
    add("fibration-free", klein_embed(plane_map(z1, z2 / (1 + z2), KLEIN_PLANE)),
        "embedded parabolic base map",
        multiplier="1/(z2 + 1)^2", alpha="infinity")

    mult_examples = {
        0: "1/(z1 + 1)",
        1: "z0/(2*z0*z1 + z2 + 2*z0)",
        2: "z0/(3*z0*z1 + 2*z2 + 3*z0)",
        3: "z0/(4*z0*z1 + 3*z2 + 4*z0)",
    }
    for n in range(4):
        add(f"nfamily:{n}", _multiplier_example(n),
            "multiplier example with polynomial degree growing in the index",
            multiplier=mult_examples[n])

    contraction_mults = {
        0: "z1/(z0*z1 + z2)",
        1: "z1",
        2: "z1*z2^2/(z2 - z0*z1)",
        3: "z1*z2^3/(z2 - 2*z0*z1)",
    }
    for n in range(4):
        kwargs = dict(multiplier=contraction_mults[n], contraction_z2=n if n >= 2 else 0)
        if n == 2:
            kwargs.update(regular=False, hinfty="contracted_to_point (0 : 0 : 1 : 0)")
        if n == 3:
            kwargs.update(regular=False)
        add(f"contraction:{n}", _klein_monomial(n),
            "embedded monomial map whose multiplier vanishes on z2 to order n",
            **kwargs)

    add("alpha:a", affine_map(z0 / 5, z0 + 5 * z1, z2 - z0 ** 2 / 10),
        "constant direction invariant", multiplier="1", alpha="5")
    add("alpha:b", affine_map(z0, z1 + z0 ** 2, z2 - Rat.const(Fraction(2, 3)) * z0 ** 3),
        "direction invariant with a pole", multiplier="1", alpha="1/(2*z0)")
    add("alpha:c", affine_map(-z1, z0 + z1 ** 2, z2 + z0 * z1 + Rat.const(Fraction(2, 3)) * z1 ** 3),
        "polynomial direction invariant", multiplier="1", alpha="2*z1")

    add("square-diff",
        affine_map((z1 - z0) ** 2 / (2 * z0 * z1 + 2 * z2 - z0 ** 2),
                   (2 * z2 + z0 ** 2) / (z1 - z0),
                   z1 - z0),
        "quadratic contact map with constant direction invariant",
        multiplier="2*(z1 - z0)/(2*z0*z1 + 2*z2 - z0^2)", alpha="-1")

    add("pgl2:a", pgl2_contact(1, 1, 1, 0), "fractional-linear base change",
        multiplier="1", alpha="infinity", regular=False,
        hinfty="contracted_to_point (1 : 0 : 0 : 0)")
    add("pgl2:b", pgl2_contact(0, 1, 1, 0), "fractional-linear base inversion",
        multiplier="1", alpha="infinity", regular=False,
        hinfty="contracted_to_point (1 : 0 : 0 : 0)")
    add("pgl2:c", pgl2_contact(2, 0, 0, 1), "diagonal base scaling",
        multiplier="1", alpha="infinity", regular=True)

    add("shear:a", potential_shear(1 / z1),
        "shear along a potential with a simple pole",
        multiplier="1", alpha="infinity")
    add("shear:b", potential_shear(z1 / (z1 ** 2 + 1)),
        "shear along a potential with an irreducible quadratic pole",
        multiplier="1", alpha="infinity")

    add("autcont:a", aut_p3_contact(2, 3, 0, 0, 0), "diagonal contact automorphism",
        multiplier="6", alpha="infinity", regular=True)
    add("autcont:b", aut_p3_contact(1, 1, 1, 2, 3), "unipotent contact automorphism",
        multiplier="1", alpha="infinity", regular=True)
    add("autcont:c", aut_p3_contact(Fraction(1, 2), -2, 1, 0, -1),
        "contact automorphism with negative multiplier",
        multiplier="-1", alpha="infinity", regular=True)

    add("henon-lift", sigma_lift(plane_map(z1 + z0 ** 2, -z0, CONTACT_PLANE)),
        "lift of the quadratic area-preserving recurrence",
        multiplier="1", alpha="0", regular=False,
        hinfty="contracted_to_point (0 : 0 : 1 : 0)")
    add("klein-cubic", klein_embed(plane_map(z1, z2 + z1 ** 3, KLEIN_PLANE)),
        "embedded polynomial triangular map",
        multiplier="1", alpha="infinity", regular=False,
        hinfty="contracted_to_point (0 : 0 : 1 : 0)")

    add("legfam:a", legendre_family(plane_map(z1, z2 ** 2, KLEIN_PLANE)),
        "squaring map carried through the exchanging involution",
        multiplier="2*z0*z1 + 2*z2", alpha="0", regular=False)
    add("legfam:b", legendre_family(plane_map(z2, z1, KLEIN_PLANE)),
        "coordinate swap carried through the exchanging involution",
        multiplier="-1/z1", alpha="0", regular=False)

    add("blowup-z2", blow_down_chart_map(),
        "contraction in the chart z2 = 1; checked against the transported form",
        infinity_form_scale="1/z0")

    return entries


_ENTRIES = None


def registry():
    """All named entries, in a fixed order."""
    global _ENTRIES
    if _ENTRIES is None:
        _ENTRIES = tuple(_build_registry())
    return list(_ENTRIES)


def lookup(name, entries=None):
    entries = registry() if entries is None else entries
    for entry in entries:
        if entry.name == name:
            return entry
    raise InputError(f"no catalog entry named {name!r}")


# ---------------------------------------------------------------------------
# catalog file format


def format_catalog(entries):
    """Plain-text serialization: one block of KEY: value lines per entry."""
    blocks = []
    for entry in entries:
        text = map_string(entry.map)
        chart = entry.map.chart_note
        if chart is not None and text.startswith(f"chart={chart} "):
            text = text[len(f"chart={chart} "):]
        lines = [f"NAME: {entry.name}", f"MAP: {text}"]
        if chart is not None:
            lines.append(f"CHART: {chart}")
        for field in fields(Expected):
            value = getattr(entry.expected, field.name)
            if value is None:
                continue
            if isinstance(value, bool):
                value = "true" if value else "false"
            lines.append(f"EXPECTED.{field.name}: {value}")
        if entry.notes:
            lines.append(f"NOTES: {entry.notes}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


_EXPECTED_FIELDS = {f.name for f in fields(Expected)}


def parse_catalog(text):
    """Inverse of format_catalog."""
    entries = []
    for block_no, block in enumerate(text.split("\n\n")):
        block = block.strip()
        if not block:
            continue
        name = None
        map_text = None
        chart = None
        notes = ""
        expected = Expected()
        saw_data = False
        for line in block.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            saw_data = True
            if ":" not in line:
                raise ParseError(f"catalog line without a key: {line!r}", block_no)
            key, _, value = line.partition(":")
            key = key.strip()
            value = value.strip()
            if key == "NAME":
                name = value
            elif key == "MAP":
                map_text = value
            elif key == "CHART":
                chart = value
            elif key == "NOTES":
                notes = value
            elif key.startswith("EXPECTED."):
                field = key[len("EXPECTED."):]
                if field not in _EXPECTED_FIELDS:
                    raise ParseError(f"unknown expected field {field!r}", block_no)
                if field in ("order", "contraction_z2"):
                    parsed = int(value)
                elif field == "regular":
                    if value not in ("true", "false"):
                        raise ParseError(f"regular must be true or false, got {value!r}", block_no)
                    parsed = value == "true"
                else:
                    parsed = value
                expected = replace(expected, **{field: parsed})
            else:
                raise ParseError(f"unknown catalog key {key!r}", block_no)
        if not saw_data:
            continue
        if name is None or map_text is None:
            raise ParseError("catalog entry needs NAME and MAP lines", block_no)
        if chart is not None and not map_text.startswith("chart="):
            map_text = f"chart={chart} {map_text}"
        entries.append(CatalogEntry(name, parse_map(map_text), expected, notes))
    return entries
