"""Rational self-maps in three arities and their projective behavior.

A map is plane (two components in a declared variable pair), affine3
(components in z0,z1,z2), or homogeneous4 (four coprime homogeneous
polynomials of equal degree in z0..z3).  Composition, iteration, jacobians,
homogenization and the hyperplane-at-infinity classification live here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    Poly,
    Rat,
    _as_rat,
    canonical,
    div_exact,
    gcd,
    poly_scale,
    rat_string,
)
from .errors import (
    AllSamplesIndeterminate,
    ArityError,
    ChartMismatch,
    IndeterminateComposition,
    InternalCheckError,
)

PLANE = "plane"
AFFINE3 = "affine3"
HOMOGENEOUS4 = "homogeneous4"

CONTACT_PLANE = (0, 1)
KLEIN_PLANE = (1, 2)


class RationalMap:
    """Immutable rational map; use the plane_map/affine_map/homogeneous_map
    constructors rather than this class directly."""

    __slots__ = ("kind", "components", "plane_vars", "chart_note")

    def __init__(self, kind, components, plane_vars=None, chart_note=None):
        self.kind = kind
        self.components = tuple(components)
        self.plane_vars = plane_vars
        self.chart_note = chart_note

    def __eq__(self, other):
        if not isinstance(other, RationalMap):
            return NotImplemented
        return (self.kind, self.components, self.plane_vars) == (
            other.kind, other.components, other.plane_vars)

    def __hash__(self):
        return hash((self.kind, self.components, self.plane_vars))

    def __repr__(self):
        return f"RationalMap({map_string(self)})"


def plane_map(c0, c1, variables=CONTACT_PLANE, chart_note=None):
    """Plane map in a declared variable pair, (z0,z1) or (z1,z2)."""
    variables = tuple(variables)
    if variables not in (CONTACT_PLANE, KLEIN_PLANE):
        raise ArityError(f"plane variable pair must be (z0,z1) or (z1,z2), got {variables}")
    comps = (_as_rat(c0), _as_rat(c1))
    allowed = set(variables)
    for c in comps:
        if not c.variables() <= allowed:
            raise ArityError("plane component uses a variable outside the declared pair")
    return RationalMap(PLANE, comps, variables, chart_note)


def affine_chart_vars(chart_note):
    """Coordinate triple of an affine chart: the standard one (z3 = 1) uses
    z0, z1, z2; the chart z2 = 1 uses z0, z1, z3."""
    if chart_note is None:
        return (0, 1, 2)
    if chart_note == "z2":
        return (0, 1, 3)
    raise ChartMismatch(f"unknown affine chart {chart_note!r}")


def affine_map(c0, c1, c2, chart_note=None):
    comps = tuple(_as_rat(c) for c in (c0, c1, c2))
    allowed = set(affine_chart_vars(chart_note))
    for c in comps:
        if not c.variables() <= allowed:
            raise ChartMismatch("affine3 component uses a variable outside its chart")
    return RationalMap(AFFINE3, comps, None, chart_note)


def homogeneous_map(p0, p1, p2, p3):
    """Four polynomials, normalized to a coprime equal-degree representative."""
    polys = []
    for p in (p0, p1, p2, p3):
        if isinstance(p, Rat):
            if not p.is_polynomial():
                raise ArityError("homogeneous components must be polynomial")
            p = p.num
        polys.append(p)
    if all(p.is_zero() for p in polys):
        raise ArityError("all homogeneous components are zero")
    common = Poly.zero()
    for p in polys:
        if p.is_zero():
            continue
        common = p if common.is_zero() else gcd(common, p)
        if common.is_constant():
            break
    if not common.is_constant():
        polys = [div_exact(p, common) if not p.is_zero() else p for p in polys]
    from math import gcd as igcd, lcm as ilcm
    num_gcd = 0
    den_lcm = 1
    for p in polys:
        for c in p.terms.values():
            num_gcd = igcd(num_gcd, abs(c.numerator))
            den_lcm = ilcm(den_lcm, c.denominator)
    scale = Fraction(num_gcd, den_lcm)
    lead = next(p for p in polys if not p.is_zero()).leading_coefficient()
    if lead < 0:
        scale = -scale
    polys = [poly_scale(p, 1 / scale) for p in polys]
    degs = {p.total_degree() for p in polys if not p.is_zero()}
    if len(degs) != 1 or any(not p.is_homogeneous() for p in polys):
        raise ArityError("components are not homogeneous of a common degree")
    return RationalMap(HOMOGENEOUS4, tuple(Rat(p, None, _reduced=True) for p in polys))


def identity_map(kind=AFFINE3, variables=CONTACT_PLANE):
    if kind == PLANE:
        a, b = variables
        return plane_map(Rat.var(a), Rat.var(b), variables)
    if kind == AFFINE3:
        return affine_map(Rat.var(0), Rat.var(1), Rat.var(2))
    return homogeneous_map(*(Poly.var(i) for i in range(4)))


def rebind_plane(phi, variables):
    """Re-dress a plane map onto the other variable pair, positionally."""
    if phi.kind != PLANE:
        raise ArityError("rebind_plane expects a plane map")
    variables = tuple(variables)
    if phi.plane_vars == variables:
        return phi
    old_a, old_b = phi.plane_vars
    new_a, new_b = variables
    mapping = {old_a: Rat.var(new_a), old_b: Rat.var(new_b)}
    return plane_map(
        phi.components[0].substitute(mapping),
        phi.components[1].substitute(mapping),
        variables,
        phi.chart_note,
    )


def compose(f, g):
    """f after g.  Kinds must match; plane maps may differ in dressing,
    the result lives in g's variables."""
    if f.kind != g.kind:
        raise ArityError(f"cannot compose {f.kind} with {g.kind}")
    if f.kind == PLANE:
        a, b = f.plane_vars
        mapping = {a: g.components[0], b: g.components[1]}
        return plane_map(
            f.components[0].substitute(mapping),
            f.components[1].substitute(mapping),
            g.plane_vars,
        )
    if f.kind == AFFINE3:
        if f.chart_note != g.chart_note:
            raise ChartMismatch("cannot compose affine maps living in different charts")
        chart = affine_chart_vars(f.chart_note)
        mapping = {v: g.components[k] for k, v in enumerate(chart)}
        return affine_map(*(c.substitute(mapping) for c in f.components),
                          chart_note=f.chart_note)
    mapping = {i: g.components[i].num for i in range(4)}
    substituted = [c.num.substitute_polys(mapping) for c in f.components]
    if all(p.is_zero() for p in substituted):
        raise IndeterminateComposition("homogeneous composition collapsed to zero")
    return homogeneous_map(*substituted)


def iterate(f, n):
    """n-fold self-composition; n = 0 gives the identity."""
    if n < 0:
        raise ArityError("iterate needs n >= 0")
    if n == 0:
        if f.kind == AFFINE3 and f.chart_note is not None:
            chart = affine_chart_vars(f.chart_note)
            return affine_map(*(Rat.var(v) for v in chart), chart_note=f.chart_note)
        return identity_map(f.kind, f.plane_vars or CONTACT_PLANE)
    out = f
    for _ in range(n - 1):
        out = compose(f, out)
    return out


def _det2(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def jacobian_det(f):
    """Determinant of the jacobian in the map's own affine variables."""
    if f.kind == PLANE:
        a, b = f.plane_vars
        m = [[f.components[i].derive(v) for v in (a, b)] for i in range(2)]
        return _det2(m)
    if f.kind == AFFINE3:
        chart = affine_chart_vars(f.chart_note)
        m = [[f.components[i].derive(v) for v in chart] for i in range(3)]
        return _det3(m)
    raise ArityError("jacobian determinant is an affine-chart notion")


def verify_inverse(f, g):
    """Whether g is a two-sided inverse of f."""
    try:
        left = compose(f, g)
        right = compose(g, f)
    except IndeterminateComposition:
        return False
    ident_src = iterate(g, 0)
    ident_tgt = iterate(f, 0)
    return left == ident_src and right == ident_tgt


# ---------------------------------------------------------------------------
# homogenization and degree


def _poly_lcm(a, b):
    if a.is_constant():
        return canonical(b) if not b.is_constant() else Poly.const(1)
    if b.is_constant():
        return canonical(a)
    return canonical(div_exact(a * b, gcd(a, b)))


def _homogenize_poly(p, degree, homvar=3):
    out = {}
    for exps, coeff in p.terms.items():
        pad = degree - sum(exps)
        if pad < 0:
            raise InternalCheckError("homogenization target degree too small")
        e = list(exps)
        e[homvar] += pad
        out[tuple(e)] = coeff
    return Poly(out)


def homogenize(f):
    """Projective representative of an affine3 map, as a homogeneous4 map."""
    if f.kind != AFFINE3:
        raise ArityError("homogenize expects an affine3 map")
    if f.chart_note is not None:
        raise ChartMismatch("homogenization is implemented for the standard chart only")
    dens = [c.den for c in f.components]
    common = Poly.const(1)
    for d in dens:
        common = _poly_lcm(common, d)
    nums = [c.num * div_exact(common, c.den) for c in f.components]
    nums.append(common)
    # replace zi by zi/z3 and clear: pad every term with z3 to a shared degree
    target = max(p.total_degree() for p in nums if not p.is_zero())
    lifted = [_homogenize_poly(p, target) if not p.is_zero() else p for p in nums]
    return homogeneous_map(*lifted)


def _plane_projective_triple(f):
    a, b = f.plane_vars
    d0, d1 = (c.den for c in f.components)
    common = _poly_lcm(d0, d1)
    nums = [f.components[0].num * div_exact(common, d0),
            f.components[1].num * div_exact(common, d1),
            common]
    target = max(p.total_degree() for p in nums if not p.is_zero())
    lifted = [_homogenize_poly(p, target) if not p.is_zero() else p for p in nums]
    g = Poly.zero()
    for p in lifted:
        if not p.is_zero():
            g = gcd(g, p) if not g.is_zero() else p
        if g.is_constant():
            break
    if not g.is_constant():
        lifted = [div_exact(p, g) if not p.is_zero() else p for p in lifted]
    return lifted


def map_degree(f):
    """Common degree of the reduced projective representative."""
    if f.kind == HOMOGENEOUS4:
        return max(c.num.total_degree() for c in f.components if not c.is_zero())
    if f.kind == AFFINE3:
        return map_degree(homogenize(f))
    triple = _plane_projective_triple(f)
    return max(p.total_degree() for p in triple if not p.is_zero())


# ---------------------------------------------------------------------------
# hyperplane at infinity


@dataclass(frozen=True)
class SampleEvidence:
    seed: int
    samples: tuple  # ((point, matrix_rank) pairs)
    note: str


@dataclass(frozen=True)
class HInftyAction:
    """How a homogeneous4 map treats the hyperplane z3 = 0.

    kind is one of preserved, contracted_to_point, contracted_to_curve,
    moved.  point is the normalized image tuple for point contractions.
    image_in_hinfty records whether the image of the hyperplane stays
    inside it (always true for preserved).
    """

    kind: str
    image_in_hinfty: bool
    point: tuple | None = None
    evidence: SampleEvidence | None = None


def _restrict_to_hinfty(f):
    out = []
    for c in f.components:
        kept = {e: v for e, v in c.num.terms.items() if e[3] == 0}
        out.append(Poly(kept))
    return out


def _matrix_rank(rows):
    m = [list(r) for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    row = 0
    for col in range(cols):
        pivot = None
        for r in range(row, len(m)):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        pv = m[row][col]
        for r in range(row + 1, len(m)):
            if m[r][col]:
                factor = m[r][col] / pv
                m[r] = [a - factor * b for a, b in zip(m[r], m[row])]
        row += 1
        rank += 1
        if row == len(m):
            break
    return rank


def normalize_projective_point(coords):
    coords = [Fraction(c) for c in coords]
    from math import gcd as igcd, lcm as ilcm
    den_lcm = 1
    for c in coords:
        den_lcm = ilcm(den_lcm, c.denominator)
    ints = [c * den_lcm for c in coords]
    num_gcd = 0
    for c in ints:
        num_gcd = igcd(num_gcd, abs(int(c)))
    if num_gcd:
        ints = [c / num_gcd for c in ints]
    lead = next((c for c in ints if c), None)
    if lead is not None and lead < 0:
        ints = [-c for c in ints]
    return tuple(ints)


def hinfty_action(f, seed=0, samples=8):
    """Classify the action on H-infinity by restricting and rank-sampling."""
    if f.kind != HOMOGENEOUS4:
        raise ArityError("hinfty_action expects a homogeneous4 map")
    restricted = _restrict_to_hinfty(f)
    if all(p.is_zero() for p in restricted):
        raise InternalCheckError("normalized map restricts to zero on z3 = 0")
    common = Poly.zero()
    for p in restricted:
        if p.is_zero():
            continue
        common = p if common.is_zero() else gcd(common, p)
        if common.is_constant():
            break
    if not common.is_constant():
        restricted = [div_exact(p, common) if not p.is_zero() else p for p in restricted]
    in_hinfty = restricted[3].is_zero()

    if all(p.is_constant() for p in restricted):
        point = normalize_projective_point([p.constant_value() for p in restricted])
        return HInftyAction("contracted_to_point", point[3] == 0, point, None)

    live = [i for i in range(4)] if not in_hinfty else [0, 1, 2]
    rng = random.Random(seed)
    collected = []
    best = 0
    tries = 0
    while len(collected) < samples and tries < 12 * samples:
        tries += 1
        pt = (Fraction(rng.randint(-25, 25)), Fraction(rng.randint(-25, 25)),
              Fraction(rng.randint(-25, 25)), Fraction(0))
        values = [restricted[i].evaluate(pt) for i in live]
        if not any(values):
            continue
        rows = []
        for v in (0, 1, 2):
            rows.append([restricted[i].derive(v).evaluate(pt) for i in live])
        rank = _matrix_rank(rows)
        collected.append((pt[:3], rank))
        best = max(best, rank)
    if not collected:
        raise AllSamplesIndeterminate("no sample point avoided the base locus")
    evidence = SampleEvidence(seed, tuple(collected),
                              "matrix rank of the restricted jacobian; image dimension is rank - 1")
    if best <= 1:
        raise AllSamplesIndeterminate(
            "sampled rank stayed at 1 for a nonconstant restriction; rerun with a new seed")
    if in_hinfty:
        kind = "preserved" if best == 3 else "contracted_to_curve"
        return HInftyAction(kind, True, None, evidence)
    kind = "moved" if best == 3 else "contracted_to_curve"
    return HInftyAction(kind, False, None, evidence)


# ---------------------------------------------------------------------------
# rendering


def map_string(f):
    inner = ", ".join(rat_string(c) for c in f.components)
    if f.kind == HOMOGENEOUS4:
        inner = " : ".join(rat_string(c) for c in f.components)
    body = f"({inner})"
    if f.chart_note:
        return f"chart={f.chart_note} {body}"
    return body
