"""Exterior algebra in the two charts the workbench uses.

Affine-chart objects live on 3-space with coordinates z0, z1, z2 and may not
mention z3; homogeneous-chart objects live on all four coordinates.  Mixing
charts raises ChartMismatch.  Form degree is capped at 3, matching the
dimension of the affine space; pushing past that raises DegreeOverflow
instead of silently producing zero.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import NVARS, VARS, Poly, Rat, _as_rat, rat_string
from .errors import ArityError, ChartMismatch, DegreeOverflow

AFFINE = "affine"
HOMOGENEOUS = "homogeneous"


def _chart_vars(chart):
    return (0, 1, 2) if chart == AFFINE else (0, 1, 2, 3)


class DiffForm:
    """Differential form with Rat coefficients on strictly increasing
    index tuples (the empty tuple for degree 0)."""

    __slots__ = ("degree", "chart", "coeffs")

    def __init__(self, degree, chart, coeffs=None):
        if chart not in (AFFINE, HOMOGENEOUS):
            raise ChartMismatch(f"unknown chart {chart!r}")
        if not 0 <= degree <= 3:
            raise DegreeOverflow(f"form degree {degree} outside 0..3")
        allowed = set(_chart_vars(chart))
        clean = {}
        for idx, coeff in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or list(idx) != sorted(set(idx)):
                raise ArityError(f"bad index tuple {idx} for degree {degree}")
            if not set(idx) <= allowed:
                raise ChartMismatch(f"differential dz{max(idx)} not in the {chart} chart")
            coeff = _as_rat(coeff)
            if not set(coeff.variables()) <= allowed:
                raise ChartMismatch(f"coefficient uses variables outside the {chart} chart")
            if not coeff.is_zero():
                clean[idx] = coeff
        self.degree = degree
        self.chart = chart
        self.coeffs = clean

    def is_zero(self):
        return not self.coeffs

    def coefficient(self, idx):
        return self.coeffs.get(tuple(idx), Rat.const(0))

    def __eq__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        return (self.degree, self.chart, self.coeffs) == (other.degree, other.chart, other.coeffs)

    def __hash__(self):
        return hash((self.degree, self.chart, tuple(sorted(self.coeffs.items(), key=lambda kv: kv[0]))))

    def __add__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        _require_same_chart(self, other)
        if self.degree != other.degree:
            raise ArityError("cannot add forms of different degree")
        out = dict(self.coeffs)
        for idx, c in other.coeffs.items():
            s = out.get(idx, Rat.const(0)) + c
            if s.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = s
        return DiffForm(self.degree, self.chart, out)

    def __neg__(self):
        return DiffForm(self.degree, self.chart, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        scalar = _as_rat(scalar)
        if scalar is NotImplemented:
            return NotImplemented
        return DiffForm(self.degree, self.chart, {i: c * scalar for i, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __repr__(self):
        return f"DiffForm({form_string(self)})"


def _require_same_chart(a, b):
    if a.chart != b.chart:
        raise ChartMismatch(f"cannot combine {a.chart} and {b.chart} chart objects")


def zero_form(degree, chart=AFFINE):
    return DiffForm(degree, chart, {})


def d_var(index, chart=AFFINE):
    """The coordinate differential dz_index."""
    return DiffForm(1, chart, {(index,): Rat.const(1)})


def from_function(value, chart=AFFINE):
    """Wrap a Rat (or Poly) as a degree-0 form."""
    return DiffForm(0, chart, {(): _as_rat(value)})


def _merge_indices(a, b):
    """Concatenate two strictly increasing tuples; (sign, sorted) or None."""
    if set(a) & set(b):
        return None
    merged = list(a)
    sign = 1
    for x in b:
        pos = len(merged)
        while pos > 0 and merged[pos - 1] > x:
            pos -= 1
        sign *= (-1) ** (len(merged) - pos)
        merged.insert(pos, x)
    return sign, tuple(merged)


def wedge(a, b):
    """Exterior product; raises DegreeOverflow past degree 3."""
    _require_same_chart(a, b)
    if a.degree + b.degree > 3:
        raise DegreeOverflow(f"wedge of degrees {a.degree} and {b.degree} exceeds 3")
    out = {}
    for ia, ca in a.coeffs.items():
        for ib, cb in b.coeffs.items():
            merged = _merge_indices(ia, ib)
            if merged is None:
                continue
            sign, idx = merged
            c = out.get(idx, Rat.const(0)) + ca * cb * sign
            if c.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = c
    return DiffForm(a.degree + b.degree, a.chart, out)


def exterior_derivative(f):
    """d on forms of degree 0..2; degree-3 input raises DegreeOverflow."""
    if f.degree >= 3:
        raise DegreeOverflow("exterior derivative of a degree-3 form exceeds degree 3")
    out = {}
    for idx, coeff in f.coeffs.items():
        for v in _chart_vars(f.chart):
            dc = coeff.derive(v)
            if dc.is_zero():
                continue
            merged = _merge_indices((v,), idx)
            if merged is None:
                continue
            sign, merged_idx = merged
            c = out.get(merged_idx, Rat.const(0)) + dc * sign
            if c.is_zero():
                out.pop(merged_idx, None)
            else:
                out[merged_idx] = c
    return DiffForm(f.degree + 1, f.chart, out)


@dataclass(frozen=True)
class VectorField:
    """Coordinate components of a vector field in one chart."""

    components: tuple
    chart: str = AFFINE

    def __post_init__(self):
        want = len(_chart_vars(self.chart))
        if len(self.components) != want:
            raise ArityError(f"{self.chart} vector field needs {want} components")
        object.__setattr__(self, "components", tuple(_as_rat(c) for c in self.components))


def contract(f, field):
    """Interior product of a 1-form with a vector field."""
    if f.degree != 1:
        raise ArityError("contraction is implemented for 1-forms")
    if f.chart != field.chart:
        raise ChartMismatch("form and vector field live in different charts")
    total = Rat.const(0)
    for (i,), coeff in f.coeffs.items():
        total = total + coeff * field.components[i]
    return total


def pullback(phi, f):
    """Pull a form back along a rational map.

    The map's kind decides the chart: homogeneous4 maps act on
    homogeneous-chart forms, affine3 maps on affine-chart forms, and plane
    maps on forms whose variables are exactly the map's variable pair.
    """
    if f.chart == HOMOGENEOUS:
        if phi.kind == "homogeneous4":
            mapping = {i: _as_rat(phi.components[i]) for i in range(NVARS)}
        elif phi.kind == "affine3" and phi.chart_note == "z2":
            used = set()
            for idx in f.coeffs:
                used |= set(idx)
            for c in f.coeffs.values():
                used |= c.variables()
            if 2 in used:
                raise ChartMismatch("a map in the chart z2 = 1 cannot pull back a form involving z2")
            mapping = {0: phi.components[0], 1: phi.components[1], 3: phi.components[2]}
        else:
            raise ChartMismatch("homogeneous-chart forms pull back along homogeneous4 maps")
    elif phi.kind == "affine3":
        if phi.chart_note is not None:
            raise ChartMismatch("affine-chart forms pull back along standard-chart maps")
        mapping = {i: phi.components[i] for i in range(3)}
    elif phi.kind == "plane":
        va, vb = phi.plane_vars
        used = set()
        for idx in f.coeffs:
            used |= set(idx)
        for c in f.coeffs.values():
            used |= c.variables()
        if not used <= {va, vb}:
            raise ChartMismatch("form variables do not match the plane map's pair")
        mapping = {va: phi.components[0], vb: phi.components[1]}
    else:
        raise ChartMismatch("homogeneous4 maps only pull back homogeneous-chart forms")

    out = zero_form(f.degree, f.chart)
    dcomp = {}
    for v, comp in mapping.items():
        pieces = {}
        for w in _chart_vars(f.chart):
            dc = comp.derive(w)
            if not dc.is_zero():
                pieces[(w,)] = dc
        dcomp[v] = DiffForm(1, f.chart, pieces)
    for idx, coeff in f.coeffs.items():
        pulled = coeff.substitute(mapping)
        if not idx:
            out = out + DiffForm(0, f.chart, {(): pulled})
            continue
        acc = None
        for i in idx:
            acc = dcomp[i] if acc is None else wedge(acc, dcomp[i])
        out = out + acc * pulled
    return out


# ---------------------------------------------------------------------------
# named forms of the theory


def omega():
    """The affine contact form z0*dz1 + dz2."""
    return DiffForm(1, AFFINE, {(1,): Rat.var(0), (2,): Rat.const(1)})


def eta():
    """The plane area form dz0^dz1, which is d(omega) up to orientation."""
    return DiffForm(2, AFFINE, {(0, 1): Rat.const(1)})


def omega_bar():
    """Homogeneous-chart extension of the contact form."""
    z0, z1, z2, z3 = (Rat.var(i) for i in range(4))
    return DiffForm(1, HOMOGENEOUS, {
        (1,): z0 * z3,
        (2,): z3 * z3,
        (3,): -(z0 * z1 + z2 * z3),
    })


def theta_tilde():
    """The twisted symmetric 1-form z0*dz1 - z1*dz0 + z2*dz3 - z3*dz2."""
    z0, z1, z2, z3 = (Rat.var(i) for i in range(4))
    return DiffForm(1, HOMOGENEOUS, {
        (0,): -z1,
        (1,): z0,
        (2,): -z3,
        (3,): z2,
    })


def reeb_field():
    """The constant field that the contact form evaluates to 1 on."""
    return VectorField((Rat.const(0), Rat.const(0), Rat.const(1)), AFFINE)


# ---------------------------------------------------------------------------
# rendering


def _dz_string(idx):
    return "^".join(f"d{VARS[i]}" for i in idx)


def _coeff_prefix(coeff):
    s = rat_string(coeff)
    if len(coeff.num.terms) > 1 and coeff.den == Poly.const(1):
        s = f"({s})"
    return s


def form_string(f):
    """Deterministic text form; 1-forms round-trip through the parser."""
    if f.is_zero():
        return "0"
    if f.degree == 0:
        return rat_string(f.coefficient(()))
    pieces = []
    for idx in sorted(f.coeffs):
        coeff = f.coeffs[idx]
        neg = coeff.num.leading_coefficient() < 0
        mag = -coeff if neg else coeff
        if mag == Rat.const(1):
            body = _dz_string(idx)
        else:
            body = f"{_coeff_prefix(mag)}*{_dz_string(idx)}"
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append(("- " if neg else "+ ") + body)
    return " ".join(pieces)
