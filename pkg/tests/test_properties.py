"""Randomized algebraic laws, each exercised on 100+ small instances."""

from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import given, settings

from contactbir.algebra import (
    Poly,
    Rat,
    canonical,
    canonical_string,
    gcd,
    is_squarefree,
    valuation,
)
from contactbir.forms import exterior_derivative, from_function, pullback
from contactbir.lifts import hermite_reduce
from contactbir.maps import affine_map, compose, map_string, plane_map
from contactbir.parsing import parse_expression, parse_map

SUITE = settings(max_examples=120, deadline=None)


def _poly_from_terms(terms, width):
    acc = {}
    for coeff, exps in terms:
        key = tuple(exps) + (0,) * (4 - width)
        acc[key] = acc.get(key, Fraction(0)) + coeff
    return Poly(acc)


def small_polys(width=2, max_exp=3, max_terms=4):
    """Sparse polynomials in the first `width` variables."""
    term = st.tuples(
        st.integers(-4, 4).filter(bool),
        st.lists(st.integers(0, max_exp), min_size=width, max_size=width),
    )
    terms = st.lists(term, min_size=0, max_size=max_terms)
    return st.builds(_poly_from_terms, terms, st.just(width))


def nonzero_polys(width=2, max_exp=3, max_terms=4):
    return small_polys(width, max_exp, max_terms).filter(lambda p: not p.is_zero())


def small_rats(width=2):
    return st.builds(
        lambda num, den: Rat(num) / Rat(den),
        small_polys(width, max_exp=2, max_terms=3),
        nonzero_polys(width, max_exp=2, max_terms=2),
    )


# 1. the exterior derivative squares to zero


@SUITE
@given(small_rats(width=3))
def test_d_squared_vanishes_on_functions(r):
    assert exterior_derivative(exterior_derivative(from_function(r))).is_zero()


@SUITE
@given(small_rats(width=3), small_rats(width=3), small_rats(width=3))
def test_d_squared_vanishes_on_one_forms(a, b, c):
    w = (a * exterior_derivative(from_function(Rat.var(0)))
         + b * exterior_derivative(from_function(Rat.var(1)))
         + c * exterior_derivative(from_function(Rat.var(2))))
    assert exterior_derivative(exterior_derivative(w)).is_zero()


# 2. pullback respects composition


@SUITE
@given(
    st.lists(small_polys(width=3, max_exp=2, max_terms=2), min_size=3, max_size=3),
    st.lists(small_polys(width=3, max_exp=2, max_terms=2), min_size=3, max_size=3),
    small_polys(width=3, max_exp=2, max_terms=3),
)
def test_pullback_functoriality(fc, gc, coeff):
    f = affine_map(Rat(fc[0]), Rat(fc[1]), Rat(fc[2]))
    g = affine_map(Rat(gc[0]), Rat(gc[1]), Rat(gc[2]))
    w = Rat(coeff) * exterior_derivative(from_function(Rat.var(1)))
    assert pullback(compose(f, g), w) == pullback(g, pullback(f, w))


# 3. gcd and valuation are multiplicative


@SUITE
@given(nonzero_polys(), nonzero_polys(), nonzero_polys(max_terms=2))
def test_gcd_common_factor_scales_out(a, b, m):
    assert gcd(m * a, m * b) == canonical(m * gcd(a, b))


_IRREDUCIBLE = tuple(
    parse_expression(t).num
    for t in ("z0", "z1", "z0 + z1", "z0 - z1 + 1", "z0*z1 + 1", "z0^2 + 1")
)


@SUITE
@given(
    st.sampled_from(_IRREDUCIBLE),
    small_rats(),
    small_rats(),
    st.integers(-2, 2),
    st.integers(-2, 2),
)
def test_valuation_is_additive(f, r, s, i, j):
    if r.is_zero() or s.is_zero():
        return
    fr = Rat(f)
    r = r * fr ** i
    s = s * fr ** j
    assert valuation(r * s, f) == valuation(r, f) + valuation(s, f)


# 4. Hermite reduction reconstructs its input


@SUITE
@given(
    small_polys(width=2, max_exp=4, max_terms=3),
    nonzero_polys(width=2, max_exp=3, max_terms=2),
    st.sampled_from((0, 1)),
)
def test_hermite_reconstruction(num, den, var):
    r = Rat(num) / Rat(den)
    split = hermite_reduce(r, var)
    assert split.derivative_part.derive(var) + split.remainder == r
    rem = split.remainder
    if not rem.is_zero():
        assert rem.num.degree_in(var) < rem.den.degree_in(var)
        if not rem.den.is_constant():
            assert is_squarefree(rem.den)


# 5. canonical text round-trips through the parser


@SUITE
@given(small_rats(width=4))
def test_expression_round_trip(r):
    assert parse_expression(canonical_string(r)) == r


@SUITE
@given(
    small_rats(),
    small_rats(),
    st.sampled_from(((0, 1), (1, 2))),
)
def test_plane_map_round_trip(a, b, pair):
    shift = {(0, 1): 0, (1, 2): 1}[pair]
    mapping = {0: Rat.var(pair[0]), 1: Rat.var(pair[1])}
    comps = [c.substitute(mapping) for c in (a, b)]
    if any(c.den.is_zero() for c in comps):
        return
    used = set()
    for c in comps:
        used |= c.variables()
    if not used:
        return
    f = plane_map(comps[0], comps[1], pair)
    assert parse_map(map_string(f)) == f
