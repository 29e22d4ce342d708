"""Exact polynomial and rational-function arithmetic over Q.

Everything downstream lives in the fixed coordinate ring Q[z0, z1, z2, z3];
plane objects simply do not use the other variables.  Coefficients are
fractions.Fraction throughout, no floating point anywhere.

Canonical conventions, relied on by the serializers and the test oracles:

* terms are ordered by descending (total degree, exponent tuple);
* a canonical polynomial is integer-primitive with positive leading
  coefficient;
* a rational function is stored reduced, with the denominator canonical
  and a constant denominator folded into the numerator (den == 1).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DivisionByZero,
    IndeterminateComposition,
    InternalCheckError,
    InvalidDivisor,
    ZeroPolynomial,
)

VARS = ("z0", "z1", "z2", "z3")
NVARS = 4

_ZERO_EXP = (0, 0, 0, 0)


def _term_key(exps):
    return (sum(exps), exps)


class Poly:
    """Sparse multivariate polynomial with Fraction coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                if coeff:
                    clean[exps] = Fraction(coeff)
        self.terms = clean
        self._hash = None

    # construction helpers

    @staticmethod
    def zero():
        return Poly()

    @staticmethod
    def const(value):
        value = Fraction(value)
        return Poly({_ZERO_EXP: value}) if value else Poly()

    @staticmethod
    def var(index, power=1):
        if power < 0:
            raise ValueError("negative power of a polynomial; use a rational function")
        exps = [0, 0, 0, 0]
        exps[index] = power
        return Poly({tuple(exps): Fraction(1)})

    @staticmethod
    def monomial(exps, coeff=1):
        return Poly({tuple(exps): Fraction(coeff)})

    # predicates and views

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and _ZERO_EXP in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(_ZERO_EXP, Fraction(0))

    def variables(self):
        used = set()
        for exps in self.terms:
            for i in range(NVARS):
                if exps[i]:
                    used.add(i)
        return used

    def total_degree(self):
        """Total degree, or -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var):
        if not self.terms:
            return -1
        return max(e[var] for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _term_key(kv[0]), reverse=True)

    def leading_coefficient(self):
        if not self.terms:
            return Fraction(0)
        exps = max(self.terms, key=_term_key)
        return self.terms[exps]

    # arithmetic

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = out.get(exps, 0) + coeff
            if acc:
                out[exps] = acc
            else:
                out.pop(exps, None)
        result = Poly.__new__(Poly)
        result.terms = out
        result._hash = None
        return result

    __radd__ = __add__

    def __neg__(self):
        result = Poly.__new__(Poly)
        result.terms = {e: -c for e, c in self.terms.items()}
        result._hash = None
        return result

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                acc = out.get(exps, 0) + c1 * c2
                if acc:
                    out[exps] = acc
                else:
                    out.pop(exps, None)
        result = Poly.__new__(Poly)
        result.terms = out
        result._hash = None
        return result

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial; use a rational function")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self.sorted_terms()))
        return self._hash

    def __repr__(self):
        return f"Poly({poly_string(self)})"

    # calculus and evaluation

    def derive(self, var):
        out = {}
        for exps, coeff in self.terms.items():
            k = exps[var]
            if k:
                dexps = list(exps)
                dexps[var] = k - 1
                dexps = tuple(dexps)
                acc = out.get(dexps, 0) + coeff * k
                if acc:
                    out[dexps] = acc
                else:
                    out.pop(dexps, None)
        result = Poly.__new__(Poly)
        result.terms = out
        result._hash = None
        return result

    def evaluate(self, point):
        """Evaluate at a tuple of 4 Fractions."""
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            val = coeff
            for i in range(NVARS):
                if exps[i]:
                    val *= point[i] ** exps[i]
            total += val
        return total

    def substitute_polys(self, mapping):
        """Substitute Poly values for variables; stays polynomial."""
        powers = {i: [Poly.const(1)] for i in mapping}
        out = Poly.zero()
        for exps, coeff in self.terms.items():
            piece = Poly.const(coeff)
            for i in range(NVARS):
                k = exps[i]
                if not k:
                    continue
                if i in mapping:
                    cache = powers[i]
                    while len(cache) <= k:
                        cache.append(cache[-1] * mapping[i])
                    piece = piece * cache[k]
                else:
                    piece = piece * Poly.var(i, k)
            out = out + piece
        return out


def _as_poly(value):
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly.const(value)
    return NotImplemented


# ---------------------------------------------------------------------------
# integer-primitive normalization


def rational_content(p):
    """Positive Fraction c with p/c integer-primitive; 0 for the zero poly."""
    if p.is_zero():
        return Fraction(0)
    from math import gcd as igcd, lcm as ilcm

    num_gcd = 0
    den_lcm = 1
    for coeff in p.terms.values():
        num_gcd = igcd(num_gcd, abs(coeff.numerator))
        den_lcm = ilcm(den_lcm, coeff.denominator)
    return Fraction(num_gcd, den_lcm)


def poly_scale(p, factor):
    factor = Fraction(factor)
    result = Poly.__new__(Poly)
    result.terms = {e: c * factor for e, c in p.terms.items()}
    result._hash = None
    return result


def canonical(p):
    """Integer-primitive scalar multiple with positive leading coefficient."""
    if p.is_zero():
        return p
    cont = rational_content(p)
    if p.leading_coefficient() < 0:
        cont = -cont
    return poly_scale(p, 1 / cont)


# ---------------------------------------------------------------------------
# division and gcd


def div_exact(p, d):
    """Exact polynomial quotient; InternalCheckError if the division leaves
    a remainder (callers only divide by known divisors)."""
    if d.is_zero():
        raise DivisionByZero("exact division by the zero polynomial")
    if d.is_constant():
        return poly_scale(p, 1 / d.constant_value())
    rem = Poly(dict(p.terms))
    d_lead_exps = max(d.terms, key=_term_key)
    d_lead_coeff = d.terms[d_lead_exps]
    quot = {}
    while not rem.is_zero():
        r_lead_exps = max(rem.terms, key=_term_key)
        diff = tuple(r_lead_exps[i] - d_lead_exps[i] for i in range(NVARS))
        if any(x < 0 for x in diff):
            raise InternalCheckError("polynomial division expected to be exact")
        coeff = rem.terms[r_lead_exps] / d_lead_coeff
        quot[diff] = quot.get(diff, 0) + coeff
        rem = rem - Poly.monomial(diff, coeff) * d
    return Poly(quot)


def divides(d, p):
    """Whether the nonzero polynomial d divides p exactly."""
    if d.is_zero():
        return p.is_zero()
    if p.is_zero():
        return True
    if d.is_constant():
        return True
    rem = Poly(dict(p.terms))
    d_lead_exps = max(d.terms, key=_term_key)
    d_lead_coeff = d.terms[d_lead_exps]
    while not rem.is_zero():
        r_lead_exps = max(rem.terms, key=_term_key)
        diff = tuple(r_lead_exps[i] - d_lead_exps[i] for i in range(NVARS))
        if any(x < 0 for x in diff):
            return False
        coeff = rem.terms[r_lead_exps] / d_lead_coeff
        rem = rem - Poly.monomial(diff, coeff) * d
    return True


def _univariate_coeffs(p, var):
    """Coefficient list indexed by var-degree; entries are Polys without var."""
    coeffs = {}
    for exps, coeff in p.terms.items():
        k = exps[var]
        rest = list(exps)
        rest[var] = 0
        rest = tuple(rest)
        bucket = coeffs.setdefault(k, {})
        bucket[rest] = bucket.get(rest, 0) + coeff
    out = [Poly.zero()] * (max(coeffs) + 1 if coeffs else 0)
    for k, bucket in coeffs.items():
        out[k] = Poly(bucket)
    return out


def _from_univariate(coeffs, var):
    total = Poly.zero()
    for k, c in enumerate(coeffs):
        if not c.is_zero():
            total = total + c * Poly.var(var, k)
    return total


def _content_and_primitive(p, var):
    """Content (gcd of the var-coefficients) and primitive part."""
    coeffs = [c for c in _univariate_coeffs(p, var) if not c.is_zero()]
    cont = Poly.zero()
    for c in coeffs:
        cont = _gcd_raw(cont, c)
        if cont.is_constant():
            cont = Poly.const(1)
            break
    return cont, div_exact(p, cont)


def _pseudo_rem(a, b, var):
    """Pseudo-remainder of a by b in the chosen variable."""
    db = b.degree_in(var)
    b_lead = _univariate_coeffs(b, var)[db]
    rem = a
    while not rem.is_zero() and rem.degree_in(var) >= db:
        dr = rem.degree_in(var)
        r_lead = _univariate_coeffs(rem, var)[dr]
        rem = b_lead * rem - r_lead * b * Poly.var(var, dr - db)
    return rem


_COPRIME_PROBE = random.Random(0x5eed)


def _probably_coprime(p, q):
    """Cheap one-variable specialization test.

    If the specialized gcd is constant the true gcd is constant too, so a
    True answer is a proof; False just means run the full algorithm.
    """
    shared = p.variables() & q.variables()
    if not shared:
        return True
    keep = max(shared, key=lambda v: p.degree_in(v) + q.degree_in(v))
    others = (p.variables() | q.variables()) - {keep}
    for _ in range(3):
        point = [Fraction(0)] * NVARS
        for v in others:
            point[v] = Fraction(_COPRIME_PROBE.randint(-40, 40), _COPRIME_PROBE.randint(1, 7))
        pu = _specialize_univariate(p, keep, point)
        qu = _specialize_univariate(q, keep, point)
        if len(pu) - 1 != p.degree_in(keep) or len(qu) - 1 != q.degree_in(keep):
            continue
        if _frac_gcd_degree(pu, qu) == 0:
            return True
    return False


def _specialize_univariate(p, keep, point):
    """Dense Fraction coefficient list of p with all vars but keep evaluated."""
    out = [Fraction(0)] * (p.degree_in(keep) + 1)
    for exps, coeff in p.terms.items():
        val = coeff
        for i in range(NVARS):
            if i != keep and exps[i]:
                val *= point[i] ** exps[i]
        out[exps[keep]] += val
    while out and not out[-1]:
        out.pop()
    return out


def _frac_gcd_degree(a, b):
    """Degree of the gcd of two dense Fraction coefficient lists."""
    while b:
        lead = b[-1]
        bq = [c / lead for c in b]
        r = list(a)
        while len(r) >= len(bq):
            factor = r[-1]
            off = len(r) - len(bq)
            for i, c in enumerate(bq):
                r[off + i] -= factor * c
            while r and not r[-1]:
                r.pop()
        a, b = bq, r
    return len(a) - 1


def _gcd_raw(p, q):
    """gcd up to a scalar; content/primitive recursion with a primitive PRS."""
    if p.is_zero():
        return q
    if q.is_zero():
        return p
    if p.is_constant() or q.is_constant():
        return Poly.const(1)
    if _probably_coprime(p, q):
        return Poly.const(1)
    var = min(p.variables() | q.variables())
    cont_p, prim_p = _content_and_primitive(p, var)
    cont_q, prim_q = _content_and_primitive(q, var)
    cont = _gcd_raw(cont_p, cont_q)
    a, b = prim_p, prim_q
    if a.degree_in(var) < b.degree_in(var):
        a, b = b, a
    while not b.is_zero():
        r = _pseudo_rem(a, b, var)
        if r.is_zero():
            a = b
            break
        _, r = _content_and_primitive(r, var)
        a, b = b, r
        if a.degree_in(var) < b.degree_in(var):
            a, b = b, a
    return cont * _content_and_primitive(a, var)[1] if not a.is_constant() else cont


def gcd(p, q):
    """Canonical gcd: integer-primitive with positive leading coefficient."""
    g = _gcd_raw(p, q)
    if g.is_zero():
        return g
    return canonical(g)


# ---------------------------------------------------------------------------
# rational functions


class Rat:
    """Reduced fraction of two Polys.

    The denominator is canonical (integer-primitive, positive leading
    coefficient) and never constant unless it is exactly 1.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _reduced=False):
        num = _as_poly(num)
        den = Poly.const(1) if den is None else _as_poly(den)
        if den.is_zero():
            raise DivisionByZero("denominator is identically zero")
        if num.is_zero():
            self.num, self.den = Poly.zero(), Poly.const(1)
            self._hash = None
            return
        if not _reduced and not den.is_constant():
            g = _gcd_raw(num, den)
            if not g.is_constant():
                num = div_exact(num, g)
                den = div_exact(den, g)
        if den.is_constant():
            num = poly_scale(num, 1 / den.constant_value())
            den = Poly.const(1)
        else:
            cont = rational_content(den)
            if den.leading_coefficient() < 0:
                cont = -cont
            den = poly_scale(den, 1 / cont)
            num = poly_scale(num, 1 / cont)
        self.num, self.den = num, den
        self._hash = None

    @staticmethod
    def const(value):
        return Rat(Poly.const(value))

    @staticmethod
    def var(index, power=1):
        if power < 0:
            return Rat(Poly.const(1), Poly.var(index, -power), _reduced=True)
        return Rat(Poly.var(index, power), _reduced=True)

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self):
        return self.den.is_constant()

    def constant_value(self):
        return self.num.constant_value() / self.den.constant_value()

    def variables(self):
        return self.num.variables() | self.den.variables()

    def __add__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return Rat(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        result = Rat.__new__(Rat)
        result.num, result.den = -self.num, self.den
        result._hash = None
        return result

    def __sub__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_rat(other) + (-self)

    def __mul__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return Rat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return Rat(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_rat(other) / self

    def __pow__(self, n):
        if n < 0:
            if self.is_zero():
                raise DivisionByZero("negative power of zero")
            return Rat(self.den ** (-n), self.num ** (-n))
        return Rat(self.num ** n, self.den ** n, _reduced=True)

    def __eq__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"Rat({rat_string(self)})"

    def derive(self, var):
        num = self.num.derive(var) * self.den - self.num * self.den.derive(var)
        return Rat(num, self.den * self.den)

    def evaluate(self, point):
        dval = self.den.evaluate(point)
        if not dval:
            raise DivisionByZero("denominator vanishes at the sample point")
        return self.num.evaluate(point) / dval

    def substitute(self, mapping):
        """Substitute Rat values for variables (indices 0..3)."""
        num = _poly_substitute_rats(self.num, mapping)
        den = _poly_substitute_rats(self.den, mapping)
        if den.is_zero():
            raise IndeterminateComposition("denominator vanishes identically under substitution")
        return num / den


def _as_rat(value):
    if isinstance(value, Rat):
        return value
    if isinstance(value, Poly):
        return Rat(value)
    if isinstance(value, (int, Fraction)):
        return Rat.const(value)
    return NotImplemented


def _poly_substitute_rats(p, mapping):
    powers = {i: [Rat.const(1)] for i in mapping}
    out = Rat.const(0)
    for exps, coeff in p.terms.items():
        piece = Rat.const(coeff)
        for i in range(NVARS):
            k = exps[i]
            if not k:
                continue
            if i in mapping:
                cache = powers[i]
                while len(cache) <= k:
                    cache.append(cache[-1] * mapping[i])
                piece = piece * cache[k]
            else:
                piece = piece * Rat.var(i, k)
        out = out + piece
    return out


# ---------------------------------------------------------------------------
# public operations mirroring the workbench surface


def reduce(num, den):
    """Build the reduced canonical fraction num/den."""
    return Rat(num, den)


def derive(value, var):
    """Partial derivative of a Poly or Rat in one of z0..z3."""
    return value.derive(var)


def substitute(value, mapping):
    """Substitute rational functions for variables in a Rat."""
    value = _as_rat(value)
    mapping = {i: _as_rat(v) for i, v in mapping.items()}
    return value.substitute(mapping)


def is_squarefree(p):
    """Whether a nonconstant polynomial has no repeated factor."""
    g = Poly.zero()
    for var in sorted(p.variables()):
        g = _gcd_raw(g, p.derive(var)) if not g.is_zero() else p.derive(var)
    g = _gcd_raw(p, g) if not g.is_zero() else p
    return g.is_constant()


def valuation(r, f):
    """Order of the divisor f in r: multiplicity in num minus in den.

    f must be nonconstant and squarefree; irreducibility is the caller's
    lookout (a squarefree reducible divisor still gives the min of the
    orders of its factors surviving in gcd terms, which is not checked).
    """
    r = _as_rat(r)
    if f.is_constant():
        raise InvalidDivisor("valuation divisor must be nonconstant")
    if not is_squarefree(f):
        raise InvalidDivisor("valuation divisor must be squarefree")
    if r.is_zero():
        raise ZeroPolynomial("valuation of the zero function is undefined")

    def order(p):
        count = 0
        while divides(f, p):
            p = div_exact(p, f)
            count += 1
        return count

    return order(r.num) - order(r.den)


@dataclass
class SquarefreeDecomposition:
    """p == unit * prod(factor**multiplicity); factors canonical, pairwise
    coprime, each squarefree."""

    unit: Fraction
    factors: list

    def reconstruct(self):
        total = Poly.const(self.unit)
        for f, m in self.factors:
            total = total * f ** m
        return total


def squarefree(p, var):
    """Squarefree decomposition relative to one variable.

    The part of p free of var (its content) is decomposed recursively on
    its own first variable, so every returned factor is squarefree.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot decompose the zero polynomial")
    if p.is_constant():
        return SquarefreeDecomposition(p.constant_value(), [])
    factors = []
    if p.degree_in(var) == 0:
        cont, prim = p, Poly.const(1)
    else:
        cont, prim = _content_and_primitive(p, var)
    if not cont.is_constant():
        sub = squarefree(cont, min(cont.variables()))
        factors.extend(sub.factors)
    if not prim.is_constant():
        factors.extend(_yun(prim, var))
    factors.sort(key=lambda fm: (fm[1], _poly_sort_key(fm[0])))
    product = Poly.const(1)
    for f, m in factors:
        product = product * f ** m
    scale = div_exact(p, product)
    if not scale.is_constant():
        raise InternalCheckError("squarefree reconstruction left a nonconstant unit")
    return SquarefreeDecomposition(scale.constant_value(), factors)


def _yun(p, var):
    """Yun's algorithm on a var-primitive polynomial; canonical factors."""
    dp = p.derive(var)
    g = gcd(p, dp)
    if g.is_constant():
        return [(canonical(p), 1)]
    out = []
    w = div_exact(p, g)
    y = div_exact(dp, g)
    i = 1
    while w.degree_in(var) > 0:
        z = y - w.derive(var)
        f = gcd(w, z)
        if not f.is_constant():
            out.append((f, i))
        w = div_exact(w, f)
        y = div_exact(z, f)
        i += 1
    return out


def _poly_sort_key(p):
    return tuple((e, str(c)) for e, c in p.sorted_terms())


# ---------------------------------------------------------------------------
# canonical strings


def _coeff_string(coeff):
    return str(coeff)


def _term_string(exps, coeff):
    parts = []
    for i in range(NVARS):
        k = exps[i]
        if k == 1:
            parts.append(VARS[i])
        elif k > 1:
            parts.append(f"{VARS[i]}^{k}")
    if not parts:
        return _coeff_string(coeff)
    body = "*".join(parts)
    if coeff == 1:
        return body
    if coeff == -1:
        return "-" + body
    return f"{_coeff_string(coeff)}*{body}"


def poly_string(p):
    if p.is_zero():
        return "0"
    pieces = []
    for exps, coeff in p.sorted_terms():
        if not pieces:
            pieces.append(_term_string(exps, coeff))
        elif coeff > 0:
            pieces.append("+ " + _term_string(exps, coeff))
        else:
            pieces.append("- " + _term_string(exps, -coeff))
    return " ".join(pieces)


def _needs_parens_as_numerator(p):
    return len(p.terms) > 1


def _needs_parens_as_denominator(p):
    if len(p.terms) != 1:
        return True
    (exps, coeff), = p.terms.items()
    nvars = sum(1 for k in exps if k)
    if nvars >= 2:
        return True
    return coeff != 1 and nvars >= 1


def rat_string(r):
    if r.den == Poly.const(1):
        return poly_string(r.num)
    num_s = poly_string(r.num)
    den_s = poly_string(r.den)
    if _needs_parens_as_numerator(r.num):
        num_s = f"({num_s})"
    if _needs_parens_as_denominator(r.den):
        den_s = f"({den_s})"
    return f"{num_s}/{den_s}"


def canonical_string(value):
    """Deterministic text form; parsing it back gives an equal object."""
    if isinstance(value, Poly):
        return poly_string(value)
    return rat_string(_as_rat(value))
