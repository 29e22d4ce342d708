"""Text input for rational functions, maps, and differential forms.

The syntax is exactly what the printers in algebra, maps, and forms emit,
so canonical output always parses back to an equal object.  Numbers are
integers, fractions are spelled with '/', powers with '^' (negative
exponents allowed on atoms), and multiplication is always explicit.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import Rat, div_exact
from .errors import ParseError
from .forms import AFFINE, HOMOGENEOUS, DiffForm, d_var, wedge, zero_form
from .maps import affine_map, homogeneous_map, plane_map

_SYMBOLS = set("+-*/^(),:=")


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind = kind
        self.text = text
        self.pos = pos


def _tokenize(text):
    out = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(_Token("num", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word in ("z0", "z1", "z2", "z3"):
                out.append(_Token("var", word, i))
            elif word in ("dz0", "dz1", "dz2", "dz3"):
                out.append(_Token("dz", word, i))
            else:
                out.append(_Token("name", word, i))
            i = j
            continue
        if ch in _SYMBOLS:
            out.append(_Token(ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    out.append(_Token("end", "", n))
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.take()
        if tok.kind != kind:
            shown = tok.text or "end of input"
            raise ParseError(f"expected {kind!r}, found {shown!r}", tok.pos)
        return tok

    def fail(self, message):
        tok = self.tokens[min(self.pos, len(self.tokens) - 1)]
        raise ParseError(message, tok.pos)

    # expression grammar: sum of products of powered atoms

    def expression(self):
        value = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self, stop_at_dz=False):
        value = self.unary()
        while self.peek().kind in ("*", "/"):
            op = self.take().kind
            if stop_at_dz and op == "*" and self.peek().kind == "dz":
                return value
            rhs = self.unary()
            value = value * rhs if op == "*" else value / rhs
        return value

    def unary(self):
        if self.peek().kind == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().kind == "^":
            self.take()
            return base ** self.exponent()
        return base

    def exponent(self):
        sign = 1
        wrapped = False
        if self.peek().kind == "(":
            self.take()
            wrapped = True
        if self.peek().kind == "-":
            self.take()
            sign = -1
        tok = self.expect("num")
        if wrapped:
            self.expect(")")
        return sign * int(tok.text)

    def atom(self):
        tok = self.take()
        if tok.kind == "num":
            return Rat.const(Fraction(int(tok.text)))
        if tok.kind == "var":
            return Rat.var(int(tok.text[1]))
        if tok.kind == "(":
            value = self.expression()
            self.expect(")")
            return value
        shown = tok.text or "end of input"
        raise ParseError(f"expected a number, variable, or parenthesis, found {shown!r}", tok.pos)

    # maps

    def map_text(self):
        chart = None
        if self.peek().kind == "name" and self.peek().text == "chart":
            self.take()
            self.expect("=")
            tok = self.take()
            if tok.kind not in ("var", "name"):
                raise ParseError("expected a chart name after chart=", tok.pos)
            chart = tok.text
        self.expect("(")
        comps = [self.expression()]
        seps = []
        while self.peek().kind in (",", ":"):
            seps.append(self.take().kind)
            comps.append(self.expression())
        self.expect(")")
        self.expect("end")
        if ":" in seps:
            if set(seps) != {":"} or len(comps) != 4:
                self.fail("projective maps take exactly four ':'-separated components")
            if chart is not None:
                self.fail("projective maps do not take a chart prefix")
            return _build_homogeneous(comps)
        if len(comps) == 2:
            if chart is not None:
                self.fail("plane maps do not take a chart prefix")
            return _build_plane(comps)
        if len(comps) == 3:
            return affine_map(*comps, chart_note=chart)
        self.fail("a map needs 2, 3, or 4 components")

    # differential forms

    def form_text(self):
        pieces = [self.form_piece(allow_sign=True)]
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            coeff, chain = self.form_piece(allow_sign=False)
            if op == "-":
                coeff = -coeff
            pieces.append((coeff, chain))
        self.expect("end")
        return _build_form(pieces)

    def form_piece(self, allow_sign):
        sign = Fraction(1)
        if allow_sign:
            while self.peek().kind == "-":
                self.take()
                sign = -sign
        if self.peek().kind == "dz":
            coeff = Rat.const(sign)
        else:
            coeff = Rat.const(sign) * self.term(stop_at_dz=True)
        chain = []
        if self.peek().kind == "dz":
            chain.append(int(self.take().text[2]))
            while self.peek().kind == "^":
                self.take()
                tok = self.expect("dz")
                chain.append(int(tok.text[2]))
        return coeff, tuple(chain)


def _build_plane(comps):
    used = set()
    for c in comps:
        used |= c.variables()
    if used <= {0, 1}:
        return plane_map(comps[0], comps[1], (0, 1))
    if used <= {1, 2}:
        return plane_map(comps[0], comps[1], (1, 2))
    raise ParseError("plane components must use the pair (z0,z1) or (z1,z2)", 0)


def _build_homogeneous(comps):
    product = Rat.const(1)
    for c in comps:
        product = product * Rat(c.den)
    cleared = [c.num * div_exact(product.num, c.den) for c in comps]
    return homogeneous_map(*cleared)


def _build_form(pieces):
    degrees = {len(chain) for _, chain in pieces}
    if len(degrees) != 1:
        raise ParseError("every term must carry the same number of differentials", 0)
    degree = degrees.pop()
    used = set()
    for coeff, chain in pieces:
        used |= coeff.variables() | set(chain)
    chart = HOMOGENEOUS if 3 in used else AFFINE
    if degree == 0:
        total = Rat.const(0)
        for coeff, _ in pieces:
            total = total + coeff
        return DiffForm(0, chart, {(): total})
    total = zero_form(degree, chart)
    for coeff, chain in pieces:
        acc = None
        for v in chain:
            acc = d_var(v, chart) if acc is None else wedge(acc, d_var(v, chart))
        total = total + acc * coeff
    return total


def parse_expression(text):
    """Rational function from text."""
    parser = _Parser(text)
    value = parser.expression()
    parser.expect("end")
    return value


def parse_map(text):
    """Plane, affine3, or homogeneous4 map from text.

    Two comma-separated components give a plane map with the variable pair
    inferred, three give an affine3 map (an optional 'chart=z2 ' prefix
    selects the other chart), four ':'-separated polynomial components
    give a projective map.
    """
    return _Parser(text).map_text()


def parse_form(text):
    """Differential form from text, e.g. 'z0*dz1 + dz2'."""
    return _Parser(text).form_text()
