"""Polynomial text format: parser and canonical renderer.

Grammar (whitespace insignificant, exponents nonnegative decimal integers)::

    poly   := ["+" | "-"] term (("+" | "-") term)* | "0"
    term   := coeff ("*" factor)* | factor ("*" factor)*
    coeff  := integer | integer "/" integer
    factor := ident ("^" integer)?

The leading sign is an extension of the core grammar so that every rendered
polynomial parses back (rendering puts a bare "-" in front of a negative
leading term).  ``parse(render(f)) == f`` holds for every polynomial, and
rendering is deterministic: terms appear in descending monomial order for
the ring's own order.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError, RingMismatchError
from .rings import Polynomial, RingSpec

_T_INT = "int"
_T_IDENT = "ident"
_T_OP = "op"
_T_END = "end"


def _tokenize(text: str):
    tokens = []
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
            tokens.append((_T_INT, text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append((_T_IDENT, text[i:j], i))
            i = j
            continue
        if ch in "+-*/^":
            tokens.append((_T_OP, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append((_T_END, "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: RingSpec):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message):
        raise ParseError(message, self.peek()[2])

    def parse(self) -> Polynomial:
        terms = {}
        fld = self.ring.field
        sign = 1
        kind, val, _ = self.peek()
        if kind == _T_OP and val in "+-":
            self.next()
            sign = -1 if val == "-" else 1
        elif kind == _T_END:
            self.fail("empty polynomial")
        self.term(terms, sign)
        while True:
            kind, val, _ = self.peek()
            if kind == _T_END:
                break
            if kind == _T_OP and val in "+-":
                self.next()
                self.term(terms, -1 if val == "-" else 1)
            else:
                self.fail(f"expected '+' or '-', found {val!r}")
        return Polynomial(self.ring, terms)

    def term(self, terms, sign):
        fld = self.ring.field
        kind, val, pos = self.peek()
        if kind == _T_INT:
            coeff = self.coeff()
        elif kind == _T_IDENT:
            coeff = Fraction(1)
        else:
            self.fail("expected a coefficient or a variable")
        mono = [0] * self.ring.nvars
        first = kind == _T_IDENT
        if first:
            self.factor(mono)
        while True:
            kind, val, _ = self.peek()
            if kind == _T_OP and val == "*":
                self.next()
                self.factor(mono)
            else:
                break
        c = fld.from_fraction(coeff if sign > 0 else -coeff)
        m = tuple(mono)
        s = fld.add(terms.get(m, fld.zero), c)
        if s:
            terms[m] = s
        else:
            terms.pop(m, None)

    def coeff(self) -> Fraction:
        kind, val, pos = self.next()
        num = int(val)
        kind, val, _ = self.peek()
        if kind == _T_OP and val == "/":
            self.next()
            kind, val, dpos = self.peek()
            if kind != _T_INT:
                self.fail("expected an integer denominator")
            self.next()
            den = int(val)
            if den == 0:
                raise ParseError("zero denominator", dpos)
            return Fraction(num, den)
        return Fraction(num)

    def factor(self, mono):
        kind, val, pos = self.peek()
        if kind != _T_IDENT:
            self.fail("expected a variable name")
        self.next()
        try:
            i = self.ring.var_index(val)
        except RingMismatchError:
            raise ParseError(f"unknown variable {val!r}", pos) from None
        e = 1
        kind, val, _ = self.peek()
        if kind == _T_OP and val == "^":
            self.next()
            kind, val, epos = self.peek()
            if kind != _T_INT:
                self.fail("expected an integer exponent")
            self.next()
            e = int(val)
        mono[i] += e


def parse_polynomial(text: str, ring: RingSpec) -> Polynomial:
    """Parse ``text`` into a canonical polynomial of ``ring``."""
    return _Parser(text, ring).parse()


def _render_monomial(ring: RingSpec, m) -> str:
    parts = []
    for name, e in zip(ring.variables, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def render_polynomial(f: Polynomial) -> str:
    """Deterministic text form: descending monomial order, exact coefficients."""
    if f.is_zero:
        return "0"
    fld = f.ring.field
    pieces = []
    for m, c in f.sorted_terms():
        negative = fld.is_negative(c)
        mag = fld.abs(c)
        mono = _render_monomial(f.ring, m)
        if not mono:
            body = fld.render(mag)
        elif mag == fld.one:
            body = mono
        else:
            body = f"{fld.render(mag)}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces)
