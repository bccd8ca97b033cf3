"""Plain-text polynomial parser and printer.

Grammar (round-trip exact):

    expr    := term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := atom ('^' integer)?
    atom    := rational | name | variable | '(' expr ')'
    name    := zeta7 | zeta21 | zeta8 | zeta12 | omega | i
             | sqrt2 | sqrt3 | sqrt7 | sqrt6 | sqrt14 | sqrt21 | sqrt42
             | sqrt-7 | sqrt-3
    variable := x1 .. x9, z1 .. z9

Named constants resolve inside the target field (raising FieldMismatch when
the field does not contain them).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import FieldMismatch
from .numberfield import mq_subset_coords
from .poly import MPoly

_TOKEN = re.compile(r"\s*(sqrt-?\d+|zeta\d+|omega|i\b|[xz]\d+|\d+|"
                    r"[()+\-*/^])")

_VAR_LETTERS = ("x", "z")


def _tokenize(s):
    pos, out = 0, []
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            if s[pos:].strip():
                raise ValueError(f"bad token at: {s[pos:]!r}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, field, nvars, letter):
        self.toks = tokens
        self.k = 0
        self.field = field
        self.nvars = nvars
        self.letter = letter

    def peek(self):
        return self.toks[self.k] if self.k < len(self.toks) else None

    def take(self):
        t = self.peek()
        self.k += 1
        return t

    def parse(self):
        e = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing input at {self.peek()!r}")
        return e

    def expr(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        acc = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            f = self.factor()
            if op == "*":
                acc = acc * f
            else:
                if f.degree() != 0:
                    raise ValueError("division by a non-constant")
                c = next(iter(f.terms.values()))
                acc = acc * MPoly.constant(self.field, self.nvars,
                                           c.inverse())
        return acc

    def factor(self):
        a = self.atom()
        if self.peek() == "^":
            self.take()
            n = int(self.take())
            out = MPoly.constant(self.field, self.nvars, 1)
            for _ in range(n):
                out = out * a
            return out
        return a

    def atom(self):
        t = self.take()
        if t == "(":
            e = self.expr()
            if self.take() != ")":
                raise ValueError("unbalanced parentheses")
            return e
        if t is None:
            raise ValueError("unexpected end of input")
        if t.isdigit():
            return MPoly.constant(self.field, self.nvars, Fraction(t))
        if t[0] in _VAR_LETTERS and t[1:].isdigit():
            i = int(t[1:]) - 1
            if not 0 <= i < self.nvars:
                raise ValueError(f"variable {t} out of range")
            return MPoly.variable(self.field, self.nvars, i)
        # named constant
        return MPoly.constant(self.field, self.nvars, self.field.constant(t))


def poly_parse(s, field, nvars=6, letter="x"):
    """Parse a polynomial expression over `field` in x1..xn (or z1..zn)."""
    return _Parser(_tokenize(s), field, nvars, letter).parse()


# -- printing -----------------------------------------------------------------

def _frac_repr(q):
    return str(q.numerator) if q.denominator == 1 else \
        f"{q.numerator}/{q.denominator}"


def _coeff_repr(c):
    """Render a field element as a parseable constant expression."""
    f = c.field
    if c.is_rational():
        return _frac_repr(c.rational_value())
    kind = f.key[0]
    if kind == "zeta":
        sym = f.symbol
        parts = []
        for k, q in enumerate(c.coords):
            if q == 0:
                continue
            if k == 0:
                parts.append(_frac_repr(q))
            else:
                mag = "" if abs(q) == 1 else _frac_repr(abs(q)) + "*"
                body = sym if k == 1 else f"{sym}^{k}"
                parts.append(("-" if q < 0 else "") + mag + body)
        return "(" + _join_signed(parts) + ")"
    if kind == "sqrt":
        c0, c1 = c.coords
        parts = []
        if c0:
            parts.append(_frac_repr(c0))
        if c1:
            mag = "" if abs(c1) == 1 else _frac_repr(abs(c1)) + "*"
            parts.append(("-" if c1 < 0 else "") + mag + f.symbol)
        return "(" + _join_signed(parts) + ")"
    if kind == "mq":
        ds = f.key[1]
        vec = mq_subset_coords(c)
        parts = []
        for s, q in enumerate(vec):
            if q == 0:
                continue
            if s == 0:
                parts.append(_frac_repr(q))
                continue
            d = 1
            for i in range(len(ds)):
                if s >> i & 1:
                    d *= ds[i]
            mag = "" if abs(q) == 1 else _frac_repr(abs(q)) + "*"
            parts.append(("-" if q < 0 else "") + mag + f"sqrt{d}")
        return "(" + _join_signed(parts) + ")"
    raise FieldMismatch(f"cannot render constants of field {f.key}")


def _join_signed(parts):
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def poly_str(F, letter="x"):
    """Canonical text form: descending graded lex, parse(poly_str(F)) == F."""
    if F.is_zero():
        return "0"
    parts = []
    for m, c in F.sorted_terms():
        mono = "*".join(
            f"{letter}{i + 1}" if e == 1 else f"{letter}{i + 1}^{e}"
            for i, e in enumerate(m) if e)
        cs = _coeff_repr(c)
        if mono:
            if cs == "1":
                body = mono
            elif cs == "-1":
                body = "-" + mono
            else:
                body = f"{cs}*{mono}"
        else:
            body = cs
        parts.append(body)
    return _join_signed(parts)
