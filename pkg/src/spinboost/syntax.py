"""Textual syntax for operator expressions.

Tokens: generators (x_x .. x_z, p_x .. p_z, s_x .. s_z, beta), scalar symbols
(hbar, c, m, mu_a, a_x .. a_z, g_x .. g_z, Phi), the imaginary unit i,
integer/rational literals like 7 or 3/4, and the operators + - * ^ ( ).
`^` binds tightest and takes an integer exponent (negative allowed on pure
scalars).  The printer emits canonical text that parses back to the same
canonical expression.
"""

from __future__ import annotations

import re
from fractions import Fraction

from . import opalg
from .opalg import IDENTITY_PART, OperatorExpr, Scalar, SCALAR_SYMBOLS

__all__ = ["parse", "format_expr", "format_scalar", "ParseError"]


class ParseError(ValueError):
    pass


_TOKEN_RE = re.compile(r"(\d+/\d+|\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*^])")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    for m in _TOKEN_RE.finditer(text):
        gap = text[pos:m.start()]
        if gap.strip():
            raise ParseError(f"unexpected character {gap.strip()[0]!r} "
                             f"at position {pos}")
        pos = m.end()
        if m.group(1):
            tokens.append(("num", Fraction(m.group(1))))
        elif m.group(2):
            tokens.append(("name", m.group(2)))
        else:
            tokens.append(("op", m.group(3)))
    if text[pos:].strip():
        raise ParseError(f"unexpected character {text[pos:].strip()[0]!r} "
                         f"at position {pos}")
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, got {val!r}")

    def expr(self):
        node = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            _, op = self.take()
            rhs = self.term()
            node = ("+", node, rhs) if op == "+" else ("+", node, ("neg", rhs))
        return node

    def term(self):
        node = self.unary()
        while self.peek() == ("op", "*"):
            self.take()
            node = ("*", node, self.unary())
        return node

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return ("neg", self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, val = self.take()
            if kind != "num" or val.denominator != 1:
                raise ParseError(f"exponent must be an integer, got {val!r}")
            return ("^", base, sign * int(val))
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        if kind == "num":
            return val
        if kind == "name":
            return val
        raise ParseError(f"unexpected token {val!r}")


def parse(text: str) -> OperatorExpr:
    """Parse textual syntax into a canonical expression."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    parser = _Parser(tokens)
    tree = parser.expr()
    if parser.i != len(tokens):
        raise ParseError(f"trailing input at token {parser.peek()[1]!r}")
    return opalg.normalize(tree)


# ---------------------------------------------------------------------------
# printing

_GEN_TOKENS = (("x_x", "x_y", "x_z"), ("p_x", "p_y", "p_z"),
               (None, "s_x", "s_y", "s_z"))


def _sym_factors(sympowers) -> list:
    order = {s: k for k, s in enumerate(SCALAR_SYMBOLS)}
    out = []
    for s, e in sorted(sympowers, key=lambda t: order[t[0]]):
        out.append(s if e == 1 else f"{s}^{e}")
    return out


def _rational_str(f: Fraction) -> str:
    return str(f)


def _scalar_term(sympowers, q) -> tuple:
    """One scalar term as (sign, [factor strings]); sign is +1 or -1."""
    if q.im == 0:
        sign = -1 if q.re < 0 else 1
        mag = abs(q.re)
        factors = []
        if mag != 1:
            factors.append(_rational_str(mag))
        factors += _sym_factors(sympowers)
        if not factors:
            factors = ["1"]
        return sign, factors
    if q.re == 0:
        sign = -1 if q.im < 0 else 1
        mag = abs(q.im)
        factors = []
        if mag != 1:
            factors.append(_rational_str(mag))
        factors.append("i")
        factors += _sym_factors(sympowers)
        return sign, factors
    re_sign, re_factors = _scalar_term((), opalg.QC(q.re))
    im_sign, im_factors = _scalar_term((), opalg.QC(Fraction(0), q.im))
    inner = ("-" if re_sign < 0 else "") + " * ".join(re_factors)
    inner += " - " if im_sign < 0 else " + "
    inner += " * ".join(im_factors)
    return 1, [f"( {inner} )"] + _sym_factors(sympowers)


def _genpart_factors(genpart) -> list:
    b, xe, pe, sig = genpart
    out = []
    if b:
        out.append("beta")
    for toks, exps in ((_GEN_TOKENS[0], xe), (_GEN_TOKENS[1], pe)):
        for tok, e in zip(toks, exps):
            if e:
                out.append(tok if e == 1 else f"{tok}^{e}")
    if sig:
        out.append(_GEN_TOKENS[2][sig])
    return out


def _summands(expr: OperatorExpr) -> list:
    """Expression as [(sign, text)] summands."""
    out = []
    for genpart, s in expr.terms:
        body = _genpart_factors(genpart)
        if len(s.terms) == 1:
            sign, factors = _scalar_term(*s.terms[0])
            if factors == ["1"] and body:
                factors = []
            out.append((sign, " * ".join(factors + body)))
        elif genpart == IDENTITY_PART:
            for sp, q in s.terms:
                sign, factors = _scalar_term(sp, q)
                out.append((sign, " * ".join(factors)))
        else:
            inner = _join(_summands_of_scalar(s))
            out.append((1, " * ".join([f"( {inner} )"] + body)))
    return out


def _summands_of_scalar(s: Scalar) -> list:
    out = []
    for sp, q in s.terms:
        sign, factors = _scalar_term(sp, q)
        out.append((sign, " * ".join(factors)))
    return out


def _join(summands) -> str:
    parts = []
    for k, (sign, text) in enumerate(summands):
        if k == 0:
            parts.append(("-" if sign < 0 else "") + text)
        else:
            parts.append(("- " if sign < 0 else "+ ") + text)
    return " ".join(parts)


def format_expr(expr: OperatorExpr) -> str:
    """Canonical text for an expression; parse(format_expr(e)) == e."""
    if expr.is_zero:
        return "0"
    return _join(_summands(expr))


def format_scalar(s: Scalar) -> str:
    if s.is_zero:
        return "0"
    return _join(_summands_of_scalar(s))
