"""Text syntax for polynomials: ``c*v^k`` terms joined by ``+``/``-``, coefficients ``p/q``.

The grammar is a small expression language (sums, products, integer powers,
parentheses) which covers the documented term syntax as a special case.
"""

from __future__ import annotations

import re
from typing import Callable, Mapping

from .rational import qq

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    """Recursive-descent parser generic over the value domain."""

    def __init__(self, tokens, make_const: Callable, make_var: Callable, divide: Callable):
        self.toks = tokens
        self.i = 0
        self.const = make_const
        self.var = make_var
        self.divide = divide

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ParseError(f"expected {value or 'token'} but found {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty polynomial")
        val = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input near {self.peek()[1]!r}")
        return val

    def expr(self):
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        val = self.term()
        if sign < 0:
            val = -val
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.power()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.power()
            val = val * rhs if op == "*" else self.divide(val, rhs)
        return val

    def power(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.power()
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, tok = self.take()
            if kind != "num" or "/" in tok:
                raise ParseError("exponents must be non-negative integers")
            base = base ** int(tok)
        return base

    def atom(self):
        kind, tok = self.peek()
        if kind == "num":
            self.take()
            return self.const(qq(tok))
        if kind == "name":
            self.take()
            return self.var(tok)
        if tok == "(":
            self.take()
            val = self.expr()
            self.take(")")
            return val
        raise ParseError(f"unexpected token {tok!r}")


def parse_multipoly(text: str):
    from .multipoly import MultiPoly

    def divide(num, den):
        if not den.is_constant() or den.is_zero():
            raise ParseError("division only by nonzero constants")
        return num * (1 / den.constant_value())

    return _Parser(_tokenize(text), MultiPoly.const, MultiPoly.var, divide).parse()


def parse_poly(text: str, var: str | None = None):
    """Parse a univariate rational polynomial; ``var`` defaults to the single variable used."""
    mp = parse_multipoly(text)
    return mp.to_poly(var)


def parse_in_ring(text: str, ring, names: Mapping[str, object]):
    """Evaluate polynomial text with variables bound to ring elements."""

    def make_var(name):
        if name not in names:
            raise ParseError(f"unknown generator {name!r}")
        return names[name]

    return _Parser(_tokenize(text), ring.coerce, make_var, lambda a, b: a / b).parse()


def format_terms(terms: Mapping[tuple, object], vars: tuple[str, ...], fmt: Callable) -> str:
    """Render terms in descending lex order of exponents, coefficient first."""
    if not terms:
        return "0"
    parts: list[str] = []
    for exps in sorted(terms, reverse=True):
        c = terms[exps]
        mono = "*".join(
            (v if e == 1 else f"{v}^{e}") for v, e in zip(vars, exps) if e
        )
        cs = fmt(c)
        neg = cs.startswith("-") and not _needs_parens(cs[1:])
        body = cs[1:] if neg else cs
        if mono:
            if body == "1":
                text = mono
            elif _needs_parens(body):
                text = f"({body})*{mono}"
            else:
                text = f"{body}*{mono}"
        else:
            text = f"({body})" if (_needs_parens(body) and len(terms) > 1) else body
        parts.append(("- " if neg else "+ ") + text)
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


def _needs_parens(s: str) -> bool:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0:
            return True
    return False
