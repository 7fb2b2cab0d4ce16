"""A tiny recursive-descent parser for sums of products.

Grammar::

    expr   := [+|-] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' INT)?
    atom   := INT ['/' INT] | NAME | '(' expr ')'

The parser does not know what the names mean.  It evaluates through a
caller-supplied *algebra* object with methods ``const(int_or_fraction)``,
``var(name)``, ``add``, ``sub``, ``mul``, ``neg`` and ``pow``.  Products are
evaluated left to right, so noncommutative algebras get the written order.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


def tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.replace("−", "-").replace("**", "^")
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        if m.group(1) is not None:
            tokens.append(("int", m.group(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r} in {text!r}")
            tokens.append(("op", ch))
    return tokens


class _Parser:
    def __init__(self, text, algebra):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.alg = algebra

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, ch):
        kind, val = self.take()
        if kind != "op" or val != ch:
            raise ParseError(f"expected {ch!r} in {self.text!r}")

    def parse(self):
        if not self.tokens:
            raise ParseError("empty expression")
        value = self.expr()
        if self.i != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return value

    def expr(self):
        kind, val = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.take()
            negate = val == "-"
        value = self.term()
        if negate:
            value = self.alg.neg(value)
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                value = self.alg.add(value, rhs) if val == "+" else self.alg.sub(value, rhs)
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                value = self.alg.mul(value, self.factor())
            else:
                return value

    def factor(self):
        value = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val = self.take()
            if kind != "int":
                raise ParseError(f"exponent must be a nonnegative integer in {self.text!r}")
            value = self.alg.pow(value, int(val))
        return value

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            num = int(val)
            k2, v2 = self.peek()
            if k2 == "op" and v2 == "/":
                self.take()
                k3, v3 = self.take()
                if k3 != "int":
                    raise ParseError(f"bad fraction in {self.text!r}")
                if int(v3) == 0:
                    raise ParseError(f"zero denominator in {self.text!r}")
                return self.alg.const(Fraction(num, int(v3)))
            return self.alg.const(num)
        if kind == "name":
            return self.alg.var(val)
        if kind == "op" and val == "(":
            value = self.expr()
            self.expect_op(")")
            return value
        if kind is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_expression(text: str, algebra):
    """Parse ``text`` and evaluate it through ``algebra``."""
    return _Parser(text, algebra).parse()
