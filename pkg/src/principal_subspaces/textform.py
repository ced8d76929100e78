"""Canonical text form for elements of U(n-bar).

Grammar::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := [coeff ['*']] factor (['*'] factor)*  |  coeff
    factor  := atom ['^' INT]
    atom    := 'x[' INT (',' INT)* '](' ['-'] INT ')'  |  '(' expr ')'
    coeff   := INT ['/' INT]

Juxtaposition means product.  Products are straightened, so any input
parses to the same element as its normal form.
"""

from __future__ import annotations

import re

from .scalars import Q
from .upbw import AlgElem, LoopAlgebra, Monomial


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos


def format_factor(alg: LoopAlgebra, f) -> str:
    return f"x{alg.rs.root_label(f[1])}({f[2]})"


def format_monomial(alg: LoopAlgebra, mono: Monomial) -> str:
    if not mono:
        return "1"
    parts = []
    i = 0
    while i < len(mono):
        j = i
        while j < len(mono) and mono[j] == mono[i]:
            j += 1
        s = format_factor(alg, mono[i])
        parts.append(s if j - i == 1 else f"{s}^{j - i}")
        i = j
    return "*".join(parts)


def _fmt_coeff(c: Q) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_elem(a: AlgElem) -> str:
    if not a.terms:
        return "0"
    out = []
    for k, mono in enumerate(sorted(a.terms)):
        c = a.terms[mono]
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = format_monomial(a.alg, mono)
        if mono and mag == 1:
            txt = body
        elif not mono:
            txt = _fmt_coeff(mag)
        else:
            txt = f"{_fmt_coeff(mag)}*{body}"
        if k == 0:
            out.append(txt if sign == "+" else "-" + txt)
        else:
            out.append(f" {sign} {txt}")
    return "".join(out)


class _Parser:
    def __init__(self, alg: LoopAlgebra, text: str):
        self.alg = alg
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise ParseError(msg, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self) -> int:
        self.skip()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            self.error("expected integer")
        self.pos = m.end()
        return int(m.group())

    def signed_integer(self) -> int:
        if self.peek() == "-":
            self.pos += 1
            return -self.integer()
        return self.integer()

    def parse(self) -> AlgElem:
        val = self.expr()
        if self.peek():
            self.error("unexpected character")
        return val

    def expr(self) -> AlgElem:
        sign = 1
        if self.peek() and self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        total = self.term() * sign
        while self.peek() and self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
            total = total + self.term() * sign
        return total

    def starts_atom(self) -> bool:
        return self.peek() in ("x", "(")

    def term(self) -> AlgElem:
        coeff = Q(1)
        seen = False
        if self.peek().isdigit():
            num = self.integer()
            den = 1
            if self.peek() == "/":
                self.pos += 1
                den = self.integer()
                if den == 0:
                    self.error("zero denominator")
            coeff = Q(num, den)
            seen = True
            if self.peek() == "*":
                self.pos += 1
                if not self.starts_atom():
                    self.error("expected generator after '*'")
        val = self.alg.one() * coeff
        while self.starts_atom():
            seen = True
            val = val * self.factor()
            if self.peek() == "*":
                self.pos += 1
                if not self.starts_atom():
                    self.error("expected generator after '*'")
        if not seen:
            self.error("expected term")
        return val

    def factor(self) -> AlgElem:
        if self.peek() == "(":
            self.pos += 1
            val = self.expr()
            self.expect(")")
        else:
            val = self.generator()
        if self.peek() == "^":
            self.pos += 1
            val = val ** self.integer()
        return val

    def generator(self) -> AlgElem:
        self.skip()
        if not self.text.startswith("x[", self.pos):
            self.error("expected 'x['")
        self.pos += 2
        coords = [self.integer()]
        while self.peek() == ",":
            self.pos += 1
            coords.append(self.integer())
        self.expect("]")
        start = self.pos
        if len(coords) != self.alg.n or tuple(coords) not in self.alg.rs.positive_roots:
            self.pos = start
            self.error(f"{tuple(coords)} is not a positive root of rank {self.alg.n}")
        self.expect("(")
        mode = self.signed_integer()
        self.expect(")")
        return self.alg.x(tuple(coords), mode)


def parse_elem(alg: LoopAlgebra, text: str) -> AlgElem:
    return _Parser(alg, text).parse()
