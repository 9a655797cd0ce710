"""Recursive-descent parser for polynomial and ordered-product expressions.

Grammar (no implicit multiplication)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" INT)?
    atom   := RATIONAL | NAME | NAME "(" NAME ")" | "(" expr ")"
    RATIONAL := INT ("/" INT)?

The same parser serves the commutative polynomial ring and the enveloping
algebra; an :class:`Interp` supplies the meaning of atoms and operators.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from .poly import Polynomial, as_vartable


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int | None = None):
        self.pos = pos
        self.msg = msg
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{msg}{where}")


_NUM = re.compile(r"(\d+)(?:/(\d+))?")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


@dataclass
class Token:
    kind: str  # "num", "name", "op", "end"
    value: Any
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos, n = 0, len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if m := _NUM.match(text, pos):
            if m.group(2) is not None and int(m.group(2)) == 0:
                raise ParseError("zero denominator", pos)
            den = int(m.group(2)) if m.group(2) is not None else 1
            out.append(Token("num", Fraction(int(m.group(1)), den), pos))
            pos = m.end()
        elif m := _NAME.match(text, pos):
            out.append(Token("name", m.group(0), pos))
            pos = m.end()
        elif ch in "+-*^()":
            out.append(Token("op", ch, pos))
            pos += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", pos)
    out.append(Token("end", None, n))
    return out


@dataclass
class Interp:
    """Semantics for the parser."""

    const: Callable[[Fraction], Any]
    name: Callable[[str, int], Any]
    add: Callable[[Any, Any], Any]
    mul: Callable[[Any, Any], Any]
    neg: Callable[[Any], Any]
    call: Callable[[str, str, int], Any] | None = None
    pow: Callable[[Any, int], Any] | None = None

    def power(self, base, e: int):
        if self.pow is not None:
            return self.pow(base, e)
        result = self.const(Fraction(1))
        for _ in range(e):
            result = self.mul(result, base)
        return result


class _Parser:
    def __init__(self, text: str, interp: Interp):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.it = interp

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op: str) -> Token:
        t = self.take()
        if t.kind != "op" or t.value != op:
            raise ParseError(f"expected {op!r}", t.pos)
        return t

    def _matching_close(self) -> Token:
        """Consume tokens up to the ``)`` closing an already consumed ``(``."""
        depth = 1
        while True:
            t = self.take()
            if t.kind == "end":
                raise ParseError("expected ')'", t.pos)
            if t.kind == "op" and t.value in "()":
                depth += 1 if t.value == "(" else -1
                if depth == 0:
                    return t

    def parse(self):
        if self.peek().kind == "end":
            raise ParseError("empty expression", 0)
        v = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"unexpected token {t.value!r}", t.pos)
        return v

    def expr(self):
        v = self.term()
        while self.peek().kind == "op" and self.peek().value in "+-":
            op = self.take().value
            rhs = self.term()
            v = self.it.add(v, rhs if op == "+" else self.it.neg(rhs))
        return v

    def term(self):
        v = self.unary()
        while self.peek().kind == "op" and self.peek().value == "*":
            self.take()
            v = self.it.mul(v, self.unary())
        return v

    def unary(self):
        t = self.peek()
        if t.kind == "op" and t.value in "+-":
            self.take()
            v = self.unary()
            return self.it.neg(v) if t.value == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().kind == "op" and self.peek().value == "^":
            self.take()
            t = self.take()
            if t.kind == "op" and t.value == "-":
                raise ParseError("negative exponent", t.pos)
            if t.kind != "num" or t.value.denominator != 1:
                raise ParseError("exponent must be a nonnegative integer", t.pos)
            return self.it.power(base, int(t.value))
        return base

    def atom(self):
        t = self.take()
        if t.kind == "num":
            return self.it.const(t.value)
        if t.kind == "name":
            if self.peek().kind == "op" and self.peek().value == "(":
                if self.it.call is None:
                    raise ParseError(f"function application {t.value}(...) not allowed", t.pos)
                open_tok = self.take()
                close_tok = self._matching_close()
                raw = self.text[open_tok.pos + 1:close_tok.pos]
                arg = raw.strip()
                if not arg:
                    raise ParseError("empty argument", close_tok.pos)
                start = open_tok.pos + 1 + len(raw) - len(raw.lstrip())
                return self.it.call(t.value, arg, start)
            return self.it.name(t.value, t.pos)
        if t.kind == "op" and t.value == "(":
            v = self.expr()
            self.expect(")")
            return v
        if t.kind == "end":
            raise ParseError("unexpected end of input", t.pos)
        raise ParseError(f"unexpected token {t.value!r}", t.pos)


def parse_expression(text: str, interp: Interp):
    return _Parser(text, interp).parse()


def parse_poly(text: str, vars) -> Polynomial:
    """Parse ``text`` into a canonical polynomial over ``vars``."""
    vars = as_vartable(vars)

    def name(n, pos):
        if n not in vars:
            raise ParseError(f"unknown variable {n!r}", pos)
        return Polynomial.var(vars, n)

    interp = Interp(
        const=lambda c: Polynomial.const(vars, c),
        name=name,
        add=lambda a, b: a + b,
        mul=lambda a, b: a * b,
        neg=lambda a: -a,
        pow=lambda base, e: base**e,
    )
    return parse_expression(text, interp)
