"""Parser for rational-function expressions in t.

Grammar (whitespace is insignificant)::

    sum     := ['+' | '-'] product (('+' | '-') product)*
    product := power (('*' | '/') power)*
    power   := atom ('^' ['-' | '+'] INT)?
    atom    := INT | '[' INT (',' INT)* ']' | 't' | '(' sum ')'

Integer literals are mapped into the prime subfield; bracketed literals are
little-endian coefficient vectors of an element of GF(r^m).  Products and
quotients stay factored; only sums force expansion (and re-factorization).
"""

from __future__ import annotations

import re

from .errors import DomainError, ParseError
from .ffield import GF, FieldElement
from .polyarith import Polynomial
from .ratfield import FactoredElement, GaloisContext

_TOKEN = re.compile(r"\s*(?:(\d+)|(t)|([-+*/^()\[\],]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            j = pos
            while j < len(text) and text[j].isspace():
                j += 1
            raise ParseError(f"unexpected character {text[j]!r}", j)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("t", "t", start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, field: GF, seed: int):
        self.text = text
        self.field = field
        self.seed = seed
        self.tokens = _tokenize(text)
        self.i = 0

    # None stands for the zero function
    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.take()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    def at(self, *values: str) -> bool:
        kind, val, _ = self.peek()
        return kind == "op" and val in values

    def parse(self) -> FactoredElement:
        value = self.sum()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        if value is None:
            raise DomainError("expression evaluates to zero, which is not in E^x")
        return value

    def sum(self):
        negate = False
        if self.at("+", "-"):
            negate = self.take()[1] == "-"
        acc = self.product()
        if negate:
            acc = self._neg(acc)
        while self.at("+", "-"):
            op = self.take()[1]
            rhs = self.product()
            acc = self._add(acc, self._neg(rhs) if op == "-" else rhs)
        return acc

    def product(self):
        acc = self.power()
        while self.at("*", "/"):
            op, pos = self.take()[1:]
            rhs = self.power()
            if op == "*":
                acc = None if acc is None or rhs is None else acc * rhs
            else:
                if rhs is None:
                    raise DomainError(f"division by zero at position {pos}")
                acc = None if acc is None else acc / rhs
        return acc

    def power(self):
        base = self.atom()
        if not self.at("^"):
            return base
        _, _, pos = self.take()
        sign = 1
        if self.at("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        kind, val, epos = self.take()
        if kind != "int":
            raise ParseError("exponent must be an integer", epos)
        n = sign * int(val)
        if base is None:
            if n < 0:
                raise DomainError(f"zero raised to a negative power at position {pos}")
            return None if n > 0 else FactoredElement.one(self.field)
        return base**n

    def atom(self):
        kind, val, pos = self.take()
        k = self.field
        if kind == "int":
            c = k.from_int(int(val))
            return FactoredElement(FieldElement(k, c)) if c else None
        if kind == "t":
            return FactoredElement(k.one, [(Polynomial.t(k), 1)])
        if val == "[":
            digits = []
            while True:
                kind, v, p = self.take()
                if kind != "int":
                    raise ParseError("expected integer in coefficient literal", p)
                digits.append(int(v))
                if self.at(","):
                    self.take()
                    continue
                self.expect("]")
                break
            if len(digits) > k.m:
                raise ParseError(f"coefficient literal longer than extension degree {k.m}", pos)
            c = k.encode(digits)
            return FactoredElement(FieldElement(k, c)) if c else None
        if val == "(":
            inner = self.sum()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)

    def _neg(self, a):
        if a is None:
            return None
        return a * FactoredElement(-self.field.one)

    def _add(self, a, b):
        if a is None:
            return b
        if b is None:
            return a
        na, da = a.numerator_denominator()
        nb, db = b.numerator_denominator()
        num = na * db + nb * da
        if num.is_zero():
            return None
        return FactoredElement.from_polynomial(num, self.seed) / FactoredElement.from_polynomial(da * db, self.seed)


def parse_ratfunc(expr: str, ctx: GaloisContext | GF, seed: int = 0) -> FactoredElement:
    field = ctx.field if isinstance(ctx, GaloisContext) else ctx
    return _Parser(expr, field, seed).parse()


def parse_field_element(text: str, field: GF) -> FieldElement:
    """Parse an integer or ``[c0,c1,...]`` literal as an element of ``field``."""
    p = _Parser(text, field, 0)
    value = p.atom()
    kind, val, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {val!r} in field element", pos)
    if value is None:
        return field.zero
    if not value.is_constant():
        raise ParseError("field element literal must be constant", 0)
    return value.unit
