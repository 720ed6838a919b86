"""Text form of star-polynomials.

Grammar (whitespace insignificant)::

    expr    := ['+' | '-'] term (('+' | '-') term)*
    term    := factor (['*'] factor)*
    factor  := '-' factor | atom ['^' INT]
    atom    := INT ['/' INT] | 'y'INT | 'z'INT | 't' | '(' expr ')'
             | '[' expr (',' expr)+ ']'

``[a, b, c]`` is the left-normed commutator ``[[a, b], c]``. ``t`` is the
adjoined root of the modulus and is only valid over extension fields.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import PolynomialSyntaxError, UnknownVariable
from .field import Field, get_field
from .freealg import StarPolynomial, left_normed_commutator, letter_name, word_key

_TOKEN = re.compile(r"\s*(?:(\d+)|([yz]\d+|[A-Za-z_]+\d*)|(\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text) and not text[pos:].isspace():
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        elif m.group(3) is not None:
            if m.group(3) not in "+-*^/()[],":
                raise PolynomialSyntaxError(f"unexpected character {m.group(3)!r}", start)
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, field):
        self.field = field
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value or tok[0] == "int":
            raise PolynomialSyntaxError(f"expected {value!r}", tok[2])
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise PolynomialSyntaxError("empty input", 0)
        result = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise PolynomialSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return result

    def expr(self):
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def _starts_atom(self, tok):
        return tok[0] in ("int", "name") or (tok[0] == "op" and tok[1] in "([")

    def term(self):
        acc = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                acc = acc * self.factor()
            elif self._starts_atom(tok):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            exp = self.take()
            if exp[0] != "int":
                raise PolynomialSyntaxError("exponent must be a nonnegative integer", exp[2])
            return base ** int(exp[1])
        return base

    def atom(self):
        tok = self.take()
        kind, value, pos = tok
        F = self.field
        if kind == "int":
            num = int(value)
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                den = self.take()
                if den[0] != "int":
                    raise PolynomialSyntaxError("expected integer denominator", den[2])
                if int(den[1]) == 0:
                    raise PolynomialSyntaxError("zero denominator", den[2])
                return StarPolynomial.constant(F, Fraction(num, int(den[1])))
            return StarPolynomial.constant(F, num)
        if kind == "name":
            m = re.fullmatch(r"([yz])(\d+)", value)
            if m and int(m.group(2)) >= 1:
                k = int(m.group(2))
                letter = k if m.group(1) == "y" else -k
                return StarPolynomial.word(F, (letter,))
            if value == "t" and F.is_finite and F.k > 1:
                return StarPolynomial._raw(F, {(): F.generator()})
            raise UnknownVariable(f"unknown variable {value!r}", pos)
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "op" and value == "[":
            items = [self.expr()]
            while self.peek()[0] == "op" and self.peek()[1] == ",":
                self.take()
                items.append(self.expr())
            self.expect("]")
            if len(items) < 2:
                raise PolynomialSyntaxError("a commutator needs at least two entries", pos)
            return left_normed_commutator(items)
        if kind == "end":
            raise PolynomialSyntaxError("unexpected end of input", pos)
        raise PolynomialSyntaxError(f"unexpected {value!r}", pos)


def parse_polynomial(text, field="Q"):
    """Parse ``text`` into a :class:`StarPolynomial` over ``field``."""
    field = get_field(field) if not isinstance(field, Field) else field
    return _Parser(text, field).parse()


def format_word(word):
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        name = letter_name(word[i])
        parts.append(name if j - i == 1 else f"{name}^{j - i}")
        i = j
    return "*".join(parts)


def format_polynomial(f):
    """Deterministic text, highest graded-lex term first."""
    F = f.field
    if not f.terms:
        return "0"
    out = []
    for w in sorted(f.terms, key=word_key, reverse=True):
        c = f.terms[w]
        neg = F.is_negative(c)
        mag = F.neg(c) if neg else c
        ctext = F.format(mag)
        if w:
            body = format_word(w) if mag == F.one else f"{ctext}*{format_word(w)}"
        else:
            body = ctext
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)
