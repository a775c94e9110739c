"""Textual formats for moulds and permutations.

Mould grammar (round-trips exactly through :func:`format_mould`)::

    mould    := "0" | term ((" + " | " - ") term)*
    term     := coeff [" * " monomial] [" / " form+]
    coeff    := ["-"] digits ["/" digits] | "(" q-expression ")"
    monomial := "u3*u3*u5"
    form     := "[" "u1+u2-u4" "]"          (integer multiples as "2u1")

Permutations are digit words ("2413") up to size 9 and comma separated
otherwise.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .errors import ParseError
from .qrat import coeff_str, is_formal
from .ratmould import LinearForm, RatMould

_RATIONAL = re.compile(r"-?\d+(?:/\d+)?")
_VAR = re.compile(r"u(\d+)")
_FORM_ITEM = re.compile(r"([+-]?)(\d*)u(\d+)")


def format_perm(sigma: Sequence[int]) -> str:
    if len(sigma) <= 9:
        return "".join(str(x) for x in sigma)
    return ",".join(str(x) for x in sigma)


def parse_perm(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        word = tuple(int(x) for x in text.split(",")) if "," in text else tuple(int(c) for c in text)
    except ValueError:
        raise ParseError("not a permutation word", text, 0) from None
    if sorted(word) != list(range(1, len(word) + 1)):
        raise ParseError("not a permutation of 1..n", text, 0)
    return word


def _format_coeff(c) -> tuple[str, str]:
    """Return (sign, magnitude text)."""
    if is_formal(c):
        s = coeff_str(c)
        if "q" not in s and _RATIONAL.fullmatch(s):
            c = Fraction(s)
        else:
            return "+", f"({s})"
    c = Fraction(c)
    return ("-" if c < 0 else "+"), str(abs(c))


def format_term(coeff_text: str, monomial, denominator) -> str:
    out = coeff_text
    if monomial:
        out += " * " + "*".join(f"u{i}" for i in monomial)
    if denominator:
        out += " / " + "".join(f"[{f}]" for f in denominator)
    return out


def format_mould(m: RatMould) -> str:
    if m.is_zero():
        return "0"
    pieces = []
    for k, t in enumerate(m.terms):
        sign, mag = _format_coeff(t.coeff)
        body = format_term(mag, t.monomial, t.denominator)
        if k == 0:
            pieces.append(("-" if sign == "-" else "") + body)
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise ParseError(msg, self.text, self.pos)

    def peek(self, s: str) -> bool:
        return self.text.startswith(s, self.pos)

    def eat(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def coeff(self):
        if self.peek("("):
            depth, start = 0, self.pos
            while self.pos < len(self.text):
                ch = self.text[self.pos]
                depth += ch == "("
                depth -= ch == ")"
                self.pos += 1
                if depth == 0:
                    break
            else:
                self.error("unbalanced parenthesis")
            return _parse_formal(self.text[start + 1 : self.pos - 1])
        mt = _RATIONAL.match(self.text, self.pos)
        if not mt:
            self.error("expected a rational coefficient")
        self.pos = mt.end()
        return Fraction(mt.group())

    def monomial(self) -> list[int]:
        out = []
        while True:
            mt = _VAR.match(self.text, self.pos)
            if not mt:
                self.error("expected a variable u<k>")
            out.append(int(mt.group(1)))
            self.pos = mt.end()
            if not self.eat("*"):
                return out

    def form(self) -> LinearForm:
        if not self.eat("["):
            self.error("expected '['")
        acc: dict[int, int] = {}
        first = True
        while not self.peek("]"):
            mt = _FORM_ITEM.match(self.text, self.pos)
            if not mt or (not first and not mt.group(1)):
                self.error("malformed linear form")
            mag = int(mt.group(2)) if mt.group(2) else 1
            i = int(mt.group(3))
            acc[i] = acc.get(i, 0) + (-mag if mt.group(1) == "-" else mag)
            self.pos = mt.end()
            first = False
        self.pos += 1
        form = LinearForm.of(acc)
        if not form.coeffs:
            self.error("empty linear form")
        return form

    def term(self, sign: int):
        c = self.coeff() * sign
        mono: list[int] = []
        forms: list[LinearForm] = []
        if self.eat(" * "):
            mono = self.monomial()
        if self.eat(" / "):
            while self.peek("["):
                forms.append(self.form())
            if not forms:
                self.error("expected denominator forms")
        return c, mono, forms


def _parse_formal(expr: str):
    from sympy import sympify

    from .qrat import _field

    sym = sympify(expr)
    names = sorted(str(s) for s in sym.free_symbols) or ["q"]
    if len(names) != 1:
        raise ParseError("coefficients may involve one formal parameter", expr, 0)
    K, _ = _field(names[0])
    return K.from_expr(sym)


def parse_mould(text: str, arity: int | None = None) -> RatMould:
    """Parse the mould grammar; ``arity`` defaults to the largest index used."""
    text = text.strip()
    if text == "0":
        return RatMould.zero(arity or 0)
    p = _Parser(text)
    raw = []
    sign = 1
    while True:
        raw.append(p.term(sign))
        if p.pos == len(text):
            break
        if p.eat(" + "):
            sign = 1
        elif p.eat(" - "):
            sign = -1
        else:
            p.error("expected ' + ' or ' - '")
    used = 0
    for _, mono, forms in raw:
        used = max([used, *mono, *(i for f in forms for i in f.variables)])
    if arity is None:
        arity = used
    elif used > arity:
        raise ParseError(f"variable u{used} exceeds arity {arity}", text, 0)
    return RatMould.from_raw(arity, raw)
