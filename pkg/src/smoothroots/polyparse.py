"""Parser for the command line's polynomial notation.

A deliberately small language over the variables x and t: integer and
rational literals (`3`, `5/2`), sums and differences, products written by
juxtaposition or `*`, natural-number powers with `^`, and parentheses.
Coefficients stay exact Fractions from the first token to the final jet.
A polynomial is held as a mapping {(x_power, t_power): Fraction}; the two
converters below feed the certificate and the curve machinery.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError
from .factor import PolyCurve
from .jet import DEFAULT_ORDER, Jet
from .symmetric import PolyCoeffs


def _tokenize(text: str) -> list:
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(("num", int(text[i:j]), i))
            i = j
        elif ch in "xt":
            toks.append(("var", ch, i))
            i += 1
        elif ch in "+-*^()/":
            toks.append((ch, ch, i))
            i += 1
        else:
            raise InputError(
                f"unexpected character {ch!r} at position {i}")
    toks.append(("end", None, len(text)))
    return toks


def _add(p: dict, q: dict) -> dict:
    out = dict(p)
    for key, c in q.items():
        s = out.get(key, 0) + c
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return out


def _scale(p: dict, c) -> dict:
    if not c:
        return {}
    return {key: v * c for key, v in p.items()}


def _mul(p: dict, q: dict) -> dict:
    out = {}
    for (i, j), a in p.items():
        for (k, l), b in q.items():
            key = (i + k, j + l)
            s = out.get(key, 0) + a * b
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self) -> str:
        return self.toks[self.pos][0]

    def take(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> dict:
        p = self.expr()
        kind, _, at = self.toks[self.pos]
        if kind != "end":
            raise InputError(f"trailing input at position {at}")
        return p

    def expr(self) -> dict:
        sign = 1
        while self.peek() in "+-":
            if self.take()[0] == "-":
                sign = -sign
        acc = _scale(self.term(), sign)
        while self.peek() in "+-":
            op = self.take()[0]
            acc = _add(acc, _scale(self.term(), -1 if op == "-" else 1))
        return acc

    def term(self) -> dict:
        acc = self.factor()
        while True:
            kind = self.peek()
            if kind == "*":
                self.take()
                acc = _mul(acc, self.factor())
            elif kind in ("num", "var", "("):
                acc = _mul(acc, self.factor())
            else:
                return acc

    def factor(self) -> dict:
        if self.peek() == "-":
            self.take()
            return _scale(self.factor(), -1)
        base = self.atom()
        if self.peek() == "^":
            self.take()
            kind, val, at = self.take()
            if kind != "num":
                raise InputError(
                    f"exponent must be a natural number (position {at})")
            out = {(0, 0): Fraction(1)}
            for _ in range(val):
                out = _mul(out, base)
            base = out
        return base

    def atom(self) -> dict:
        kind, val, at = self.take()
        if kind == "num":
            q = Fraction(val)
            if self.peek() == "/":
                self.take()
                k2, v2, at2 = self.take()
                if k2 != "num" or v2 == 0:
                    raise InputError(
                        f"denominator must be a nonzero natural number "
                        f"(position {at2})")
                q = Fraction(val, v2)
            return {(0, 0): q} if q else {}
        if kind == "var":
            return {(1, 0) if val == "x" else (0, 1): Fraction(1)}
        if kind == "(":
            p = self.expr()
            kind2, _, at2 = self.take()
            if kind2 != ")":
                raise InputError(f"missing ')' at position {at2}")
            return p
        raise InputError(f"unexpected {kind!r} at position {at}")


def parse_poly(text: str) -> dict:
    """Parse to a {(x_power, t_power): Fraction} mapping."""
    return _Parser(text).parse()


def _split_lead(p: dict):
    """(x-degree, leading coefficient); the lead must not involve t."""
    if not p:
        raise InputError("the zero polynomial has no root structure")
    deg = max(i for i, _ in p)
    if deg == 0:
        raise InputError("the input needs a positive degree in x")
    lead = [(j, c) for (i, j), c in p.items() if i == deg]
    if len(lead) != 1 or lead[0][0] != 0:
        raise InputError(
            "the leading x-coefficient must be a nonzero constant")
    return deg, lead[0][1]


def poly_coeffs(text: str) -> PolyCoeffs:
    """A t-free input as certificate coefficients, normalized monic."""
    p = parse_poly(text)
    if any(j for (_, j) in p):
        raise InputError("certificates take polynomials in x only")
    deg, lead = _split_lead(p)
    plain = [p.get((deg - k, 0), Fraction(0)) / lead for k in range(deg + 1)]
    return PolyCoeffs.from_plain(plain)


def poly_curve(text: str, order: int = DEFAULT_ORDER) -> PolyCurve:
    """An input in x and t as a monic jet family (normalized by the lead)."""
    p = parse_poly(text)
    deg, lead = _split_lead(p)
    plain = []
    for k in range(deg + 1):
        row = {j: c / lead for (i, j), c in p.items() if i == deg - k}
        top = max(row) if row else 0
        if top > order:
            raise InputError(
                f"t-degree {top} exceeds the truncation order {order}")
        plain.append(Jet.from_poly(
            [row.get(j, Fraction(0)) for j in range(top + 1)], order))
    return PolyCurve.from_plain_jets(plain)
