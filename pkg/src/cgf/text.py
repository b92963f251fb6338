"""Canonical text form of operator expressions, and its parser.

Grammar (whitespace-insensitive)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' uint)*
    atom   := number | 'i' | 'w' | opname | '(' expr ')'
    number := digits ['/' digits] ['i']          e.g. 3, 1/2, 3i, 1/2i

``opname`` is a mode (``a1 a2 b1 b2``) with an optional dagger, written ``^``
(when not followed by a digit), ``†``, or ``+`` (only directly before ``*``,
``)`` or the end), or one of the named generators / physical operators
(``M Mdag N2 n_a_1 ... mdag_3 r x_1 ... L2 l_3``).  ``w`` is the frequency
symbol.  Division is only allowed between operator-free operands, so
``1/w * M`` is fine but ``(M + Mdag)/w`` is rejected.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .scalars import ONE, W, Coefficient
from .wick import NMODES, OperatorExpr, mode, scalar

__all__ = ["format_coefficient", "format_expr", "parse_expr", "ParseError", "operator_names"]

_SLOT_NAMES = ("a1^", "a2^", "b1^", "b2^", "a1", "a2", "b1", "b2")


# -- printing -----------------------------------------------------------------

def _fmt_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _is_negative(g) -> bool:
    re_, im = g
    return re_ < 0 or (re_ == 0 and im < 0)


def _fmt_gauss(g) -> str:
    """Non-negative-leading Gaussian rational; compound values are parenthesised."""
    re_, im = g
    if not im:
        return _fmt_rational(re_)
    imag = "i" if im == 1 else ("-i" if im == -1 else _fmt_rational(im) + "i")
    if not re_:
        return imag
    sign = " - " if im < 0 else " + "
    imag_abs = "i" if abs(im) == 1 else _fmt_rational(abs(im)) + "i"
    return f"({_fmt_rational(re_)}{sign}{imag_abs})"


def _fmt_poly(poly) -> str:
    parts = []
    for k, g in poly:
        neg = _is_negative(g)
        if neg:
            g = (-g[0], -g[1])
        sym = "" if k == 0 else ("w" if k == 1 else f"w^{k}")
        if sym and g == (1, 0):
            body = sym
        elif sym:
            body = f"{_fmt_gauss(g)}*{sym}"
        else:
            body = _fmt_gauss(g)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts) if parts else "0"


def format_coefficient(c: Coefficient) -> str:
    """Canonical text of an exact scalar, e.g. ``1/w`` or ``(1/2)*w^2 + 1``."""
    num = _fmt_poly(c.num)
    if c.den == ((0, (1, 0)),):
        return num
    if len(c.num) > 1 or num.startswith("-"):
        num = f"({num})"
    den = _fmt_poly(c.den)
    if len(c.den) > 1 or "*" in den:
        den = f"({den})"
    return f"{num}/{den}"


def _coef_sign(c: Coefficient) -> bool:
    return bool(c.num) and _is_negative(c.num[0][1])


def _fmt_mono(mono) -> str:
    factors = []
    for slot in range(2 * NMODES):
        e = mono[slot]
        if e:
            factors.append(_SLOT_NAMES[slot] + (f"^{e}" if e > 1 else ""))
    return "*".join(factors)


def format_expr(expr: OperatorExpr) -> str:
    """Deterministic text: terms in graded lexicographic order, ASCII daggers."""
    pieces = []
    for mono, c in expr.items():
        neg = _coef_sign(c)
        if neg:
            c = -c
        ops = _fmt_mono(mono)
        ctext = format_coefficient(c)
        if len(c.num) > 1 and c.den == ((0, (1, 0)),):
            ctext = f"({ctext})"
        if not ops:
            body = ctext
        elif c == ONE:
            body = ops
        else:
            body = f"{ctext}*{ops}"
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces) if pieces else "0"


# -- parsing ------------------------------------------------------------------

_NUMBER = re.compile(r"(\d+)(?:\s*/\s*(\d+))?(?:\s*(i)(?![A-Za-z0-9_]))?")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _named_operators():
    from . import hydrogenic

    table = {}
    for name in hydrogenic.GENERATOR_NAMES:
        table[name] = lambda n=name: hydrogenic.generator(n)
    for name in hydrogenic.PHYSICAL_NAMES:
        table[name] = lambda n=name: hydrogenic.physical_operator(n)
    for alias, name in hydrogenic.NAME_ALIASES.items():
        table[alias] = table[name]
    return table


_NAMED = None


def operator_names() -> list[str]:
    global _NAMED
    if _NAMED is None:
        _NAMED = _named_operators()
    return sorted(_NAMED)


class _Tok:
    __slots__ = ("kind", "value", "pos")

    def __init__(self, kind, value, pos):
        self.kind, self.value, self.pos = kind, value, pos

    def __repr__(self):
        return f"_Tok({self.kind!r}, {self.value!r}, {self.pos})"


def _next_nonspace(text, i):
    while i < len(text) and text[i].isspace():
        i += 1
    return i


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    i = 0
    n = len(text)
    while True:
        i = _next_nonspace(text, i)
        if i >= n:
            break
        ch = text[i]
        m = _NUMBER.match(text, i)
        if m:
            if m.group(2) is not None and int(m.group(2)) == 0:
                raise ParseError("zero denominator", len(text[: text.index("/", i)].encode()), {"nonzero integer"})
            num = Fraction(int(m.group(1)), int(m.group(2) or 1))
            value = Coefficient.gaussian(0, num) if m.group(3) else Coefficient(num)
            toks.append(_Tok("num", value, i))
            i = m.end()
            continue
        m = _IDENT.match(text, i)
        if m:
            name = m.group(0)
            pos = i
            i = m.end()
            if name in ("a1", "a2", "b1", "b2"):
                j = _next_nonspace(text, i)
                dag = False
                if j < n and text[j] == "†":
                    dag, i = True, j + 1
                elif j < n and text[j] == "^":
                    k = _next_nonspace(text, j + 1)
                    if not (k < n and text[k].isdigit()):
                        dag, i = True, j + 1
                elif j < n and text[j] == "+" and j == i:
                    k = _next_nonspace(text, j + 1)
                    if k >= n or text[k] in ")*":
                        dag, i = True, j + 1
                toks.append(_Tok("mode", name + ("^" if dag else ""), pos))
            elif name == "i":
                toks.append(_Tok("num", Coefficient.gaussian(0, 1), pos))
            elif name == "w":
                toks.append(_Tok("sym", W, pos))
            else:
                toks.append(_Tok("name", name, pos))
            continue
        if ch in "+-*/^()":
            toks.append(_Tok(ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", len(text[:i].encode()), {"number", "operator", "("})
    toks.append(_Tok("end", None, n))
    return toks


class _Parser:
    """Recursive descent; every node returns ``(OperatorExpr, operator_free)``."""

    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.k = 0

    def _offset(self, tok):
        return len(self.text[: tok.pos].encode())

    def peek(self):
        return self.toks[self.k]

    def take(self):
        tok = self.toks[self.k]
        self.k += 1
        return tok

    def fail(self, message, expected):
        raise ParseError(message, self._offset(self.peek()), expected)

    def parse(self):
        value, _ = self.expr()
        if self.peek().kind != "end":
            self.fail(f"unexpected {self.peek().value!r}", {"+", "-", "*", "/", "end of input"})
        return value

    def expr(self):
        sign = 1
        if self.peek().kind in ("+", "-"):
            sign = -1 if self.take().kind == "-" else 1
        value, pure = self.term()
        if sign < 0:
            value = -value
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            rhs, rpure = self.term()
            value = value + rhs if op == "+" else value - rhs
            pure = pure and rpure
        return value, pure

    def term(self):
        value, pure = self.unary()
        while self.peek().kind in ("*", "/"):
            tok = self.take()
            rhs, rpure = self.unary()
            if tok.kind == "*":
                value = value * rhs
                pure = pure and rpure
                continue
            if not (pure and rpure):
                raise ParseError(
                    "division is only allowed between operator-free scalars",
                    self._offset(tok),
                    {"*", "+", "-"},
                )
            divisor = rhs.coefficient((0,) * 8)
            if divisor.is_zero():
                raise ParseError("division by zero", self._offset(tok), {"nonzero scalar"})
            value = value / divisor
        return value, pure

    def unary(self):
        if self.peek().kind == "-":
            self.take()
            value, pure = self.unary()
            return -value, pure
        return self.power()

    def power(self):
        value, pure = self.atom()
        while self.peek().kind == "^":
            self.take()
            tok = self.peek()
            if tok.kind != "num" or not tok.value.is_constant() or tok.value.constant_value()[1] or \
                    tok.value.constant_value()[0].denominator != 1:
                self.fail("exponent must be a non-negative integer", {"uint"})
            self.take()
            value = value ** int(tok.value.constant_value()[0])
        return value, pure

    def atom(self):
        global _NAMED
        tok = self.take()
        if tok.kind == "num" or tok.kind == "sym":
            return scalar(tok.value), True
        if tok.kind == "mode":
            return mode(tok.value), False
        if tok.kind == "name":
            if _NAMED is None:
                _NAMED = _named_operators()
            make = _NAMED.get(tok.value)
            if make is None:
                self.k -= 1
                self.fail(f"unknown operator name {tok.value!r}", {"a1", "a2", "b1", "b2", "named operator"})
            return make(), False
        if tok.kind == "(":
            value, pure = self.expr()
            if self.peek().kind != ")":
                self.fail("unbalanced parenthesis", {")"})
            self.take()
            return value, pure
        self.k -= 1
        self.fail(
            "expected an operand" if tok.kind != "end" else "unexpected end of input",
            {"number", "i", "w", "operator name", "("},
        )


def parse_expr(text: str) -> OperatorExpr:
    """Parse operator text into its canonical normal-ordered expression.

    Raises :class:`~cgf.errors.ParseError` carrying the byte offset and the set
    of tokens that were acceptable there.
    """
    return _Parser(text).parse()
