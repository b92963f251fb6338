"""Exact scalars: rational functions of the oscillator frequency ``w``.

A :class:`Coefficient` is a ratio of two univariate polynomials in ``w`` whose
coefficients are Gaussian rationals.  Values are immutable, hashable and kept
in a canonical form (common factors cancelled, denominator monic), so ``==``
is structural equality.

Gaussian rationals are stored as ``(re, im)`` pairs of :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["Coefficient", "W", "ONE", "ZERO", "I"]

SYMBOL = "w"

_F0 = Fraction(0)
_F1 = Fraction(1)
_CZERO = (_F0, _F0)
_CONE = (_F1, _F0)


# -- Gaussian rational helpers -------------------------------------------------

def _cadd(x, y):
    return (x[0] + y[0], x[1] + y[1])


def _cmul(x, y):
    a, b = x
    c, d = y
    if not b and not d:
        return (a * c, _F0)
    return (a * c - b * d, a * d + b * c)


def _cinv(x):
    a, b = x
    if not b:
        return (1 / a, _F0)
    n = a * a + b * b
    return (a / n, -b / n)


def _cneg(x):
    return (-x[0], -x[1])


def _as_gauss(value):
    if isinstance(value, tuple):
        return value
    if isinstance(value, (int, Rational)):
        return (Fraction(value), _F0)
    if isinstance(value, complex):
        re, im = Fraction(value.real), Fraction(value.imag)
        return (re, im)
    if isinstance(value, float):
        return (Fraction(value), _F0)
    raise TypeError(f"cannot build an exact scalar from {type(value).__name__}")


# -- univariate polynomials: dict {exponent: gaussian rational} ----------------

def _pmul(p, q):
    out = {}
    for i, x in p.items():
        for j, y in q.items():
            k = i + j
            z = _cmul(x, y)
            if k in out:
                z = _cadd(out[k], z)
            out[k] = z
    return {k: v for k, v in out.items() if v != _CZERO}


def _padd(p, q):
    out = dict(p)
    for k, v in q.items():
        if k in out:
            s = _cadd(out[k], v)
            if s == _CZERO:
                del out[k]
            else:
                out[k] = s
        else:
            out[k] = v
    return out


def _pscale(p, c):
    if c == _CONE:
        return dict(p)
    return {k: _cmul(v, c) for k, v in p.items()}


def _pshift(p, s):
    return {k + s: v for k, v in p.items()}


def _pdivmod(p, q):
    """Polynomial long division ``p = quot*q + rem`` over Q(i)."""
    rem = dict(p)
    quot = {}
    dq = max(q)
    inv_lead = _cinv(q[dq])
    while rem and max(rem) >= dq:
        dr = max(rem)
        c = _cmul(rem[dr], inv_lead)
        s = dr - dq
        quot[s] = c
        rem = _padd(rem, {k + s: _cneg(_cmul(v, c)) for k, v in q.items()})
    return quot, rem


def _pmonic(p):
    lead = p[max(p)]
    if lead == _CONE:
        return p
    return _pscale(p, _cinv(lead))


def _pgcd(p, q):
    while q:
        _, r = _pdivmod(p, q)
        p, q = q, r
    return _pmonic(p)


def _freeze(p):
    return tuple(sorted(p.items(), key=lambda kv: -kv[0]))


class Coefficient:
    """Exact element of ``Q(i)(w)``.

    >>> half_over_w = Coefficient(Fraction(1, 2)) / W
    >>> (half_over_w * W * 2) == 1
    True
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, value=0, _den=None):
        if isinstance(value, Coefficient):
            self.num, self.den, self._hash = value.num, value.den, value._hash
            return
        if isinstance(value, dict):
            num, den = value, _den
        else:
            c = _as_gauss(value)
            num = {0: c} if c != _CZERO else {}
            den = None
        self.num, self.den = _canonical(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        obj._hash = None
        return obj

    @classmethod
    def symbol(cls) -> Coefficient:
        """The formal frequency ``w``."""
        return cls._raw(((1, _CONE),), ((0, _CONE),))

    @classmethod
    def gaussian(cls, re, im=0) -> Coefficient:
        return cls((Fraction(re), Fraction(im)))

    # -- structure ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return len(self.den) == 1 and self.den[0][0] == 0 and all(k == 0 for k, _ in self.num)

    def constant_value(self):
        """Return the Gaussian rational ``(re, im)`` of a constant coefficient."""
        if not self.is_constant():
            raise ValueError(f"{self} depends on {SYMBOL}")
        return self.num[0][1] if self.num else _CZERO

    def is_real(self) -> bool:
        return all(not v[1] for _, v in self.num) and all(not v[1] for _, v in self.den)

    def conjugate(self) -> Coefficient:
        conj = lambda poly: tuple((k, (v[0], -v[1])) for k, v in poly)
        return Coefficient._raw(conj(self.num), conj(self.den))

    def evaluate(self, w: complex = 1.0) -> complex:
        """Numeric value at ``w``."""
        return _peval(self.num, w) / _peval(self.den, w)

    def __complex__(self):
        re, im = self.constant_value()
        return complex(float(re), float(im))

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return Coefficient(_padd(dict(self.num), dict(other.num)), dict(self.den))
        num = _padd(_pmul(dict(self.num), dict(other.den)), _pmul(dict(other.num), dict(self.den)))
        return Coefficient(num, _pmul(dict(self.den), dict(other.den)))

    __radd__ = __add__

    def __neg__(self):
        return Coefficient._raw(tuple((k, _cneg(v)) for k, v in self.num), self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            c = (Fraction(other), _F0)
            return Coefficient(_pscale(dict(self.num), c), dict(self.den))
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return ZERO
        num = _pmul(dict(self.num), dict(other.num))
        den = _pmul(dict(self.den), dict(other.den))
        return Coefficient(num, den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            raise ZeroDivisionError("division by a zero coefficient")
        return self * Coefficient(dict(other.den), dict(other.num))

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ONE / (self ** (-n))
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison / hashing -------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"Coefficient({self})"

    def __str__(self):
        from .text import format_coefficient

        return format_coefficient(self)


def _peval(poly, w):
    return sum(complex(float(v[0]), float(v[1])) * w**k for k, v in poly)


def _coerce(value):
    if isinstance(value, Coefficient):
        return value
    try:
        return Coefficient(value)
    except TypeError:
        return NotImplemented


def _canonical(num, den):
    """Reduce ``num/den`` and return frozen ``(num, den)`` with ``den`` monic."""
    if not num:
        return (), ((0, _CONE),)
    if den is None:
        # polynomial numerator; fast path for the very common constant case
        return _freeze(num), ((0, _CONE),)
    if not den:
        raise ZeroDivisionError("zero denominator")
    if len(den) == 1:
        (k, lead), = den.items()
        low = min(num)
        s = min(k, low)
        if lead != _CONE:
            num = _pscale(num, _cinv(lead))
        return _freeze(_pshift(num, -s)), ((k - s, _CONE),)
    # strip common powers of w before the Euclidean step
    s = min(min(num), min(den))
    if s:
        num, den = _pshift(num, -s), _pshift(den, -s)
    g = _pgcd(dict(num), dict(den))
    if len(g) > 1 or max(g) > 0:
        num, _ = _pdivmod(num, g)
        den, _ = _pdivmod(den, g)
    lead = den[max(den)]
    if lead != _CONE:
        inv = _cinv(lead)
        num, den = _pscale(num, inv), _pscale(den, inv)
    return _freeze(num), _freeze(den)


ZERO = Coefficient(0)
ONE = Coefficient(1)
I = Coefficient((_F0, _F1))
W = Coefficient.symbol()
