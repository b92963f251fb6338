"""Normal-ordered algebra of the four boson modes ``a1, a2, b1, b2``.

Every :class:`OperatorExpr` is a finite sum of normal-ordered monomials with
exact :class:`~cgf.scalars.Coefficient` weights.  A monomial is an 8-tuple of
exponents in the fixed order ``a1^, a2^, b1^, b2^, a1, a2, b1, b2`` (``^``
marks a creation operator), so two expressions are equal exactly when their
term maps are equal.

Products are reordered with the single-mode identity

    c^q c^r† = sum_k  C(q, k) C(r, k) k!  c†^(r-k) c^(q-k),

which is the closed form of repeatedly applying ``[c, c†] = 1``; distinct modes
commute.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping

from .scalars import ONE, ZERO, Coefficient

__all__ = [
    "MODES",
    "ModeOp",
    "NormalMonomial",
    "OperatorExpr",
    "KetState",
    "mode",
    "scalar",
    "multiply",
    "normal_order",
    "canonicalize",
    "commutator",
    "adjoint",
    "vacuum_expectation",
    "apply_to_vacuum",
    "ket_overlap",
]

MODES = ("a1", "a2", "b1", "b2")
NMODES = 4

NormalMonomial = tuple  # 8 non-negative ints: creation exponents, then annihilation exponents
IDENTITY: NormalMonomial = (0,) * 8


@dataclass(frozen=True, order=True)
class ModeOp:
    """One of the eight single-mode ladder operators."""

    family: str
    index: int
    dagger: bool = False

    def __post_init__(self):
        if self.family not in ("a", "b") or self.index not in (1, 2):
            raise ValueError(f"no such mode: {self.family}{self.index}")

    @property
    def slot(self) -> int:
        """Position of this operator in the canonical exponent vector."""
        m = (0 if self.family == "a" else 2) + self.index - 1
        return m if self.dagger else m + NMODES

    @property
    def name(self) -> str:
        return f"{self.family}{self.index}" + ("^" if self.dagger else "")

    def expr(self) -> OperatorExpr:
        powers = [0] * 8
        powers[self.slot] = 1
        return OperatorExpr({tuple(powers): ONE})

    @classmethod
    def all(cls) -> list[ModeOp]:
        return [cls(f, i, d) for d in (True, False) for f in "ab" for i in (1, 2)]


def _mono_key(mono):
    """Graded lexicographic order used for deterministic printing."""
    return (sum(mono), tuple(-e for e in mono))


class OperatorExpr:
    """Immutable finite sum of normal-ordered monomials.

    Zero coefficients are pruned on construction.  Arithmetic operators are
    overloaded: ``*`` is the operator product (normal ordered), ``+``/``-`` add
    and scalars (ints, :class:`Coefficient`) multiply through.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[NormalMonomial, Coefficient] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            if len(mono) != 8 or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial exponents {mono!r}")
            c = c if isinstance(c, Coefficient) else Coefficient(c)
            if not c.is_zero():
                clean[tuple(mono)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _trusted(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # -- views ----------------------------------------------------------------

    @property
    def terms(self) -> Mapping[NormalMonomial, Coefficient]:
        return dict(self._terms)

    def items(self):
        """Terms in canonical (graded lexicographic) order."""
        return sorted(self._terms.items(), key=lambda kv: _mono_key(kv[0]))

    def coefficient(self, mono: NormalMonomial) -> Coefficient:
        return self._terms.get(tuple(mono), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=0)

    def is_creation_only(self) -> bool:
        return all(not any(m[NMODES:]) for m in self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.items())

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = _as_expr(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for mono, c in other._terms.items():
            s = out.get(mono, ZERO) + c
            if s.is_zero():
                out.pop(mono, None)
            else:
                out[mono] = s
        return OperatorExpr._trusted(out)

    __radd__ = __add__

    def __neg__(self):
        return OperatorExpr._trusted({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = _as_expr(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, OperatorExpr):
            return multiply(self, other)
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        return self.scale(other)

    def __rmul__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        return self.scale(other)

    def __truediv__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        return self.scale(ONE / other)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = scalar(1)
        for _ in range(n):
            out = multiply(out, self)
        return out

    def scale(self, c) -> OperatorExpr:
        c = c if isinstance(c, Coefficient) else Coefficient(c)
        if c.is_zero():
            return OperatorExpr()
        return OperatorExpr._trusted({m: v * c for m, v in self._terms.items()})

    def dagger(self) -> OperatorExpr:
        return adjoint(self)

    # -- equality -------------------------------------------------------------

    def __eq__(self, other):
        other = _as_expr(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"OperatorExpr({self})"

    def __str__(self):
        from .text import format_expr

        return format_expr(self)


def _as_scalar(value):
    if isinstance(value, Coefficient):
        return value
    try:
        return Coefficient(value)
    except TypeError:
        return NotImplemented


def _as_expr(value):
    if isinstance(value, OperatorExpr):
        return value
    c = _as_scalar(value)
    if c is NotImplemented:
        return c
    return scalar(c)


def scalar(value) -> OperatorExpr:
    """The identity operator times ``value``."""
    return OperatorExpr({IDENTITY: value})


def mode(name: str) -> OperatorExpr:
    """Single ladder operator from its text name, e.g. ``mode("a1^")``."""
    base = name.rstrip("^+†")
    if len(base) != 2:
        raise ValueError(f"no such mode: {name!r}")
    return ModeOp(base[0], int(base[1]), dagger=len(name) > 2).expr()


# -- products -----------------------------------------------------------------

_reorder_cache: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}


def _reorder(q: int, r: int):
    """``c^q c†^r`` as ``[(k, weight)]``: weight * c†^(r-k) c^(q-k)."""
    key = (q, r)
    hit = _reorder_cache.get(key)
    if hit is None:
        hit = tuple((k, comb(q, k) * comb(r, k) * factorial(k)) for k in range(min(q, r) + 1))
        _reorder_cache[key] = hit
    return hit


def _mono_product(x: NormalMonomial, y: NormalMonomial) -> dict[NormalMonomial, int]:
    """Normal-ordered product of two monomials with integer weights."""
    options = []
    for m in range(NMODES):
        p, q = x[m], x[m + NMODES]
        r, s = y[m], y[m + NMODES]
        options.append([(p + r - k, q + s - k, w) for k, w in _reorder(q, r)])
    out = {}
    for combo in itertools.product(*options):
        weight = 1
        for _, _, w in combo:
            weight *= w
        mono = tuple(c[0] for c in combo) + tuple(c[1] for c in combo)
        out[mono] = out.get(mono, 0) + weight
    return out


def multiply(lhs: OperatorExpr, rhs: OperatorExpr) -> OperatorExpr:
    """Operator product ``lhs * rhs`` in normal form."""
    acc: dict[NormalMonomial, dict] = {}
    for mx, cx in lhs._terms.items():
        for my, cy in rhs._terms.items():
            c = cx * cy
            for mono, w in _mono_product(mx, my).items():
                acc.setdefault(mono, {})
                acc[mono][c] = acc[mono].get(c, 0) + w
    out = {}
    for mono, weighted in acc.items():
        total = ZERO
        for c, w in weighted.items():
            if w:
                total = total + c * w
        if not total.is_zero():
            out[mono] = total
    return OperatorExpr._trusted(out)


def normal_order(word, coefficient=ONE) -> OperatorExpr:
    """Normal form of ``coefficient * w1 w2 ... wn`` for a word of single-mode operators.

    Letters are :class:`ModeOp` values or their names (``"a1^"``, ``"b2"``).
    """
    out = scalar(coefficient)
    for letter in word:
        op = letter.expr() if isinstance(letter, ModeOp) else mode(letter)
        out = multiply(out, op)
    return out


def _monomial_word(mono: NormalMonomial) -> list[ModeOp]:
    word = []
    for op in ModeOp.all():
        word.extend([op] * mono[op.slot])
    return word


def canonicalize(expr: OperatorExpr) -> OperatorExpr:
    """Rebuild ``expr`` by normal ordering each monomial spelled out as a word.

    A fixpoint for every expression, since stored monomials are already normal.
    """
    out = OperatorExpr()
    for mono, c in expr._terms.items():
        out = out + normal_order(_monomial_word(mono), c)
    return out


def commutator(lhs: OperatorExpr, rhs: OperatorExpr) -> OperatorExpr:
    return multiply(lhs, rhs) - multiply(rhs, lhs)


def adjoint(expr: OperatorExpr) -> OperatorExpr:
    """Hermitian adjoint.

    The adjoint of a normal monomial ``c†^p c^q`` is ``c†^q c^p``, which is
    already normal ordered, so only the exponent halves swap.
    """
    out = {}
    for mono, c in expr._terms.items():
        out[mono[NMODES:] + mono[:NMODES]] = c.conjugate()
    return OperatorExpr._trusted(out)


def vacuum_expectation(expr: OperatorExpr) -> Coefficient:
    """``<0|expr|0>``: the coefficient of the identity monomial."""
    return expr._terms.get(IDENTITY, ZERO)


# -- kets ---------------------------------------------------------------------

@dataclass(frozen=True)
class KetState:
    """``expr|0>`` for a creation-only ``expr``.

    ``norm_factor_sq`` is the square of a scalar prefactor that is kept
    separate so square roots never enter the exact field: the physical state
    is ``sqrt(norm_factor_sq) * expr|0>``.
    """

    expr: OperatorExpr
    norm_factor_sq: Fraction = Fraction(1)

    def __post_init__(self):
        if not self.expr.is_creation_only():
            raise ValueError("a ket must contain creation operators only")
        object.__setattr__(self, "norm_factor_sq", Fraction(self.norm_factor_sq))

    def is_zero(self) -> bool:
        return self.expr.is_zero()

    def core_norm_sq(self) -> Coefficient:
        return ket_overlap(self, self)

    def norm_sq(self) -> Coefficient:
        """Squared norm including the stored prefactor."""
        return self.core_norm_sq() * self.norm_factor_sq

    def components(self) -> dict[tuple[int, ...], Coefficient]:
        """Occupation vector ``(na1, na2, nb1, nb2)`` -> coefficient of ``c†^n|0>``."""
        return {mono[:NMODES]: c for mono, c in self.expr._terms.items()}

    def quanta(self) -> set[int]:
        return {sum(m) for m in self.expr._terms}


def apply_to_vacuum(expr: OperatorExpr) -> KetState:
    """Drop every term with an annihilator; what remains is ``expr|0>``."""
    kept = {m: c for m, c in expr._terms.items() if not any(m[NMODES:])}
    return KetState(OperatorExpr._trusted(kept))


def _occupation_norm(occ: Iterable[int]) -> int:
    out = 1
    for n in occ:
        out *= factorial(n)
    return out


def ket_overlap(bra: KetState, ket: KetState) -> Coefficient:
    """``<bra|ket>`` of the stored cores (prefactors not applied)."""
    kc = ket.components()
    total = ZERO
    for occ, c in bra.components().items():
        d = kc.get(occ)
        if d is not None:
            total = total + c.conjugate() * d * _occupation_norm(occ)
    return total
