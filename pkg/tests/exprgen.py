"""Random small operator expressions for property tests."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from cgf.scalars import Coefficient, W
from cgf.wick import OperatorExpr


def _coef(re, im, wpow):
    c = Coefficient.gaussian(re, im)
    if wpow > 0:
        c = c * W**wpow
    elif wpow < 0:
        c = c / W ** (-wpow)
    return c


def random_expr(rnd: random.Random, max_terms=3, max_exp=3, symbolic=True) -> OperatorExpr:
    terms = {}
    for _ in range(rnd.randint(1, max_terms)):
        mono = tuple(rnd.choice((0, 0, 0, 1, 1, 2, max_exp)) for _ in range(8))
        re = Fraction(rnd.randint(-5, 5), rnd.randint(1, 4))
        im = Fraction(rnd.randint(-3, 3), rnd.randint(1, 3)) if rnd.random() < 0.4 else 0
        wpow = rnd.choice((0, 0, 0, 1, -1)) if symbolic else 0
        terms[mono] = _coef(re, im, wpow)
    return OperatorExpr(terms)


fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def coefficients(draw, symbolic=True):
    re = draw(fractions)
    im = draw(st.one_of(st.just(Fraction(0)), fractions))
    wpow = draw(st.integers(-1, 1)) if symbolic else 0
    return _coef(re, im, wpow)


monomials = st.tuples(*[st.integers(0, 3)] * 8)


@st.composite
def exprs(draw, max_terms=3, symbolic=True, max_exp=3):
    mono = st.tuples(*[st.integers(0, max_exp)] * 8)
    pairs = draw(st.lists(st.tuples(mono, coefficients(symbolic)), min_size=0, max_size=max_terms))
    return OperatorExpr(dict(pairs))
