import random

import numpy as np
import pytest
from hypothesis import given, settings

from cgf.fock import FockSpace, total_quanta_basis
from cgf.hydrogenic import generator
from cgf.scalars import I, ONE, ZERO, Coefficient
from cgf.text import parse_expr
from cgf.wick import (
    IDENTITY,
    KetState,
    ModeOp,
    OperatorExpr,
    adjoint,
    apply_to_vacuum,
    canonicalize,
    commutator,
    mode,
    multiply,
    normal_order,
    scalar,
    vacuum_expectation,
)
from exprgen import exprs

a1, a1d, a2, b1, b1d, b2, b2d = (mode(n) for n in ("a1", "a1^", "a2", "b1", "b1^", "b2", "b2^"))


def test_eight_mode_operators():
    ops = ModeOp.all()
    assert len(set(ops)) == 8
    assert sorted(op.slot for op in ops) == list(range(8))


def test_multiply_examples():
    assert multiply(a1, a1d) == a1d * a1 + 1
    assert multiply(a1, b2d) == parse_expr("b2^*a1")
    assert multiply(b2d, a1) == multiply(a1, b2d)


def test_multiply_m_mdag():
    m, md = generator("M"), generator("Mdag")
    assert multiply(m, md) == generator("Nplus2") + multiply(md, m)


def test_commutator_examples():
    assert commutator(a1, a1d) == scalar(1)
    assert commutator(a1, b1).is_zero()
    assert commutator(generator("M"), generator("Mdag")) == generator("Nplus2")


def test_adjoint_examples():
    assert adjoint(a1) == a1d
    assert adjoint(generator("M")) == generator("Mdag")
    assert adjoint(a1d * b2 * I) == (b2d * a1) * (-I)


def test_vacuum_expectation_examples():
    assert vacuum_expectation(scalar(1)) == ONE
    assert vacuum_expectation(a1d * a1) == ZERO
    assert vacuum_expectation(multiply(generator("M"), generator("Mdag"))) == 2


def test_apply_to_vacuum_examples():
    assert apply_to_vacuum(a1).is_zero()
    assert apply_to_vacuum(a1d * a1 + 3 * b1d).expr == 3 * b1d
    assert apply_to_vacuum(generator("Mdag")).expr == a1d * b1d + mode("a2^") * b2d


def test_ket_rejects_annihilators():
    with pytest.raises(ValueError):
        KetState(a1)


def test_zero_pruning_and_unique_representation():
    assert (a1 - a1).is_zero()
    assert OperatorExpr({IDENTITY: ZERO}).is_zero()
    assert a1d * a1 + 1 == 1 + a1d * a1


def test_normal_order_word():
    assert normal_order(["a1", "a1^"]) == a1d * a1 + 1
    assert normal_order([ModeOp("b", 2), ModeOp("b", 2, True)], 3) == 3 * (b2d * b2 + 1)


def test_power_of_single_mode():
    # a a^2 -> a^2 a + 2 a^
    assert multiply(a1, a1d**2) == a1d**2 * a1 + 2 * a1d


def _fock_block(space, mat, max_quanta):
    keep = [i for i, occ in enumerate(space.basis) if sum(occ) <= max_quanta]
    return mat.toarray()[np.ix_(keep, keep)]


def test_m_mdag_matches_fock_matrices():
    space = FockSpace(total_quanta_basis(6))
    m, md = generator("M"), generator("Mdag")
    lhs = space.matrix(multiply(m, md))
    rhs = space.matrix(m) @ space.matrix(md)
    # truncation only bites on the top two shells
    np.testing.assert_allclose(_fock_block(space, lhs, 4), _fock_block(space, rhs, 4), atol=1e-12)


def test_m_mdag_commutator_is_integer_diagonal_in_fock_space():
    space = FockSpace(total_quanta_basis(6))
    m, md = space.matrix(generator("M")), space.matrix(generator("Mdag"))
    comm = _fock_block(space, m @ md - md @ m, 4)
    want = np.diag([sum(occ) + 2 for occ in space.basis if sum(occ) <= 4])
    assert np.max(np.abs(comm - want)) < 1e-12
    np.testing.assert_array_equal(np.round(comm.real), want)


# -- properties (>= 500 random expressions each) ------------------------------

@settings(max_examples=500)
@given(exprs())
def test_idempotence(x):
    assert canonicalize(x) == x
    assert canonicalize(canonicalize(x)) == canonicalize(x)


@settings(max_examples=500)
@given(exprs(max_exp=2), exprs(max_exp=2), exprs(max_exp=2))
def test_associativity(x, y, z):
    assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))


@settings(max_examples=500)
@given(exprs(), exprs())
def test_adjoint_antihomomorphism(x, y):
    assert adjoint(multiply(x, y)) == multiply(adjoint(y), adjoint(x))
    assert adjoint(adjoint(x)) == x


@settings(max_examples=500)
@given(exprs(symbolic=False))
def test_vev_positivity(x):
    v = vacuum_expectation(multiply(adjoint(x), x))
    re, im = v.constant_value()
    assert im == 0 and re >= 0


@settings(max_examples=500)
@given(exprs(), exprs())
def test_bilinearity(x, y):
    z = normal_order(["a1", "b1^", "a2^"])
    assert multiply(x + y, z) == multiply(x, z) + multiply(y, z)
    assert multiply(z, x + y) == multiply(z, x) + multiply(z, y)


@settings(max_examples=60)
@given(exprs(max_terms=2, symbolic=False, max_exp=2), exprs(max_terms=2, symbolic=False, max_exp=2))
def test_fock_oracle_equivalence(x, y):
    q = 8
    space = FockSpace(total_quanta_basis(q))
    product = space.matrix(multiply(x, y))
    factored = space.matrix(x) @ space.matrix(y)
    # states low enough that neither factor can leave the truncated space
    margin = q - x.degree() - y.degree()
    if margin < 0:
        return
    np.testing.assert_allclose(_fock_block(space, product, margin), _fock_block(space, factored, margin), atol=1e-9)


def test_seeded_generator_smoke():
    from exprgen import random_expr

    rnd = random.Random(1)
    x = random_expr(rnd)
    assert canonicalize(x) == x
