import time
from fractions import Fraction
from math import factorial

import pytest

from cgf.hydrogenic import (
    GENERATOR_NAMES,
    PHYSICAL_NAMES,
    check_closure,
    generator,
    p_state,
    physical_operator,
    s_state,
    solve_in_span,
)
from cgf.scalars import ONE, W
from cgf.text import parse_expr
from cgf.wick import apply_to_vacuum, commutator, multiply, vacuum_expectation


def test_fifteen_distinct_generators():
    assert len(GENERATOR_NAMES) == 15
    exprs = [generator(g) for g in GENERATOR_NAMES]
    assert len(set(exprs)) == 15


def test_generator_definitions():
    assert generator("Nplus2") == parse_expr("a1^*a1 + a2^*a2 + b1^*b1 + b2^*b2 + 2")
    assert generator("M") == parse_expr("a1*b1 + a2*b2")
    assert generator("n_a_3") == parse_expr("a1^*a1 - a2^*a2")
    assert generator("n_b_1") == parse_expr("b2^*b1 + b1^*b2")
    assert generator("mdag_2") == parse_expr("-i*a1^*b2^ + i*a2^*b1^")


def test_unknown_names():
    with pytest.raises(KeyError):
        generator("Q")
    with pytest.raises(KeyError):
        physical_operator("x_4")


def test_closure_is_exact_and_fast():
    t0 = time.perf_counter()
    rep = check_closure()
    assert time.perf_counter() - t0 < 10
    assert len(rep.entries) == 105
    assert rep.passed
    assert len(rep.lines()) == 105


def test_closure_entry_m_mdag():
    rep = check_closure()
    entry = next(e for e in rep.entries if e.pair == ("M", "Mdag"))
    assert entry.coefficients == {"Nplus2": ONE}


def test_solve_in_span_reports_residual():
    basis = [generator("M"), generator("Mdag")]
    coeffs, residual = solve_in_span(generator("Nplus2"), basis)
    assert coeffs == [0, 0]
    assert residual == generator("Nplus2")


def test_physical_operators_in_span_of_generators():
    basis = [generator(g) for g in GENERATOR_NAMES]
    for name in PHYSICAL_NAMES:
        if name == "L2":
            continue  # quadratic in the generators
        _, residual = solve_in_span(physical_operator(name), basis)
        assert residual.is_zero(), name


def test_vev_of_r_is_one_over_w():
    assert vacuum_expectation(physical_operator("r")) == ONE / W


def test_r_commutes_with_coordinates():
    for lam in (1, 2, 3):
        assert commutator(physical_operator("r"), physical_operator(f"x_{lam}")).is_zero()


def test_ground_state_virial():
    # <r p^2> = w for the ground state
    assert vacuum_expectation(physical_operator("rP2")) == W


@pytest.mark.parametrize("n", range(6))
def test_s_state_norms(n):
    st = s_state(n)
    assert st.core_norm_sq() == factorial(n) * factorial(n + 1)
    assert st.norm_sq() == 1


def test_p_state_norms_frozen():
    # the s-state prefactor does not normalise the p-states
    got = [p_state(n).norm_sq() for n in range(1, 6)]
    assert got == [Fraction(1, 2), Fraction(1, 3), Fraction(5, 18), Fraction(1, 4), Fraction(7, 30)]


@pytest.mark.parametrize("n", range(4))
def test_s_states_have_zero_angular_momentum(n):
    ket = apply_to_vacuum(multiply(physical_operator("L2"), s_state(n).expr))
    assert ket.is_zero()


@pytest.mark.parametrize("n", range(1, 4))
def test_p_state_quantum_numbers(n):
    core = p_state(n).expr
    assert apply_to_vacuum(multiply(physical_operator("L2"), core)).expr == core.scale(2)
    # the l_3 of the dictionary counts twice the magnetic quantum number
    assert apply_to_vacuum(multiply(physical_operator("l_3"), core)).expr == core.scale(2)


def test_state_index_validation():
    with pytest.raises(ValueError):
        s_state(-1)
    with pytest.raises(ValueError):
        p_state(0)
