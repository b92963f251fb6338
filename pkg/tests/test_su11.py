import cmath

import numpy as np
import pytest

from cgf.errors import Degenerate, PoleOnPath
from cgf.hydrogenic import physical_operator
from cgf.su11 import (
    Branch,
    DisentangledExp,
    ExponentFactor,
    FockTruncation,
    closed_form_rx_g_rx,
    disentangle,
    disentangle_array,
    exponent_factor,
    fock_propagator,
    fock_resolvent,
    sandwich,
    sandwich_polynomial,
)
from cgf.vdw import rx_operator
from cgf.wick import scalar

ONE_OP = scalar(1)


def test_exponent_factor_examples():
    f = exponent_factor(1.0, 1.0)
    assert (f.p, f.q) == (0.5, 0.0)
    f = exponent_factor(1.0, 2.0)
    assert (f.p, f.q) == (1.25, 0.75)
    assert f.frequency == pytest.approx(2.0)


def test_exponent_factor_complex_v():
    v = cmath.sqrt(1 - 2 * 0.7j)
    f = exponent_factor(1.0, v)
    assert isinstance(f.p, complex) and f.frequency == pytest.approx(v)


@pytest.mark.parametrize("omega, v", [(0.0, 1.0), (-1.0, 1.0), (1.0, -0.5), (1.0, 0.0)])
def test_exponent_factor_rejects(omega, v):
    with pytest.raises(ValueError):
        exponent_factor(omega, v)


def test_disentangle_diagonal_and_identity():
    d = disentangle(ExponentFactor(0.8, 0.0), 1.3)
    assert d.c_plus == 0 and d.c_minus == 0
    assert d.c_zero == pytest.approx(-1j * 0.8 * 1.3)
    assert disentangle(exponent_factor(1.0, 2.0), 0.0) == DisentangledExp(0j, 0j, 0j, 1.0)


def test_group_law_and_determinant():
    rng = np.random.default_rng(3)
    for _ in range(20):
        f = ExponentFactor(rng.uniform(0.3, 2), rng.uniform(-1.5, 1.5))
        t1, t2 = rng.uniform(-3, 3, 2)
        a, b = disentangle(f, t1), disentangle(f, t2)
        np.testing.assert_allclose(a.compose(b).group_element(), disentangle(f, t1 + t2).group_element(), atol=1e-10)
        assert abs(np.linalg.det(a.group_element()) - 1) < 1e-12


def test_vectorised_disentangle_matches_scalar():
    f = exponent_factor(1.0, 1.7)
    ts = np.linspace(0.1, 4, 7)
    cp, e0, cm = disentangle_array(f, ts)
    for t, x, y, z in zip(ts, cp, e0, cm):
        d = disentangle(f, t)
        assert x == pytest.approx(d.c_plus) and z == pytest.approx(d.c_minus)
        assert y == pytest.approx(np.exp(d.c_zero))


def test_degenerate_time_and_perturbation():
    p, q = 1.0, 0.6
    lam = np.sqrt(p * p - q * q)
    t_bad = 1j * np.arctanh(lam / p) / lam
    f = ExponentFactor(p, q)
    with pytest.raises(Degenerate):
        disentangle(f, t_bad)
    d = disentangle(f, t_bad, perturb=True)
    assert np.isfinite(d.c_zero)


def test_sandwich_vacuum():
    assert sandwich(ONE_OP, ONE_OP, DisentangledExp(0, 0, 0)) == 1


def test_sandwich_r_r_at_v_equal_omega_matches_fock():
    r = physical_operator("r")
    for w, t in [(1.0, 0.7), (1.4, 2.2)]:
        f = exponent_factor(w, w)
        assert f.q == 0
        got = sandwich(r, r, disentangle(f, t), w)
        assert abs(got - fock_propagator(r, r, f, t, FockTruncation(60))) < 1e-10


def test_reduction_at_v_equal_omega_has_no_denominator():
    # q = 0: only the pure e^{c0 K} terms survive
    poly = sandwich_polynomial(rx_operator(3), rx_operator(3))
    pure = {k: v for k, v in poly.terms.items() if k[0] == k[1] == 0}
    f = exponent_factor(1.0, 1.0)
    t = 0.9
    d = disentangle(f, t)
    want = sum(c.evaluate(1.0) * np.exp(d.c_zero) ** k[2] for k, c in pure.items())
    assert sandwich(rx_operator(3), rx_operator(3), d, 1.0) == pytest.approx(want, abs=1e-14)


def test_sandwich_against_fock_on_random_points():
    rng = np.random.default_rng(11)
    rz = rx_operator(3)
    for _ in range(4):
        w, v, t = rng.uniform(0.7, 1.3), rng.uniform(0.7, 1.5), rng.uniform(0.1, 3)
        f = exponent_factor(w, v)
        got = sandwich(rz, rz, disentangle(f, t), w)
        assert abs(got - fock_propagator(rz, rz, f, t, FockTruncation(60))) < 1e-10


def test_closed_form_values():
    assert closed_form_rx_g_rx(1.0, 1.0, 0.0) == pytest.approx(2.5)
    t = 0.8
    want = 2**11 / 4**6 * (4 * np.exp(-2j * t) + np.exp(-3j * t))
    assert closed_form_rx_g_rx(1.0, 1.0, t) == pytest.approx(want)


def test_closed_form_matches_sandwich():
    rz = rx_operator(3)
    for w, v, t in [(1.0, 1.3, 0.4), (0.8, 1.4, 2.9), (1.25, 0.7, 1.3)]:
        d = disentangle(exponent_factor(w, v), t)
        assert closed_form_rx_g_rx(w, v, t) == pytest.approx(sandwich(rz, rz, d, w), rel=1e-12)


def test_closed_form_pole():
    w, v = 1.0, 2.0
    # denominator (w+v)^2 - (w-v)^2 e^{-ivt} vanishes where e^{-ivt} = 9
    t = 1j * np.log(9) / v
    with pytest.raises(PoleOnPath):
        closed_form_rx_g_rx(w, v, t)


def test_fock_resolvent_vacuum_diagonal():
    w = 1.0
    f = exponent_factor(w, w)
    got = fock_resolvent(ONE_OP, ONE_OP, w, w, FockTruncation(10), e2=0.3)
    assert got == pytest.approx(1 / (2 * f.p - 0.3))


def test_fock_resolvent_self_convergence():
    rz = rx_operator(3)
    # v = 4 gives rho = 0.36, slow enough to watch the convergence
    vals = [fock_resolvent(rz, rz, 1.0, 4.0, FockTruncation(q)) for q in (8, 16, 32, 64)]
    diffs = [abs(b - a) for a, b in zip(vals, vals[1:])]
    assert diffs[0] > diffs[1] > diffs[2]
    assert diffs[2] < 1e-10
    assert abs(fock_resolvent(rz, rz, 1.0, 1.3, FockTruncation(20)) - fock_resolvent(rz, rz, 1.0, 1.3)) < 1e-14


def test_fock_truncation_validation():
    with pytest.raises(ValueError):
        FockTruncation(0)
    with pytest.raises(ValueError):
        fock_resolvent(rx_operator(3), rx_operator(3), 1.0, 1.3, FockTruncation(2))


def test_branch_values():
    assert {b.value for b in Branch} == {"bound", "continuum", "threshold"}
    with pytest.raises(ValueError):
        exponent_factor(1.0, 1.0, Branch.THRESHOLD)
