import math

import numpy as np
import pytest

import cgf.vdw as vdw
from cgf.errors import NonRealResult, PoleHit, QuadratureStall, SeriesDivergence
from cgf.mcgf import tensor
from cgf.su11 import disentangle_array, exponent_factor, sandwich_polynomial
from cgf.vdw import (
    REFERENCE_C6,
    VdwConfig,
    angular_multiplicity,
    dipole_coupling,
    first_order_check,
    inner_integral_j,
    j_oracle,
    j_series,
    rx_operator,
    second_order_energy,
)
from cgf.wick import apply_to_vacuum

CFG = VdwConfig()


def test_first_order_vanishes_exactly():
    rep = first_order_check()
    assert rep.vanishes
    assert all(c == 0 for c in rep.components.values())


def test_dipole_coupling_structure():
    v = dipole_coupling()
    zz = tensor(rx_operator(3), rx_operator(3)).scale(2)
    xx = tensor(rx_operator(1), rx_operator(1)).scale(-1)
    yy = tensor(rx_operator(2), rx_operator(2)).scale(-1)
    assert v == zz + xx + yy


def test_single_particle_kets_have_at_most_four_quanta():
    for lam in (1, 2, 3):
        assert max(apply_to_vacuum(rx_operator(lam)).quanta()) == 4


def test_angular_multiplicity():
    assert angular_multiplicity() == 6


def test_j_at_v_equal_omega_is_a_sum_of_simple_poles():
    poly = sandwich_polynomial(rx_operator(3), rx_operator(3)).numeric(1.0)
    pure = {k[2]: c for k, c in poly.items() if k[0] == k[1] == 0}
    want = -1j * sum(c / (k / 2 - 1.0) for k, c in pure.items())
    assert len(pure) == 2
    assert inner_integral_j(0.0, CFG) == pytest.approx(want, rel=1e-13)
    assert want == pytest.approx(-2.25j)


@pytest.mark.parametrize("alpha", [0.05j, 0.4j, 1j, 3j, 30j, 1e3j, 0.2 + 0.3j, -2 + 0.5j])
def test_schwarz_reflection(alpha):
    # J = -i F with F real on the real axis below threshold, so F obeys the reflection
    f = 1j * inner_integral_j(alpha, CFG)
    f_bar = 1j * inner_integral_j(alpha.conjugate(), CFG)
    assert f_bar == pytest.approx(f.conjugate(), rel=1e-13)


def test_j_is_imaginary_on_the_real_axis_below_threshold():
    for alpha in (-2.0, -0.3, 0.1):
        j = inner_integral_j(alpha, CFG)
        assert abs(j.real) < 1e-14 * abs(j)


@pytest.mark.parametrize("alpha", [0.02j, 0.3j, -0.7j, 2j, 15j, 400j, 1e4j, -0.3, 0.1 + 0.2j, -1 - 1j])
def test_series_matches_fock_oracle(alpha):
    s, o = j_series(alpha, CFG), j_oracle(alpha, CFG)
    assert abs(s.value - o) <= 1e-6 * abs(o)
    assert s.tail_bound <= CFG.series_tol * abs(s.value)


def _damped_j(alpha, eps, e2=1.0, w=1.0):
    """Numeric int_0^T exp((i e2 - eps) t) S(t) dt with T = 40/eps."""
    v = math.sqrt(w * w - 2 * alpha)
    fac = exponent_factor(w, v)
    poly = sandwich_polynomial(rx_operator(3), rx_operator(3))
    x, wts = np.polynomial.legendre.leggauss(32)
    x, wts = (x + 1) / 2, wts / 2
    total = 0j
    t_end = 40 / eps
    chunk = 2000.0
    start = 0.0
    while start < t_end:
        edges = np.arange(start, min(start + chunk, t_end), 1.0)
        t = (edges[:, None] + x[None, :]).ravel()
        cp, e0, cm = disentangle_array(fac, t)
        s = poly.evaluate(cp, e0, cm, w)
        total += np.sum(np.tile(wts, edges.size) * np.exp((1j * e2 - eps) * t) * s)
        start += chunk
    return total


def test_epsilon_independence():
    alpha = -0.3
    j1, j2 = _damped_j(alpha, 1e-2), _damped_j(alpha, 1e-3)
    extrapolated = (10 * j2 - j1) / 9
    series = inner_integral_j(alpha, CFG)
    assert abs(j2 - series) > abs(extrapolated - series)
    assert abs(extrapolated - series) <= 1e-5 * abs(series)


def test_series_errors():
    with pytest.raises(SeriesDivergence):
        j_series(1.0, CFG)  # continuum: |rho| = 1
    with pytest.raises(SeriesDivergence):
        j_series(1e5j, VdwConfig(max_series_terms=64))
    with pytest.raises(PoleHit):
        j_series(0.375, CFG)  # v = 1/2 puts the p = 2 term on e2


def test_config_validation():
    with pytest.raises(ValueError):
        VdwConfig(omega=2.0)
    with pytest.raises(ValueError):
        VdwConfig(quad_tol=0)
    with pytest.raises(ValueError):
        VdwConfig(series_tol=1.5)
    with pytest.raises(ValueError):
        VdwConfig(contour_scale=-1)
    assert VdwConfig().scale == 1.0


def test_c6_default():
    res = second_order_energy(CFG)
    assert abs(res.c6 - REFERENCE_C6) / REFERENCE_C6 < 1e-6
    assert res.c6 > 0 and res.imag_part == 0
    assert res.estimated_error < 1e-8
    assert res.series_terms_used > 0 and res.quad_nodes_used > 0


def test_contour_stability():
    base = second_order_energy(CFG)
    half = second_order_energy(VdwConfig(contour_scale=0.5))
    fine = second_order_energy(VdwConfig(quad_panels=16))
    assert abs(half.c6 - base.c6) < base.estimated_error
    assert abs(fine.c6 - base.c6) < base.estimated_error
    assert fine.quad_nodes_used == 2 * base.quad_nodes_used


def test_c6_is_deterministic():
    assert second_order_energy(CFG).to_dict() == second_order_energy(CFG).to_dict()


def test_literal_square_integrates_to_zero():
    # J(a)^2 is analytic and O(1/a^2) in the left half plane, so the contour closes on nothing
    res = second_order_energy(VdwConfig(literal_square=True))
    assert abs(res.c6) < 1e-9


def test_non_real_result_detected(monkeypatch):
    real = vdw.j_series

    def skewed(alpha, cfg, floor=1e-14):
        sv = real(alpha, cfg)
        return vdw.SeriesValue(sv.value * (1 + 0.1j), sv.terms, sv.tail_bound)

    monkeypatch.setattr(vdw, "j_series", skewed)
    with pytest.raises(NonRealResult):
        second_order_energy(CFG)


def test_quadrature_budget():
    with pytest.raises(QuadratureStall):
        second_order_energy(VdwConfig(max_quad_nodes=100))


def test_oracle_pipeline_small_truncation():
    from cgf.su11 import FockTruncation

    res = second_order_energy(VdwConfig(truncation=FockTruncation(60)), oracle=True)
    assert res.oracle_delta < 1e-4
