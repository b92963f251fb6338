"""Van der Waals interaction of two ground-state hydrogen atoms.

The dipole-dipole coupling ``beta r1 r2 (2 z1 z2 - x1 x2 - y1 y2)`` (``beta =
e^2/R^3``) has zero ground-state expectation value.  The second-order energy
is an integral over the energy shift ``alpha`` of a product of
one-particle brackets

    J(alpha) = int_0^oo dt exp(i e^2 t) <0| r x exp(-i t A(v)) r x |0>,
    v^2 = w^2 - 2 alpha,

with particle 1 at shift ``alpha`` and particle 2 at ``-alpha``.  The
integral is taken along the imaginary ``alpha`` axis, where it is free of
poles.  ``F = iJ`` is real-analytic, so ``J(-is) = -conj J(is)`` and

    C6 = (6/pi) e^2 w^2 int_0^oo |J(is)|^2 ds.

``J`` comes from a convergent series in ``rho = ((w - v)/(w + v))^2``; the
Fock resolvent gives an independent check.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import NonRealResult, PoleHit, SeriesDivergence
from .hydrogenic import physical_operator, solve_in_span
from .mcgf import ProductExpr, shift_to_v, tensor
from .quadrature import integrate, worker_count
from .scalars import Coefficient
from .su11 import Branch, FockTruncation, fock_resolvent, sandwich_polynomial
from .wick import OperatorExpr, multiply

__all__ = [
    "VdwConfig",
    "C6Result",
    "SeriesValue",
    "FirstOrderReport",
    "rx_operator",
    "dipole_coupling",
    "first_order_check",
    "angular_multiplicity",
    "inner_integral_j",
    "j_series",
    "j_oracle",
    "second_order_energy",
    "REFERENCE_C6",
]

REFERENCE_C6 = 6.499026

# coefficients of (r x_l) (x) (r x_l) in the coupling, l = 1, 2, 3
_DIPOLE_WEIGHTS = {1: -1, 2: -1, 3: 2}


@dataclass(frozen=True)
class VdwConfig:
    """Numeric controls.  ``omega`` defaults to ``e2`` (the ground state needs ``w = e^2``)."""

    omega: float | None = None
    e2: float = 1.0
    series_tol: float = 1e-12
    quad_tol: float = 1e-8
    contour_scale: float | None = None
    truncation: FockTruncation = field(default_factory=FockTruncation)
    literal_square: bool = False
    max_series_terms: int = 2_000_000
    max_quad_nodes: int = 100_000
    quad_panels: int = 8

    def __post_init__(self):
        if not self.e2 > 0:
            raise ValueError("e2 must be positive")
        if self.omega is not None and not math.isclose(self.omega, self.e2, rel_tol=1e-12):
            raise ValueError(f"the hydrogen ground state needs omega = e2, got omega={self.omega}, e2={self.e2}")
        for name in ("series_tol", "quad_tol"):
            val = getattr(self, name)
            if not 0 < val < 1:
                raise ValueError(f"{name} must lie in (0, 1), got {val}")
        if self.contour_scale is not None and not self.contour_scale > 0:
            raise ValueError("contour_scale must be positive")
        if self.quad_panels < 1:
            raise ValueError("quad_panels must be at least 1")

    @property
    def w(self) -> float:
        return self.e2 if self.omega is None else self.omega

    @property
    def scale(self) -> float:
        return self.w**2 if self.contour_scale is None else self.contour_scale


@dataclass
class C6Result:
    c6: float
    estimated_error: float
    series_terms_used: int
    quad_nodes_used: int
    imag_part: float
    oracle_c6: float | None = None
    oracle_delta: float | None = None
    oracle_nodes_used: int | None = None

    def to_dict(self) -> dict:
        return asdict(self)


# -- symbolic part ------------------------------------------------------------

def rx_operator(component: int = 3) -> OperatorExpr:
    """``r x_l`` as a single-particle operator."""
    return multiply(physical_operator("r"), physical_operator(f"x_{component}"))


def dipole_coupling() -> ProductExpr:
    """``r1 r2 (2 z1 z2 - x1 x2 - y1 y2)`` over the two-particle algebra, ``beta`` left out."""
    out = ProductExpr()
    for lam, weight in _DIPOLE_WEIGHTS.items():
        out = out + tensor(rx_operator(lam), rx_operator(lam)).scale(weight)
    return out


@dataclass(frozen=True)
class FirstOrderReport:
    components: dict
    total: Coefficient

    @property
    def vanishes(self) -> bool:
        return self.total.is_zero() and all(c.is_zero() for c in self.components.values())


def first_order_check() -> FirstOrderReport:
    """Exact product-vacuum expectation of the coupling and of each Cartesian piece."""
    parts = {}
    for lam, weight in _DIPOLE_WEIGHTS.items():
        parts[lam] = tensor(rx_operator(lam), rx_operator(lam)).scale(weight).vacuum_expectation()
    return FirstOrderReport(parts, dipole_coupling().vacuum_expectation())


def angular_multiplicity() -> Fraction:
    """Weight with which the single ``r z`` bracket enters the second-order sum.

    The coupling is decomposed exactly as ``sum K_ab (r x_a) (x) (r x_b)``.
    The single-particle propagator brackets must be isotropic,
    ``P(a, c) = delta_ac P(3, 3)`` as exact polynomials in the disentangling
    coefficients, so the contraction reduces to ``sum K_ab^2``.
    """
    basis, labels = [], []
    for a in (1, 2, 3):
        for b in (1, 2, 3):
            basis.append(tensor(rx_operator(a), rx_operator(b)))
            labels.append((a, b))
    coeffs, residual = solve_in_span(dipole_coupling(), basis)
    if not residual.is_zero():
        raise AssertionError("dipole coupling is not a combination of (r x_a)(x)(r x_b)")
    ref = sandwich_polynomial(rx_operator(3), rx_operator(3)).terms
    for a in (1, 2, 3):
        for c in (1, 2, 3):
            got = sandwich_polynomial(rx_operator(a), rx_operator(c)).terms
            if got != (ref if a == c else {}):
                raise AssertionError(f"propagator bracket ({a}, {c}) is not isotropic")
    total = Coefficient(0)
    for c in coeffs:
        total = total + c * c
    if not total.is_constant() or total.constant_value()[1]:
        raise AssertionError("multiplicity is not a rational constant")
    return total.constant_value()[0]


# -- J(alpha) -----------------------------------------------------------------

@lru_cache(maxsize=8)
def _rx_terms(omega: float):
    poly = sandwich_polynomial(rx_operator(3), rx_operator(3))
    return tuple((j, k, big_k, c.evaluate(omega)) for (j, k, big_k), c in sorted(poly.terms.items()))


@dataclass(frozen=True)
class SeriesValue:
    value: complex
    terms: int
    tail_bound: float


def _series_sum(terms, omega, v, e2, n_max, floor):
    """Truncated sum and rigorous tail bound with ``n_max`` geometric terms per piece.

    Piece ``c+^j c-^k e^{K c0}`` equals
    ``P (1 - x)^a x^(K/2) (1 - rho x)^-m`` with ``x = e^{-ivt}``, ``a = j + k``,
    ``m = a + K``; each power ``x^p`` integrates to ``-i / (p v - e2)``.
    """
    rho = ((omega - v) / (omega + v)) ** 2
    width = 2 * n_max + 1
    acc = {}
    tail = 0.0
    n = np.arange(n_max)
    for j, k, big_k, c in terms:
        a = j + k
        m = a + big_k
        pref = c * (-(v * v - omega * omega)) ** a * (4 * omega * v) ** big_k / (omega + v) ** (2 * m)
        ratios = np.empty(n_max, dtype=complex)
        ratios[0] = 1.0
        ratios[1:] = (n[:-1] + m) / (n[:-1] + 1) * rho
        geo = np.cumprod(ratios)
        binom = np.array([(-1) ** l * math.comb(a, l) for l in range(a + 1)], dtype=float)
        series = np.convolve(binom, geo) * pref           # coefficient of x^(K/2 + idx)
        # keys are doubled exponents so half-integer powers stay exact
        key = big_k % 2
        buf = acc.setdefault(key, np.zeros(width + a + big_k, dtype=complex))
        start = big_k // 2
        buf[start:start + series.size] += series
        # remaining geometric terms n >= n_max
        r = (n_max - 1 + m) / n_max * abs(rho)
        if r >= 1:
            return None, math.inf
        d = n_max * abs(v) - e2
        if d <= 0:
            return None, math.inf
        tail += abs(pref) * 2**a * abs(geo[-1]) * r / (1 - r) / d
    total = 0j
    for parity, buf in acc.items():
        p = np.arange(buf.size) + parity / 2
        den = p * v - e2
        live = buf != 0
        if np.any(np.abs(den[live]) < floor):
            raise PoleHit(f"term denominator p v - e2 vanishes at v = {v}")
        total += np.sum(buf[live] / den[live])
    return -1j * total, tail


def j_series(alpha: complex, cfg: VdwConfig = VdwConfig(), floor: float = 1e-14) -> SeriesValue:
    """``J(alpha)`` by the rho-series, doubling the length until the tail is below ``series_tol``."""
    omega = cfg.w
    v, branch = shift_to_v(alpha, omega)
    if branch is not Branch.BOUND or v.real <= 0:
        raise SeriesDivergence(f"alpha = {alpha} puts v = {v} off the bound branch (|rho| = 1)")
    rho = abs(((omega - v) / (omega + v)) ** 2)
    if rho >= 1:
        raise SeriesDivergence(f"|rho| = {rho} >= 1 at alpha = {alpha}")
    terms = _rx_terms(omega)
    n_max = 32
    while True:
        value, tail = _series_sum(terms, omega, v, cfg.e2, n_max, floor)
        if value is not None and tail <= cfg.series_tol * abs(value):
            return SeriesValue(complex(value), n_max, float(tail))
        n_max *= 2
        if n_max > cfg.max_series_terms:
            raise SeriesDivergence(
                f"series did not reach tolerance {cfg.series_tol} within {cfg.max_series_terms} terms "
                f"(|rho| = {rho})"
            )


def inner_integral_j(alpha: complex, cfg: VdwConfig = VdwConfig()) -> complex:
    return j_series(alpha, cfg).value


def j_oracle(alpha: complex, cfg: VdwConfig = VdwConfig()) -> complex:
    """``J(alpha) = -i <0| r z (A - e2)^-1 r z |0>`` from the truncated Fock resolvent."""
    v, branch = shift_to_v(alpha, cfg.w)
    rz = rx_operator(3)
    return -1j * fock_resolvent(rz, rz, cfg.w, v, cfg.truncation, cfg.e2, branch)


# -- second-order energy ------------------------------------------------------

def _integrate_c6(j_of, cfg: VdwConfig):
    scale = cfg.scale
    sign = 1 if cfg.literal_square else -1

    def integrand(theta):
        s = scale * math.tan(theta)
        jacobian = scale / math.cos(theta) ** 2
        a, b = j_of(1j * s), j_of(-1j * s)
        # particle 2 sits at -alpha; both halves of the imaginary axis
        pair = a * (b if sign < 0 else a) + b * (a if sign < 0 else b)
        return pair * jacobian

    # the absolute floor only matters when the integral itself is ~0 (literal square)
    res = integrate(integrand, 0.0, math.pi / 2, rel_tol=cfg.quad_tol, abs_tol=1e-3 * cfg.quad_tol,
                    max_nodes=cfg.max_quad_nodes, initial=cfg.quad_panels, threads=worker_count())
    # E2 = (3/pi) e2 w^2 int_{-oo}^{oo} J(is) J(-is) ds along the downward contour
    factor = 3 / math.pi * cfg.e2 * cfg.w**2
    e2nd = factor * res.value
    return e2nd, factor * res.error, res.nodes


def second_order_energy(cfg: VdwConfig = VdwConfig(), oracle: bool = False) -> C6Result:
    """C6 from the analytic series, optionally rerun with the Fock-resolvent ``J``."""
    used = []

    def j_of(alpha):
        sv = j_series(alpha, cfg)
        used.append(sv.terms)
        return sv.value

    e2nd, err, nodes = _integrate_c6(j_of, cfg)
    if not cfg.literal_square and abs(e2nd.imag) > 1e-8 * abs(e2nd):
        raise NonRealResult(f"second-order energy {e2nd} is not real")
    c6 = -e2nd.real
    err += 2 * cfg.series_tol * abs(c6)
    result = C6Result(c6, err, int(sum(used)), nodes, float(e2nd.imag))
    if oracle:
        o2nd, _, onodes = _integrate_c6(lambda al: j_oracle(al, cfg), cfg)
        result.oracle_c6 = -o2nd.real
        result.oracle_delta = abs(result.oracle_c6 - c6) / abs(c6)
        result.oracle_nodes_used = onodes
    return result
