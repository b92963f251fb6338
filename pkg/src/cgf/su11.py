"""Green-operator exponentials through the su(1,1) subalgebra.

With ``K0 = (N+2)/2``, ``K+ = M^`` and ``K- = M`` the exponent of the Coulomb
propagator is ``-i t (p (N+2) + q (M + M^))``.  For ``E = -v^2/2`` one has

    p = (w^2 + v^2) / 4w,     q = (v^2 - w^2) / 4w,

and the exponential factorises as ``exp(c+ M^) exp(c0 (N+2)) exp(c- M)``.  The
three numbers follow from the faithful 2x2 representation

    K0 -> diag(1, -1)/2,   K+ -> [[0, 1], [0, 0]],   K- -> [[0, 0], [-1, 0]],

in which the ordered product is
``[[e^c0 - c+ c- e^-c0, c+ e^-c0], [-c- e^-c0, e^-c0]]``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import Degenerate, PoleOnPath, SingularSystem
from .fock import FockSpace, ket_sectors, sector_basis
from .hydrogenic import generator
from .scalars import Coefficient
from .wick import OperatorExpr, adjoint, apply_to_vacuum, ket_overlap, multiply

__all__ = [
    "Branch",
    "ExponentFactor",
    "exponent_factor",
    "DisentangledExp",
    "disentangle",
    "SandwichPolynomial",
    "sandwich_polynomial",
    "sandwich",
    "closed_form_rx_g_rx",
    "FockTruncation",
    "fock_resolvent",
    "fock_propagator",
]


class Branch(enum.Enum):
    BOUND = "bound"          # E = -v^2/2
    CONTINUUM = "continuum"  # E = +v^2/2
    THRESHOLD = "threshold"  # v = 0


@dataclass(frozen=True)
class ExponentFactor:
    """Coefficients of ``(N+2)`` and ``(M + M^)`` in the propagator exponent."""

    p: complex
    q: complex
    omega: float = 1.0
    v: complex | None = None
    branch: Branch = Branch.BOUND

    def matrix(self) -> np.ndarray:
        """2x2 image of ``p (N+2) + q (M + M^)``."""
        return np.array([[self.p, self.q], [-self.q, -self.p]], dtype=complex)

    @property
    def frequency(self) -> complex:
        """Level spacing of the exponent, ``2 sqrt(p^2 - q^2)`` (equals ``v``)."""
        return 2 * np.sqrt(complex(self.p) ** 2 - complex(self.q) ** 2)


def exponent_factor(omega: float, v: complex, branch: Branch = Branch.BOUND) -> ExponentFactor:
    if not omega > 0:
        raise ValueError(f"omega must be positive, got {omega}")
    v = complex(v)
    if v.real <= 0:
        raise ValueError(f"v must have positive real part, got {v}")
    if branch is Branch.THRESHOLD:
        raise ValueError("the threshold v = 0 has no exponent factor")
    v2 = v * v if branch is Branch.BOUND else -v * v
    p = (omega**2 + v2) / (4 * omega)
    q = (v2 - omega**2) / (4 * omega)
    if v.imag == 0:
        p, q = p.real, q.real
    return ExponentFactor(p, q, float(omega), v, branch)


# |g22| relative to the largest entry below which the ordered form is declared singular
_DEGENERATE_RTOL = 1e-13


@dataclass(frozen=True)
class DisentangledExp:
    """``exp(c_plus M^) exp(c_zero (N+2)) exp(c_minus M)``."""

    c_plus: complex
    c_zero: complex
    c_minus: complex
    omega: float | None = None

    def group_element(self) -> np.ndarray:
        e0 = np.exp(self.c_zero)
        inv = 1 / e0
        cp, cm = self.c_plus, self.c_minus
        return np.array([[e0 - cp * cm * inv, cp * inv], [-cm * inv, inv]], dtype=complex)

    @classmethod
    def from_group_element(cls, g: np.ndarray, omega: float | None = None) -> DisentangledExp:
        g22 = g[1, 1]
        if not np.isfinite(g22) or abs(g22) <= _DEGENERATE_RTOL * np.max(np.abs(g)):
            raise Degenerate("(2,2) entry of the group element vanishes")
        return cls(g[0, 1] / g22, -np.log(g22), -g[1, 0] / g22, omega)

    def compose(self, other: DisentangledExp) -> DisentangledExp:
        """Product ``self * other`` re-extracted in ordered form."""
        return DisentangledExp.from_group_element(self.group_element() @ other.group_element(), self.omega)


def _propagator_2x2(factor: ExponentFactor, t: complex) -> np.ndarray:
    """``exp(-i t X)`` for ``X`` with ``X^2 = (p^2 - q^2) 1``."""
    x = factor.matrix()
    lam = np.sqrt(complex(factor.p) ** 2 - complex(factor.q) ** 2)
    arg = lam * t
    # sin(arg)/lam written through sinc to stay finite at lam = 0
    s = t * np.sinc(arg / np.pi)
    return np.cos(arg) * np.eye(2) - 1j * s * x


def disentangle(factor: ExponentFactor, t: complex, perturb: bool = False) -> DisentangledExp:
    """Normal-ordered form of ``exp(-i t (p (N+2) + q (M + M^)))``.

    Raises :class:`~cgf.errors.Degenerate` where the match is singular; with
    ``perturb=True`` it retries once at ``t (1 + 1e-9 i)`` instead.
    """
    if t == 0:
        return DisentangledExp(0j, 0j, 0j, factor.omega)
    g = _propagator_2x2(factor, t)
    try:
        return DisentangledExp.from_group_element(g, factor.omega)
    except Degenerate:
        if not perturb:
            raise
        return disentangle(factor, t * (1 + 1e-9j), perturb=False)


def disentangle_array(factor: ExponentFactor, t: np.ndarray):
    """Vectorised ``(c_plus, exp(c_zero), c_minus)`` over an array of times."""
    t = np.asarray(t, dtype=complex)
    lam = np.sqrt(complex(factor.p) ** 2 - complex(factor.q) ** 2)
    arg = lam * t
    c = np.cos(arg)
    s = t * np.sinc(arg / np.pi)
    g22 = c + 1j * s * factor.p
    g12 = -1j * s * factor.q
    scale = np.maximum(np.abs(c) + np.abs(s * factor.p), np.abs(g12))
    if np.any(np.abs(g22) <= _DEGENERATE_RTOL * scale):
        raise Degenerate("(2,2) entry of the group element vanishes")
    return g12 / g22, 1 / g22, g12 / g22


# -- sandwich -----------------------------------------------------------------

@dataclass(frozen=True)
class SandwichPolynomial:
    """``<0|L exp(c+ M^) exp(c0 (N+2)) exp(c- M) R|0>`` as a polynomial.

    ``terms`` maps ``(j, k, K)`` to the exact coefficient of
    ``c+^j c-^k exp(c0 K)``; ``K`` is the value of ``N+2`` on the
    intermediate component.
    """

    terms: dict

    def evaluate(self, c_plus, exp_c_zero, c_minus, omega: float = 1.0):
        c_plus = np.asarray(c_plus)
        total = np.zeros(np.broadcast(c_plus, np.asarray(exp_c_zero)).shape, dtype=complex)
        for (j, k, big_k), coef in self.terms.items():
            total = total + coef.evaluate(omega) * c_plus**j * np.asarray(c_minus) ** k * np.asarray(exp_c_zero) ** big_k
        return total if total.shape else complex(total)

    def numeric(self, omega: float = 1.0) -> dict:
        return {key: coef.evaluate(omega) for key, coef in self.terms.items()}


def _lowering_chain(expr: OperatorExpr):
    """``[M^j expr|0> / j!  for j = 0, 1, ...]`` until it vanishes."""
    m_op = generator("M")
    chain = []
    ket = apply_to_vacuum(expr)
    j = 0
    while not ket.is_zero():
        chain.append(ket)
        j += 1
        ket = apply_to_vacuum(multiply(m_op, ket.expr).scale(Coefficient(1) / j))
    return chain


@lru_cache(maxsize=256)
def sandwich_polynomial(left: OperatorExpr, right: OperatorExpr) -> SandwichPolynomial:
    """Exact polynomial form of the normal-ordered propagator bracket.

    ``exp(c- M)`` acting on ``right|0>`` terminates because ``M`` removes two
    quanta; ``<0|left exp(c+ M^)`` is the adjoint of the same construction on
    ``left^|0>``; ``exp(c0 (N+2))`` is diagonal in the quanta count.
    """
    bras = _lowering_chain(adjoint(left))
    kets = _lowering_chain(right)
    terms: dict = {}
    for j, bra in enumerate(bras):
        by_quanta_bra = _split_by_quanta(bra)
        for k, ket in enumerate(kets):
            for n, ket_n in _split_by_quanta(ket).items():
                bra_n = by_quanta_bra.get(n)
                if bra_n is None:
                    continue
                val = ket_overlap(bra_n, ket_n)
                if val.is_zero():
                    continue
                key = (j, k, n + 2)
                terms[key] = terms.get(key, Coefficient(0)) + val
    return SandwichPolynomial({k: v for k, v in terms.items() if not v.is_zero()})


def _split_by_quanta(ket):
    from .wick import KetState

    parts: dict = {}
    for mono, c in ket.expr.terms.items():
        parts.setdefault(sum(mono), {})[mono] = c
    return {n: KetState(OperatorExpr(t)) for n, t in parts.items()}


def sandwich(left: OperatorExpr, right: OperatorExpr, dis: DisentangledExp, omega: float | None = None) -> complex:
    """``<0| left exp(c+ M^) exp(c0 (N+2)) exp(c- M) right |0>`` at a numeric triple."""
    if omega is None:
        omega = dis.omega if dis.omega is not None else 1.0
    poly = sandwich_polynomial(left, right)
    return complex(poly.evaluate(dis.c_plus, np.exp(dis.c_zero), dis.c_minus, omega))


def closed_form_rx_g_rx(omega: float, v: complex, t, floor: float = 1e-12):
    """Reference closed form of ``<0| r x exp(-i t (r p^2/2 + v^2 r/2)) r x |0>``.

    Kept only for comparison with :func:`sandwich`; it is never used to
    produce results.
    """
    t = np.asarray(t, dtype=complex)
    x = np.exp(-1j * v * t)
    den = ((omega + v) ** 2 - (omega - v) ** 2 * x) ** 6
    if np.any(np.abs(den) < floor):
        raise PoleOnPath("denominator of the closed form vanishes")
    num = (omega + v) ** 2 * x**2 + (3 * v**2 - 2 * omega**2) * x**3 + (omega - v) ** 2 * x**4
    out = 2**11 * v**4 * omega**2 * num / den
    return out if out.shape else complex(out)


# -- Fock-space oracle --------------------------------------------------------

@dataclass(frozen=True)
class FockTruncation:
    """Cut-off on the total number of quanta across the four modes."""

    max_quanta: int = 160

    def __post_init__(self):
        if self.max_quanta < 1:
            raise ValueError("max_quanta must be positive")


@lru_cache(maxsize=32)
def _sector_operators(d1: int, d2: int, max_quanta: int):
    space = FockSpace(sector_basis(d1, d2, max_quanta))
    n2 = space.matrix(generator("Nplus2"))
    pair = space.matrix(generator("M")) + space.matrix(generator("Mdag"))
    return space, n2.tocsc(), pair.tocsc()


def _bracket_vectors(left, right, omega, trunc):
    """Per-sector ``(space, N+2, M+M^, bra vector, ket vector)``."""
    ket = apply_to_vacuum(right)
    bra = apply_to_vacuum(adjoint(left))
    if max(ket.quanta() | bra.quanta() | {0}) > trunc.max_quanta:
        raise ValueError("truncation smaller than the quanta of the states")
    out = []
    for d in sorted(ket_sectors(ket)):
        space, n2, pair = _sector_operators(d[0], d[1], trunc.max_quanta)
        kvec = space.vector(_restrict(ket, d), omega)
        bvec = space.vector(_restrict(bra, d), omega)
        if not bvec.any():
            continue
        out.append((space, n2, pair, bvec, kvec))
    return out


def _restrict(ket, d):
    from .fock import sector_of
    from .wick import KetState

    kept = {m: c for m, c in ket.expr.terms.items() if sector_of(m[:4]) == d}
    return KetState(OperatorExpr(kept), ket.norm_factor_sq)


def fock_resolvent(left: OperatorExpr, right: OperatorExpr, omega: float, v: complex,
                   trunc: FockTruncation = FockTruncation(), e2: float = 1.0,
                   branch: Branch = Branch.BOUND) -> complex:
    """``<0| left (p (N+2) + q (M + M^) - e2)^-1 right |0>`` by direct sparse solve.

    ``(p, q)`` come from :func:`exponent_factor`; the operators are assembled
    as plain truncated number-basis matrices in each conserved sector.
    """
    factor = exponent_factor(omega, v, branch)
    total = 0j
    for space, n2, pair, bvec, kvec in _bracket_vectors(left, right, omega, trunc):
        a = factor.p * n2 + factor.q * pair - e2 * sp.identity(space.dim, format="csc")
        try:
            sol = spla.splu(a.tocsc()).solve(kvec)
        except RuntimeError as exc:
            raise SingularSystem(str(exc)) from exc
        if not np.all(np.isfinite(sol)):
            raise SingularSystem("non-finite resolvent solution")
        total += np.vdot(bvec, sol)
    return complex(total)


def fock_propagator(left: OperatorExpr, right: OperatorExpr, factor: ExponentFactor, t: complex,
                    trunc: FockTruncation = FockTruncation(40)) -> complex:
    """``<0| left exp(-i t (p (N+2) + q (M + M^))) right |0>`` from truncated matrices."""
    total = 0j
    for space, n2, pair, bvec, kvec in _bracket_vectors(left, right, factor.omega, trunc):
        a = (factor.p * n2 + factor.q * pair).tocsc()
        evolved = spla.expm_multiply(-1j * t * a, kvec)
        total += np.vdot(bvec, evolved)
    return complex(total)
