"""Many-particle Green operator as a convolution of one-particle ones.

For ``H = sum_k H_k`` the resolvent at ``E = sum_k E_k`` is an integral over
energy shifts ``a_k`` with ``sum_k a_k = 0``, each particle carrying its own
Coulomb Green operator at ``E_k - a_k``.  For two particles a single free
shift remains, ``a_2 = -a_1``.

The two-particle operator algebra is two commuting copies of the
single-particle one; :class:`ProductExpr` stores sums of tensor products of
normal-ordered monomials and vacuum expectations factorise.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .scalars import ONE, ZERO, Coefficient
from .su11 import Branch
from .wick import IDENTITY, NMODES, OperatorExpr, multiply

__all__ = [
    "ParticleSpec",
    "ConvolutionPlan",
    "build_plan",
    "shift_to_v",
    "energy_to_v",
    "ProductExpr",
    "tensor",
]


@dataclass(frozen=True)
class ParticleSpec:
    index: int
    charge: float
    energy: float

    def __post_init__(self):
        if not self.charge > 0:
            raise ValueError(f"particle {self.index}: charge must be positive")


@dataclass(frozen=True)
class ConvolutionPlan:
    """Per-particle Green operators tied by a zero-sum shift constraint."""

    particles: tuple[ParticleSpec, ...]

    @property
    def total_energy(self) -> float:
        return sum(p.energy for p in self.particles)

    @property
    def n_free(self) -> int:
        """Number of independent shifts (the constraint removes one)."""
        return len(self.particles) - 1

    def shifts(self, free) -> tuple:
        """Full shift vector from the free ones; the last shift closes the sum."""
        free = tuple(free)
        if len(free) != self.n_free:
            raise ValueError(f"expected {self.n_free} free shifts, got {len(free)}")
        return free + (-sum(free),)

    def effective_energies(self, free) -> tuple:
        """``E_k - a_k`` for every particle."""
        return tuple(p.energy - a for p, a in zip(self.particles, self.shifts(free)))


def build_plan(particles, total_energy: float | None = None, rtol: float = 1e-12) -> ConvolutionPlan:
    particles = tuple(particles)
    if len(particles) < 2:
        raise ValueError("a many-particle plan needs at least two particles")
    if total_energy is not None:
        s = sum(p.energy for p in particles)
        if abs(s - total_energy) > rtol * max(1.0, abs(total_energy)):
            raise ValueError(f"particle energies sum to {s}, not {total_energy}")
    return ConvolutionPlan(particles)


def energy_to_v(energy: complex):
    """``(v, branch)`` with ``E = -v^2/2`` (bound) or ``E = +v^2/2`` (continuum), ``Re v >= 0``."""
    energy = complex(energy)
    if energy == 0:
        return 0j, Branch.THRESHOLD
    if energy.imag == 0 and energy.real > 0:
        return complex(cmath.sqrt(2 * energy.real)), Branch.CONTINUUM
    return cmath.sqrt(-2 * energy), Branch.BOUND


def shift_to_v(alpha: complex, omega: float, literal: bool = False):
    """Frequency ``v`` of a particle at ``E = -w^2/2 + alpha``.

    That gives ``v^2 = w^2 - 2 alpha`` on the bound side.  With
    ``literal=True`` the alternative ``v^2 = w^2/2 - alpha`` is used instead; it
    does not reduce to ``v = w`` at ``alpha = 0`` and is kept only for
    comparison.
    """
    alpha = complex(alpha)
    if literal:
        v2 = omega**2 / 2 - alpha
        if v2 == 0:
            return 0j, Branch.THRESHOLD
        if v2.imag == 0 and v2.real < 0:
            return complex(cmath.sqrt(-v2.real)), Branch.CONTINUUM
        return cmath.sqrt(v2), Branch.BOUND
    return energy_to_v(-omega**2 / 2 + alpha)


# -- two-particle product algebra ---------------------------------------------

class ProductExpr:
    """Sum of ``coefficient * (monomial_1 (x) monomial_2)`` over two commuting 4-mode algebras."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        self._terms = {k: c for k, c in (terms or {}).items() if not c.is_zero()}

    @property
    def terms(self):
        return dict(self._terms)

    def is_zero(self):
        return not self._terms

    def coefficient(self, key) -> Coefficient:
        return self._terms.get(key, ZERO)

    def __add__(self, other):
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, ZERO) + c
        return ProductExpr(out)

    def __neg__(self):
        return ProductExpr({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = c if isinstance(c, Coefficient) else Coefficient(c)
        return ProductExpr({k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, ProductExpr):
            return self.scale(other)
        out: dict = {}
        for (x1, x2), cx in self._terms.items():
            for (y1, y2), cy in other._terms.items():
                p1 = multiply(OperatorExpr({x1: ONE}), OperatorExpr({y1: ONE}))
                p2 = multiply(OperatorExpr({x2: ONE}), OperatorExpr({y2: ONE}))
                c = cx * cy
                for m1, c1 in p1.terms.items():
                    for m2, c2 in p2.terms.items():
                        key = (m1, m2)
                        out[key] = out.get(key, ZERO) + c * c1 * c2
        return ProductExpr(out)

    def __eq__(self, other):
        return isinstance(other, ProductExpr) and self._terms == other._terms

    __hash__ = None

    def factor(self, which: int) -> dict:
        """Group by the monomial of particle ``which`` (0 or 1): ``{mono: OperatorExpr of the other}``."""
        out: dict = {}
        for (m1, m2), c in self._terms.items():
            own, other = (m1, m2) if which == 0 else (m2, m1)
            out.setdefault(own, {})[other] = c
        return {k: OperatorExpr(v) for k, v in out.items()}

    def apply_to_vacuum(self) -> ProductExpr:
        return ProductExpr({
            (m1, m2): c for (m1, m2), c in self._terms.items()
            if not any(m1[NMODES:]) and not any(m2[NMODES:])
        })

    def adjoint(self) -> ProductExpr:
        flip = lambda m: m[NMODES:] + m[:NMODES]
        return ProductExpr({(flip(m1), flip(m2)): c.conjugate() for (m1, m2), c in self._terms.items()})

    def vacuum_expectation(self) -> Coefficient:
        return self._terms.get((IDENTITY, IDENTITY), ZERO)


def tensor(first: OperatorExpr, second: OperatorExpr) -> ProductExpr:
    """``first (x) second``: particle 1 operator times particle 2 operator."""
    out = {}
    for m1, c1 in first.terms.items():
        for m2, c2 in second.terms.items():
            out[(m1, m2)] = c1 * c2
    return ProductExpr(out)
