"""Hydrogen atom in the four-oscillator representation.

The fifteen quadratic generators

    N+2 = a_s^ a_s + b_s^ b_s + 2,   n_a(l) = (s_l)_st a_s^ a_t,   n_b(l) = (s_l)_st b_t^ b_s,
    M = a_s b_s,   M^ = a_s^ b_s^,   m(l) = (s_l)_st a_t b_s,    m^(l) = (s_l)_st a_s^ b_t^

(``s_l`` the Pauli matrices, repeated indices summed) close under commutation,
and every physical observable of the Coulomb problem is a combination of
them, e.g. ``r = (M + M^ + N + 2) / 2w``.  The hydrogen ground state is the
oscillator vacuum with ``w = e^2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .scalars import I, ONE, ZERO, W, Coefficient
from .wick import KetState, OperatorExpr, apply_to_vacuum, commutator, mode, multiply, scalar

__all__ = [
    "PAULI",
    "GENERATOR_NAMES",
    "PHYSICAL_NAMES",
    "NAME_ALIASES",
    "generator",
    "physical_operator",
    "s_state",
    "p_state",
    "ClosureEntry",
    "ClosureReport",
    "check_closure",
    "solve_in_span",
]

# (sigma_l)_{st} for l = 1, 2, 3 with s, t in {1, 2} (stored 0-based)
PAULI = {
    1: ((ZERO, ONE), (ONE, ZERO)),
    2: ((ZERO, -I), (I, ZERO)),
    3: ((ONE, ZERO), (ZERO, -ONE)),
}

GENERATOR_NAMES = (
    "Nplus2",
    "n_a_1", "n_a_2", "n_a_3",
    "n_b_1", "n_b_2", "n_b_3",
    "M", "Mdag",
    "m_1", "m_2", "m_3",
    "mdag_1", "mdag_2", "mdag_3",
)

PHYSICAL_NAMES = (
    "r",
    "x_1", "x_2", "x_3",
    "rp_1", "rp_2", "rp_3",
    "rP2", "L2",
    "l_1", "l_2", "l_3",
)

NAME_ALIASES = {"N2": "Nplus2", "rp2": "rP2"}

_A = {1: mode("a1"), 2: mode("a2")}
_AD = {1: mode("a1^"), 2: mode("a2^")}
_B = {1: mode("b1"), 2: mode("b2")}
_BD = {1: mode("b1^"), 2: mode("b2^")}


def _pauli_sum(lam, make):
    sigma = PAULI[lam]
    out = OperatorExpr()
    for s in (1, 2):
        for t in (1, 2):
            c = sigma[s - 1][t - 1]
            if not c.is_zero():
                out = out + make(s, t).scale(c)
    return out


def _split(name: str):
    head, _, lam = name.rpartition("_")
    if not head or lam not in ("1", "2", "3"):
        return name, None
    return head, int(lam)


_GEN_CACHE: dict[str, OperatorExpr] = {}


def generator(name: str) -> OperatorExpr:
    """Normal-ordered expansion of one of the 15 generators.

    Names: ``Nplus2`` (alias ``N2``), ``M``, ``Mdag``, and ``n_a_l``, ``n_b_l``,
    ``m_l``, ``mdag_l`` for ``l`` in 1..3.
    """
    name = NAME_ALIASES.get(name, name)
    hit = _GEN_CACHE.get(name)
    if hit is not None:
        return hit
    head, lam = _split(name)
    if name == "Nplus2":
        out = scalar(2)
        for s in (1, 2):
            out = out + _AD[s] * _A[s] + _BD[s] * _B[s]
    elif name == "M":
        out = _A[1] * _B[1] + _A[2] * _B[2]
    elif name == "Mdag":
        out = _AD[1] * _BD[1] + _AD[2] * _BD[2]
    elif lam is not None and head == "n_a":
        out = _pauli_sum(lam, lambda s, t: _AD[s] * _A[t])
    elif lam is not None and head == "n_b":
        out = _pauli_sum(lam, lambda s, t: _BD[t] * _B[s])
    elif lam is not None and head == "m":
        out = _pauli_sum(lam, lambda s, t: _A[t] * _B[s])
    elif lam is not None and head == "mdag":
        out = _pauli_sum(lam, lambda s, t: _AD[s] * _BD[t])
    else:
        raise KeyError(f"unknown generator {name!r}")
    _GEN_CACHE[name] = out
    return out


_PHYS_CACHE: dict[str, OperatorExpr] = {}


def physical_operator(name: str) -> OperatorExpr:
    """Observable in generator form, with the frequency kept symbolic as ``w``.

    ``rp_l`` is the formal replacement for ``r p_l`` and ``rP2`` stands for
    ``r p^2``.
    """
    name = NAME_ALIASES.get(name, name)
    hit = _PHYS_CACHE.get(name)
    if hit is not None:
        return hit
    head, lam = _split(name)
    half_over_w = Coefficient(Fraction(1, 2)) / W
    g = generator
    if name == "r":
        out = (g("M") + g("Mdag") + g("Nplus2")).scale(half_over_w)
    elif name == "rP2":
        out = (g("Nplus2") - g("M") - g("Mdag")).scale(W * Fraction(1, 2))
    elif name == "L2":
        n = g("Nplus2") - 2
        out = multiply(n, g("Nplus2")).scale(Fraction(1, 4)) - multiply(g("Mdag"), g("M"))
    elif lam is not None and head == "x":
        out = (g(f"m_{lam}") + g(f"mdag_{lam}") + g(f"n_a_{lam}") + g(f"n_b_{lam}")).scale(half_over_w)
    elif lam is not None and head == "rp":
        out = (g(f"m_{lam}") - g(f"mdag_{lam}")).scale(-I * Fraction(1, 2))
    elif lam is not None and head == "l":
        out = g(f"n_a_{lam}") - g(f"n_b_{lam}")
    else:
        raise KeyError(f"unknown physical operator {name!r}")
    _PHYS_CACHE[name] = out
    return out


# -- states -------------------------------------------------------------------

def s_state(n: int) -> KetState:
    """``(M^)^n |0>`` with the squared prefactor ``1 / (n! (n+1)!)``."""
    if n < 0:
        raise ValueError("s-state index must be non-negative")
    core = apply_to_vacuum(generator("Mdag") ** n).expr
    return KetState(core, Fraction(1, factorial(n) * factorial(n + 1)))


def p_state(n: int) -> KetState:
    """``(M^)^(n-1) a1^ b2^ |0>`` with the same prefactor as :func:`s_state`.

    That prefactor does not normalise the p-states; see ``KetState.norm_sq``.
    """
    if n < 1:
        raise ValueError("p-state index must be at least 1")
    core = apply_to_vacuum(generator("Mdag") ** (n - 1) * mode("a1^") * mode("b2^")).expr
    return KetState(core, Fraction(1, factorial(n) * factorial(n + 1)))


# -- closure ------------------------------------------------------------------

def solve_in_span(target: OperatorExpr, basis: list[OperatorExpr]):
    """Exact least-residual expansion ``target = sum c_k basis[k] + residual``.

    Gauss-Jordan elimination over the exact coefficient field.  When the
    target lies in the span the residual is the zero expression.
    """
    monos = sorted({m for e in basis for m in e.terms} | set(target.terms))
    rows = [[e.coefficient(m) for e in basis] + [target.coefficient(m)] for m in monos]
    ncol = len(basis)
    pivots = []
    r = 0
    for col in range(ncol):
        piv = next((i for i in range(r, len(rows)) if not rows[i][col].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ONE / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    coeffs = [ZERO] * ncol
    for i, col in enumerate(pivots):
        coeffs[col] = rows[i][-1]
    residual = target
    for c, e in zip(coeffs, basis):
        if not c.is_zero():
            residual = residual - e.scale(c)
    return coeffs, residual


@dataclass(frozen=True)
class ClosureEntry:
    pair: tuple[str, str]
    coefficients: dict[str, Coefficient]
    residual: OperatorExpr

    @property
    def closed(self) -> bool:
        return self.residual.is_zero()


@dataclass(frozen=True)
class ClosureReport:
    entries: list[ClosureEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return len(self.entries) > 0 and all(e.closed for e in self.entries)

    def lines(self) -> list[str]:
        out = []
        for e in self.entries:
            combo = " + ".join(f"({c})*{g}" for g, c in e.coefficients.items()) or "0"
            flag = "" if e.closed else f"   RESIDUAL {e.residual}"
            out.append(f"[{e.pair[0]}, {e.pair[1]}] = {combo}{flag}")
        return out


def check_closure() -> ClosureReport:
    """Expand all 105 generator commutators in the generator basis.

    The constant produced by e.g. ``[M, M^]`` must be exactly the ``+2`` carried
    inside ``Nplus2``; any other constant shows up in the residual.
    """
    basis = [generator(g) for g in GENERATOR_NAMES]
    entries = []
    for i, gi in enumerate(GENERATOR_NAMES):
        for j in range(i + 1, len(GENERATOR_NAMES)):
            gj = GENERATOR_NAMES[j]
            comm = commutator(basis[i], basis[j])
            coeffs, residual = solve_in_span(comm, basis)
            nonzero = {g: c for g, c in zip(GENERATOR_NAMES, coeffs) if not c.is_zero()}
            entries.append(ClosureEntry((gi, gj), nonzero, residual))
    return ClosureReport(entries)
