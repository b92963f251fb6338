"""Truncated Fock-space matrices for the four oscillator modes.

This is the brute-force side of every cross-check: operators are turned into
sparse matrices on an explicit list of occupation vectors
``(na1, na2, nb1, nb2)`` and states into amplitude vectors in the orthonormal
number basis.  Nothing here knows about su(1,1) or disentangling.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial, sqrt

import numpy as np
import scipy.sparse as sp

from .wick import NMODES, KetState, OperatorExpr, apply_to_vacuum

__all__ = [
    "total_quanta_basis",
    "sector_basis",
    "sector_of",
    "FockSpace",
]


def total_quanta_basis(max_quanta: int) -> list[tuple[int, int, int, int]]:
    """All occupation vectors with ``na1 + na2 + nb1 + nb2 <= max_quanta``."""
    out = []
    for n in range(max_quanta + 1):
        for a1 in range(n, -1, -1):
            for a2 in range(n - a1, -1, -1):
                for b1 in range(n - a1 - a2, -1, -1):
                    out.append((a1, a2, b1, n - a1 - a2 - b1))
    return out


def sector_of(occ) -> tuple[int, int]:
    """Conserved differences ``(na1 - nb1, na2 - nb2)``; ``M``, ``M^`` and ``N`` keep them."""
    return (occ[0] - occ[2], occ[1] - occ[3])


@lru_cache(maxsize=64)
def sector_basis(d1: int, d2: int, max_quanta: int) -> tuple[tuple[int, int, int, int], ...]:
    """Occupations with fixed ``(na1 - nb1, na2 - nb2) = (d1, d2)`` and at most ``max_quanta`` quanta."""
    out = []
    lo1, lo2 = max(0, -d1), max(0, -d2)
    for b1 in range(lo1, max_quanta + 1):
        for b2 in range(lo2, max_quanta + 1):
            occ = (b1 + d1, b2 + d2, b1, b2)
            if sum(occ) <= max_quanta:
                out.append(occ)
    out.sort(key=lambda o: (sum(o), o))
    return tuple(out)


def _ladder(n: int, annihilate: int, create: int):
    """Amplitude and new occupation for ``c^create c^annihilate`` on ``|n>``."""
    if n < annihilate:
        return 0.0, None
    m = n - annihilate
    amp = sqrt(factorial(n) / factorial(m)) * sqrt(factorial(m + create) / factorial(m))
    return amp, m + create


class FockSpace:
    """Orthonormal number basis spanned by a fixed list of occupation vectors.

    Matrix elements leading outside the list are dropped, which is the
    truncation.
    """

    def __init__(self, basis):
        self.basis = tuple(tuple(o) for o in basis)
        self.index = {o: i for i, o in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self, expr: OperatorExpr, omega: float = 1.0) -> sp.csr_matrix:
        rows, cols, vals = [], [], []
        for mono, c in expr.terms.items():
            cval = c.evaluate(omega)
            create, annihilate = mono[:NMODES], mono[NMODES:]
            for j, occ in enumerate(self.basis):
                amp = cval
                new = []
                for m in range(NMODES):
                    a, n2 = _ladder(occ[m], annihilate[m], create[m])
                    if n2 is None:
                        break
                    amp *= a
                    new.append(n2)
                else:
                    i = self.index.get(tuple(new))
                    if i is not None:
                        rows.append(i)
                        cols.append(j)
                        vals.append(amp)
        return sp.csr_matrix((vals, (rows, cols)), shape=(self.dim, self.dim), dtype=complex)

    def vector(self, state, omega: float = 1.0) -> np.ndarray:
        """Amplitudes of ``state`` (a :class:`KetState` or ``expr|0>``) in this basis.

        Components outside the basis raise, since silently dropping them
        would corrupt every bracket built on the vector.
        """
        if isinstance(state, OperatorExpr):
            state = apply_to_vacuum(state)
        vec = np.zeros(self.dim, dtype=complex)
        for occ, c in state.components().items():
            i = self.index.get(occ)
            if i is None:
                raise ValueError(f"state component {occ} lies outside the truncated basis")
            norm = 1
            for n in occ:
                norm *= factorial(n)
            vec[i] += c.evaluate(omega) * sqrt(norm)
        return vec * sqrt(float(state.norm_factor_sq))


def ket_sectors(state: KetState) -> set[tuple[int, int]]:
    return {sector_of(occ) for occ in state.components()}
