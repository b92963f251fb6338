"""Hydrogenic states built from the vacuum, and the 15-generator closure.

The s-states come out normalised with the expected core norms; the p-states
share the same prefactor and so are not unit vectors.
"""

from math import factorial

from cgf import check_closure, p_state, physical_operator, s_state
from cgf.wick import apply_to_vacuum, multiply
from cgf.text import format_coefficient

print("== s-states ==")
for n in range(6):
    st = s_state(n)
    print(f"n={n}: <ns|ns> = {format_coefficient(st.norm_sq())}, core norm^2 = "
          f"{format_coefficient(st.core_norm_sq())} (n!(n+1)! = {factorial(n) * factorial(n + 1)})")

print("\n== p-states (unnormalised) ==")
for n in range(1, 6):
    print(f"n={n}: <np|np> = {format_coefficient(p_state(n).norm_sq())}")

print("\n== L2 eigenvalues on the lowest states ==")
l2 = physical_operator("L2")
for label, st in [("0s", s_state(0)), ("1p", p_state(1))]:
    image = apply_to_vacuum(multiply(l2, st.expr))
    ratio = {k: image.expr.terms[k] / c for k, c in st.expr.terms.items() if k in image.expr.terms}
    print(f"L2 |{label}> ->", sorted({format_coefficient(v) for v in ratio.values()}) or ["0"])

print("\n== closure of the 15 generators ==")
report = check_closure()
closed = sum(e.closed for e in report.entries)
print(f"{closed}/{len(report.entries)} pairwise commutators lie in the span")
for line in report.lines()[:5]:
    print("  ", line)
print("   ...")
