"""Normal ordering and the exact operator algebra.

Walks through rewriting words in the four oscillator modes, commutators of
the named generators, and exact vacuum expectations of the physical
operators.  Run with ``python demos/01_normal_ordering.py``.
"""

from cgf import commutator, format_expr, generator, multiply, parse_expr, physical_operator, vacuum_expectation
from cgf.text import format_coefficient

print("== single-mode rewriting ==")
for text in ["a1*a1^", "a1*a1*a1^*a1^", "(a1 + b1^)*(a1^ + b1)"]:
    print(f"{text:28s} -> {format_expr(parse_expr(text))}")

print("\n== su(1,1) generators ==")
n2, m, mdag = generator("N2"), generator("M"), generator("Mdag")
print("[M, M^]   =", format_expr(commutator(m, mdag)))
print("[N+2, M^] =", format_expr(commutator(n2, mdag)))
print("[N+2, M]  =", format_expr(commutator(n2, m)))

print("\n== physical operators in the vacuum ==")
# the bracket <0|X|0> is exact and carries the frequency symbol w
for name in ["r", "rP2"]:
    print(f"<0|{name}|0> =", format_coefficient(vacuum_expectation(physical_operator(name))))
r = physical_operator("r")
r2 = multiply(r, r)
# the plain Fock bracket differs from the physical moment by the r-weight of the measure
print("<0|r r|0>           =", format_coefficient(vacuum_expectation(r2)))
print("<0|r r|0>/<0|r|0>   =", format_coefficient(vacuum_expectation(r2) / vacuum_expectation(r)), "(physical <r>)")

print("\n== angular momentum ==")
print("[l_1, l_2] =", format_expr(commutator(physical_operator("l_1"), physical_operator("l_2"))))
print("[r, x_3]   =", format_expr(commutator(r, physical_operator("x_3"))) or "0")
