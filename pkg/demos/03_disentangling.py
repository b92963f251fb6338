"""Ordering the Green-operator exponential through su(1,1).

``exp(-i t (p (N+2) + q (M + M^)))`` is rewritten as a product of three
exponentials, checked against direct matrix exponentials on a truncated Fock
space, and the r z bracket is compared with its closed form.
"""

import numpy as np

from cgf import FockTruncation, closed_form_rx_g_rx, disentangle, exponent_factor, fock_propagator, sandwich
from cgf.errors import Degenerate
from cgf.vdw import rx_operator

omega, v, t = 1.0, 1.3, 0.7
fac = exponent_factor(omega, v)
dis = disentangle(fac, t)
print(f"p = {fac.p:.6f}, q = {fac.q:.6f}, level spacing = {fac.frequency:.6f}")
print(f"c+ = {dis.c_plus:.10f}\nc0 = {dis.c_zero:.10f}\nc- = {dis.c_minus:.10f}")

print("\n== group law ==")
a, b = disentangle(fac, 0.4), disentangle(fac, 0.3)
print("max |g(0.4) g(0.3) - g(0.7)| =", np.max(np.abs(a.compose(b).group_element() - dis.group_element())))

print("\n== against truncated Fock space ==")
rz = rx_operator(3)
got = sandwich(rz, rz, dis, omega)
for quanta in (10, 20, 40):
    ref = fock_propagator(rz, rz, fac, t, FockTruncation(quanta))
    print(f"{quanta:3d} quanta: |sandwich - expm| = {abs(got - ref):.2e}")
print("closed form relative deviation:", abs(closed_form_rx_g_rx(omega, v, t) - got) / abs(got))

print("\n== a degenerate time ==")
# purely imaginary t where the (2,2) entry of the group element vanishes
lam = np.sqrt(fac.p**2 - fac.q**2)
t_bad = 1j * np.arctanh(lam / fac.p) / lam
try:
    disentangle(fac, t_bad)
except Degenerate as exc:
    print("Degenerate:", exc)
print("with perturb=True:", disentangle(fac, t_bad, perturb=True).c_plus)
